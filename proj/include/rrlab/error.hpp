#pragma once

#include <stdexcept>
#include <string>

namespace rrlab {

/// Domain error carrying a stable, machine-readable kind name
/// (e.g. "SingularSystem", "UnknownSymbol") alongside the message.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

[[noreturn]] inline void fail(const char* kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace rrlab
