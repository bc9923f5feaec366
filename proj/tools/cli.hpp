#pragma once

#include <ostream>

namespace rrlab {

/// Runs the rrlab command line. Returns 0 on success, 1 on domain errors
/// (a JSON error object on `err`), 2 on usage errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rrlab
