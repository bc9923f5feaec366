#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "rrlab/rational.hpp"

namespace rrlab {

/// Dense row-major matrix of exact rationals.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rat> data);
  RatMatrix(std::initializer_list<std::initializer_list<Rat>> rows);

  static RatMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Rat& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<const Rat> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<Rat> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }

  const std::vector<Rat>& data() const { return data_; }

  RatMatrix transpose() const;
  RatMatrix select_rows(std::span<const std::size_t> idx) const;

  friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rat> data_;
};

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
RatMatrix operator+(const RatMatrix& a, const RatMatrix& b);
RatMatrix operator*(const Rat& s, const RatMatrix& m);

/// Row vector times matrix: vᵀ·m.
RatVec vec_mat(std::span<const Rat> v, const RatMatrix& m);
/// Matrix times column vector: m·v.
RatVec mat_vec(const RatMatrix& m, std::span<const Rat> v);

/// Exact rank over Q by fraction-free (Bareiss) elimination. Pivots are
/// the first nonzero entry of each column, scanning rows top-down.
std::size_t rank(const RatMatrix& m);

/// Solves a·x = b exactly. a must have full column rank and b must lie in
/// its column space; otherwise throws Error("SingularSystem").
RatMatrix solve_exact(const RatMatrix& a, const RatMatrix& b);

}  // namespace rrlab
