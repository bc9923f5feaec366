#include "rrlab/matrix.hpp"

#include <utility>

#include "rrlab/error.hpp"

namespace rrlab {

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rat> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    fail("ShapeMismatch", "matrix data length does not equal rows*cols");
  }
}

RatMatrix::RatMatrix(std::initializer_list<std::initializer_list<Rat>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) fail("ShapeMismatch", "ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RatMatrix RatMatrix::select_rows(std::span<const std::size_t> idx) const {
  RatMatrix out(idx.size(), cols_);
  for (std::size_t r = 0; r < idx.size(); ++r)
    for (std::size_t j = 0; j < cols_; ++j) out(r, j) = (*this)(idx[r], j);
  return out;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols() != b.rows()) fail("ShapeMismatch", "matrix product shape mismatch");
  RatMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Rat& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (sgn(b(k, j)) != 0) c(i, j) += aik * b(k, j);
      }
    }
  }
  return c;
}

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    fail("ShapeMismatch", "matrix sum shape mismatch");
  }
  RatMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

RatMatrix operator*(const Rat& s, const RatMatrix& m) {
  RatMatrix c(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) c(i, j) = s * m(i, j);
  return c;
}

RatVec vec_mat(std::span<const Rat> v, const RatMatrix& m) {
  if (v.size() != m.rows()) fail("ShapeMismatch", "vector-matrix shape mismatch");
  RatVec out(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (sgn(v[i]) == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (sgn(m(i, j)) != 0) out[j] += v[i] * m(i, j);
    }
  }
  return out;
}

RatVec mat_vec(const RatMatrix& m, std::span<const Rat> v) {
  if (v.size() != m.cols()) fail("ShapeMismatch", "matrix-vector shape mismatch");
  RatVec out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) out[i] = dot(m.row(i), v);
  return out;
}

std::size_t rank(const RatMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  if (rows == 0 || cols == 0) return 0;

  // Scaling a row by a nonzero constant preserves rank, so clear each row's
  // denominators and run the elimination over integers.
  std::vector<BigInt> a(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    BigInt l = 1;
    for (std::size_t j = 0; j < cols; ++j) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    }
    for (std::size_t j = 0; j < cols; ++j) {
      a[i * cols + j] = m(i, j).get_num() * (l / m(i, j).get_den());
    }
  }
  auto at = [&](std::size_t i, std::size_t j) -> BigInt& { return a[i * cols + j]; };

  BigInt prev = 1;
  std::size_t r = 0;
  for (std::size_t col = 0; col < cols && r < rows; ++col) {
    std::size_t pivot = r;
    while (pivot < rows && at(pivot, col) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != r) {
      for (std::size_t j = col; j < cols; ++j) std::swap(at(pivot, j), at(r, j));
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j < cols; ++j) {
        BigInt v = at(r, col) * at(i, j) - at(i, col) * at(r, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        at(i, j) = std::move(v);
      }
      at(i, col) = 0;
    }
    prev = at(r, col);
    ++r;
  }
  return r;
}

RatMatrix solve_exact(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows() != b.rows()) fail("ShapeMismatch", "solve_exact: a.rows != b.rows");
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  const std::size_t p = b.cols();

  RatMatrix aug(m, n + p);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    for (std::size_t j = 0; j < p; ++j) aug(i, n + j) = b(i, j);
  }

  std::size_t r = 0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = r;
    while (pivot < m && sgn(aug(pivot, col)) == 0) ++pivot;
    if (pivot == m) fail("SingularSystem", "coefficient matrix lacks full column rank");
    if (pivot != r) {
      for (std::size_t j = 0; j < n + p; ++j) std::swap(aug(pivot, j), aug(r, j));
    }
    Rat inv = 1 / aug(r, col);
    for (std::size_t j = col; j < n + p; ++j) aug(r, j) *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || sgn(aug(i, col)) == 0) continue;
      Rat factor = aug(i, col);
      for (std::size_t j = col; j < n + p; ++j) aug(i, j) -= factor * aug(r, j);
    }
    ++r;
  }
  for (std::size_t i = n; i < m; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      if (sgn(aug(i, n + j)) != 0) {
        fail("SingularSystem", "right-hand side is outside the column space");
      }
    }
  }
  RatMatrix x(n, p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j) x(i, j) = aug(i, n + j);
  return x;
}

}  // namespace rrlab
