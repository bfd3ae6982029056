#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "xxchain/errors.hpp"

namespace xxchain {

// Dense square matrix of doubles, row-major. Small dimensions only
// (Hamiltonians up to 4096, reduced states 4x4), so no attempt at blocking.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t dim) : dim_(dim), a_(dim * dim, 0.0) {}

  static Matrix identity(std::size_t dim) {
    Matrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t dim() const { return dim_; }

  double& operator()(std::size_t r, std::size_t c) { return a_[r * dim_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return a_[r * dim_ + c]; }

  double* data() { return a_.data(); }
  const double* data() const { return a_.data(); }

  double trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
  }

  double max_abs() const {
    double m = 0.0;
    for (double x : a_) m = std::max(m, std::abs(x));
    return m;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (double x : a_) s += x * x;
    return std::sqrt(s);
  }

  // Largest |A(r,c) - A(c,r)|.
  double asymmetry() const {
    double m = 0.0;
    for (std::size_t r = 0; r < dim_; ++r)
      for (std::size_t c = r + 1; c < dim_; ++c)
        m = std::max(m, std::abs((*this)(r, c) - (*this)(c, r)));
    return m;
  }

  // Symmetry invariant: |A(r,c) - A(c,r)| <= 1e-12 * (1 + max|entry|).
  bool is_symmetric() const { return asymmetry() <= 1e-12 * (1.0 + max_abs()); }

  Matrix transposed() const {
    Matrix t(dim_);
    for (std::size_t r = 0; r < dim_; ++r)
      for (std::size_t c = 0; c < dim_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.dim_ != b.dim_) throw InputError("matrix product: dimension mismatch");
    const std::size_t n = a.dim_;
    Matrix out(n);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t k = 0; k < n; ++k) {
        const double f = a(r, k);
        if (f == 0.0) continue;
        for (std::size_t c = 0; c < n; ++c) out(r, c) += f * b(k, c);
      }
    }
    return out;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<double> a_;
};

inline double frobenius_distance(const Matrix& a, const Matrix& b) {
  if (a.dim() != b.dim()) throw InputError("frobenius_distance: dimension mismatch");
  double s = 0.0;
  for (std::size_t r = 0; r < a.dim(); ++r)
    for (std::size_t c = 0; c < a.dim(); ++c) {
      const double d = a(r, c) - b(r, c);
      s += d * d;
    }
  return std::sqrt(s);
}

}  // namespace xxchain
