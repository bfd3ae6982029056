#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "xxchain/errors.hpp"
#include "xxchain/matrix.hpp"

namespace xxchain {

// Full eigendecomposition of a real symmetric matrix. eigenvalues are in
// ascending order and eigenvectors.column(k) belongs to eigenvalues[k].
struct Spectrum {
  std::vector<double> eigenvalues;
  Matrix eigenvectors;
};

namespace detail {

inline double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t r = 0; r < a.dim(); ++r)
    for (std::size_t c = 0; c < a.dim(); ++c)
      if (r != c) s += a(r, c) * a(r, c);
  return std::sqrt(s);
}

}  // namespace detail

// Cyclic Jacobi rotations. Sweeps rotate away every off-diagonal pair until
// the off-diagonal Frobenius norm falls below 1e-13 * ||A||_F, with a budget
// of 100 sweeps (typical convergence is < 15 even at dim 1024; quadratic in
// the tail). Exact zeros are never rotated, so block structure in the input
// (e.g. magnetization sectors) survives and eigenvectors stay block-pure.
inline Spectrum eigh(const Matrix& input) {
  if (!input.is_symmetric())
    throw InputError("eigh: matrix violates the symmetry tolerance");
  const std::size_t n = input.dim();

  Matrix a = input;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r + 1; c < n; ++c) {
      const double m = 0.5 * (a(r, c) + a(c, r));
      a(r, c) = a(c, r) = m;
    }
  Matrix v = Matrix::identity(n);

  const double stop = 1e-13 * a.frobenius_norm();
  constexpr int kMaxSweeps = 100;
  bool converged = detail::off_diagonal_norm(a) <= stop;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                      : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = a(r, p);
          const double arq = a(r, q);
          a(r, p) = a(p, r) = c * arp - s * arq;
          a(r, q) = a(q, r) = s * arp + c * arq;
        }
        for (std::size_t r = 0; r < n; ++r) {
          const double vrp = v(r, p);
          const double vrq = v(r, q);
          v(r, p) = c * vrp - s * vrq;
          v(r, q) = s * vrp + c * vrq;
        }
      }
    }
    converged = detail::off_diagonal_norm(a) <= stop;
  }
  if (!converged)
    throw NumericalError("eigh: no convergence in 100 sweeps, off-diagonal residual " +
                         std::to_string(detail::off_diagonal_norm(a)));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&a](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

  Spectrum out;
  out.eigenvalues.resize(n);
  out.eigenvectors = Matrix(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    out.eigenvalues[k] = a(src, src);
    // Sign convention: make the largest-magnitude component positive so equal
    // inputs give bit-identical output.
    std::size_t imax = 0;
    double amax = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      const double mag = std::abs(v(r, src));
      if (mag > amax) {
        amax = mag;
        imax = r;
      }
    }
    const double sign = (v(imax, src) < 0.0) ? -1.0 : 1.0;
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, k) = sign * v(r, src);
  }
  return out;
}

// Symmetric square root of a positive-semidefinite matrix. Round-off
// eigenvalues in [-1e-8, 0) are clamped to zero; anything lower means the
// input was not a state.
inline Matrix psd_sqrt(const Matrix& rho) {
  const Spectrum s = eigh(rho);
  const std::size_t n = rho.dim();
  std::vector<double> roots(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lam = s.eigenvalues[k];
    if (lam < -1e-8)
      throw InvalidStateError("psd_sqrt: eigenvalue " + std::to_string(lam) +
                              " below the -1e-8 positivity floor");
    roots[k] = std::sqrt(std::max(lam, 0.0));
  }
  Matrix out(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (roots[k] == 0.0) continue;
    for (std::size_t r = 0; r < n; ++r) {
      const double f = roots[k] * s.eigenvectors(r, k);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < n; ++c) out(r, c) += f * s.eigenvectors(c, k);
    }
  }
  return out;
}

}  // namespace xxchain
