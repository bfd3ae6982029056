#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "xxchain/chain.hpp"
#include "xxchain/eigensolver.hpp"
#include "xxchain/errors.hpp"
#include "xxchain/matrix.hpp"

namespace xxchain {

// Concurrences below this are reported as exactly zero in claim-verification
// contexts (raw values stay available everywhere else).
inline constexpr double kZeroThreshold = 1e-8;

// value = max(lambda_1 - lambda_2 - lambda_3 - lambda_4, 0) with the lambdas
// (square roots of the eigenvalues of rho * rho~) in descending order.
struct ConcurrenceResult {
  double value = 0.0;
  std::array<double, 4> lambdas{};
};

inline int qubit_count_from_dim(std::size_t dim) {
  if (dim < 4 || !std::has_single_bit(dim))
    throw InputError("density matrix dimension must be a power of 2 and at least 4, got " +
                     std::to_string(dim));
  return std::countr_zero(dim);
}

namespace detail {

inline void require_two_qubit(const Matrix& rho2) {
  if (rho2.dim() != 4)
    throw InputError("two-qubit state must be 4x4, got dim " + std::to_string(rho2.dim()));
}

}  // namespace detail

// Reduced state on sites (i, j): sum over all configurations of the other
// n-2 sites. Site i is the left (most significant) factor of the pair basis
// |b_i b_j>, matching the chain's site-1-is-most-significant convention.
inline Matrix partial_trace_pair(const Matrix& rho, int site_i, int site_j) {
  const int n = qubit_count_from_dim(rho.dim());
  if (site_i < 1 || site_i >= site_j || site_j > n)
    throw InputError("partial_trace_pair: need 1 <= i < j <= " + std::to_string(n) +
                     ", got (" + std::to_string(site_i) + ", " + std::to_string(site_j) + ")");
  const std::size_t bit_i = std::size_t{1} << site_shift(n, site_i);
  const std::size_t bit_j = std::size_t{1} << site_shift(n, site_j);

  std::vector<std::size_t> kept_bits;  // bit values of the traced-over sites
  for (int pos = 0; pos < n; ++pos) {
    const std::size_t bit = std::size_t{1} << pos;
    if (bit != bit_i && bit != bit_j) kept_bits.push_back(bit);
  }

  Matrix out(4);
  const std::size_t rest = std::size_t{1} << (n - 2);
  for (std::size_t m = 0; m < rest; ++m) {
    std::size_t base = 0;
    for (std::size_t k = 0; k < kept_bits.size(); ++k)
      if ((m >> k) & 1u) base |= kept_bits[k];
    for (std::size_t a = 0; a < 4; ++a) {
      const std::size_t ra = base | ((a & 2u) ? bit_i : 0u) | ((a & 1u) ? bit_j : 0u);
      for (std::size_t b = 0; b < 4; ++b) {
        const std::size_t rb = base | ((b & 2u) ? bit_i : 0u) | ((b & 1u) ? bit_j : 0u);
        out(a, b) += rho(ra, rb);
      }
    }
  }
  return out;
}

// rho~ = (sigma_y x sigma_y) rho* (sigma_y x sigma_y). Everything here is
// real, so rho* = rho, and sigma_y x sigma_y is the antidiagonal matrix with
// entries (-1, +1, +1, -1): conjugation reverses both indices and applies
// the sign pattern.
inline Matrix flipped_state(const Matrix& rho2) {
  detail::require_two_qubit(rho2);
  static constexpr std::array<double, 4> kSign{-1.0, 1.0, 1.0, -1.0};
  Matrix out(4);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) out(r, c) = kSign[r] * kSign[c] * rho2(3 - r, 3 - c);
  return out;
}

// The operator rho * rho~ whose eigenvalue square roots define concurrence.
inline Matrix spin_flip(const Matrix& rho2) { return rho2 * flipped_state(rho2); }

// Wootters concurrence through the Hermitian route: sqrt(rho) rho~ sqrt(rho)
// shares its spectrum with rho * rho~ but is symmetric, so the symmetric
// eigensolver applies and round-off negatives can be clamped safely.
inline ConcurrenceResult concurrence(const Matrix& rho2) {
  detail::require_two_qubit(rho2);
  const Matrix root = psd_sqrt(rho2);
  const Spectrum s = eigh(root * flipped_state(rho2) * root);

  ConcurrenceResult out;
  for (std::size_t k = 0; k < 4; ++k) {
    const double lam = s.eigenvalues[3 - k];  // descending
    if (lam < -1e-8)
      throw InvalidStateError("concurrence: rho*rho~ eigenvalue " + std::to_string(lam) +
                              " below the -1e-8 floor");
    out.lambdas[k] = std::sqrt(std::max(lam, 0.0));
  }
  out.value = std::max(out.lambdas[0] - out.lambdas[1] - out.lambdas[2] - out.lambdas[3], 0.0);
  return out;
}

// Closed form for X-form states (all pipeline reductions are X-form because
// the Hamiltonian conserves excitation number): with diagonal (u, v, w, x)
// and coherences z = rho[01,10], y = rho[00,11],
//   C = 2 * max(0, |z| - sqrt(u*x), |y| - sqrt(v*w)).
// Kept deliberately independent of concurrence() as a cross-check oracle.
inline double concurrence_xstate(const Matrix& rho2) {
  detail::require_two_qubit(rho2);
  static constexpr std::array<std::pair<std::size_t, std::size_t>, 4> kForbidden{
      {{0, 1}, {0, 2}, {1, 3}, {2, 3}}};
  for (const auto& [r, c] : kForbidden)
    if (std::abs(rho2(r, c)) > 1e-8 || std::abs(rho2(c, r)) > 1e-8)
      throw InputError("concurrence_xstate: entry (" + std::to_string(r) + ", " +
                       std::to_string(c) + ") violates the X-form pattern");

  const double u = rho2(0, 0);
  const double v = rho2(1, 1);
  const double w = rho2(2, 2);
  const double x = rho2(3, 3);
  const double z = rho2(1, 2);
  const double y = rho2(0, 3);
  const double inner = std::abs(z) - std::sqrt(std::max(u * x, 0.0));
  const double outer = std::abs(y) - std::sqrt(std::max(v * w, 0.0));
  return 2.0 * std::max({0.0, inner, outer});
}

struct PairConcurrence {
  int site_i = 0;
  int site_j = 0;
  ConcurrenceResult result;
};

// Concurrence of every pair i < j, in (i, j)-lexicographic order.
inline std::vector<PairConcurrence> all_pairwise(const Matrix& rho) {
  const int n = qubit_count_from_dim(rho.dim());
  std::vector<PairConcurrence> out;
  out.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      out.push_back({i, j, concurrence(partial_trace_pair(rho, i, j))});
  return out;
}

}  // namespace xxchain
