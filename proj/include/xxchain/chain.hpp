#pragma once

#include <bit>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "xxchain/errors.hpp"
#include "xxchain/matrix.hpp"

namespace xxchain {

// Open XX chain with per-site coupling factors. The physical strength of the
// bond between sites i and i+1 is the product site_factors[i-1]*site_factors[i];
// an "impurity" is a site whose factor differs from 1.
struct ChainSpec {
  int n = 0;
  std::vector<double> site_factors;  // J_1..J_n, one per site
};

inline constexpr int kMinQubits = 2;
inline constexpr int kMaxQubits = 12;  // dense 4096-dim diagonalization stays tractable

inline void validate(const ChainSpec& spec) {
  if (spec.n < kMinQubits || spec.n > kMaxQubits)
    throw InputError("chain size n = " + std::to_string(spec.n) + " outside [" +
                     std::to_string(kMinQubits) + ", " + std::to_string(kMaxQubits) + "]");
  if (static_cast<int>(spec.site_factors.size()) != spec.n)
    throw InputError("site_factors has " + std::to_string(spec.site_factors.size()) +
                     " entries, expected n = " + std::to_string(spec.n));
  for (int i = 0; i < spec.n; ++i) {
    const double j = spec.site_factors[static_cast<std::size_t>(i)];
    if (!std::isfinite(j) || j < 0.0)
      throw InputError("site factor J" + std::to_string(i + 1) + " must be finite and >= 0, got " +
                       std::to_string(j));
  }
}

inline ChainSpec uniform_chain(int n) {
  ChainSpec spec{n, std::vector<double>(static_cast<std::size_t>(n > 0 ? n : 0), 1.0)};
  validate(spec);
  return spec;
}

// All factors 1 except the impurity site. An impurity of strength 1 is no impurity.
inline ChainSpec impurity_pattern(int n, int impurity_site, double j) {
  if (n < kMinQubits || n > kMaxQubits)
    throw InputError("impurity_pattern: chain size n = " + std::to_string(n) + " outside [" +
                     std::to_string(kMinQubits) + ", " + std::to_string(kMaxQubits) + "]");
  if (impurity_site < 1 || impurity_site > n)
    throw InputError("impurity_site " + std::to_string(impurity_site) + " outside [1, " +
                     std::to_string(n) + "]");
  ChainSpec spec{n, std::vector<double>(static_cast<std::size_t>(n), 1.0)};
  spec.site_factors[static_cast<std::size_t>(impurity_site - 1)] = j;
  validate(spec);
  return spec;
}

// Basis convention (fixed): bit 1 = excited spin, site 1 is the most
// significant bit, so the index of configuration b_1..b_n is sum b_k 2^(n-k).
inline int site_shift(int n, int site) { return n - site; }

inline int site_bit(std::size_t index, int n, int site) {
  return static_cast<int>((index >> site_shift(n, site)) & 1u);
}

// Basis index with the site order reversed (site k -> site n+1-k).
inline std::size_t reverse_sites(std::size_t index, int n) {
  std::size_t out = 0;
  for (int site = 1; site <= n; ++site)
    out |= static_cast<std::size_t>(site_bit(index, n, site)) << (site - 1);
  return out;
}

// H = sum_{i=1}^{n-1} J_i J_{i+1} (s+_i s-_{i+1} + s+_{i+1} s-_i): each bond
// couples basis states that differ by moving one excitation between the two
// adjacent sites. Diagonal is zero; total excitation number is conserved.
inline Matrix build_hamiltonian(const ChainSpec& spec) {
  validate(spec);
  const int n = spec.n;
  const std::size_t dim = std::size_t{1} << n;
  Matrix h(dim);
  for (int bond = 1; bond < n; ++bond) {
    const double w = spec.site_factors[static_cast<std::size_t>(bond - 1)] *
                     spec.site_factors[static_cast<std::size_t>(bond)];
    if (w == 0.0) continue;
    const int hi = site_shift(n, bond);
    const int lo = site_shift(n, bond + 1);
    for (std::size_t r = 0; r < dim; ++r) {
      if (((r >> hi) & 1u) == 1u && ((r >> lo) & 1u) == 0u) {
        const std::size_t c = r ^ (std::size_t{1} << hi) ^ (std::size_t{1} << lo);
        h(r, c) += w;
        h(c, r) += w;
      }
    }
  }
  return h;
}

// Basis indices grouped by excitation count k = 0..n; sector k has C(n,k)
// members. H never couples different sectors.
inline std::vector<std::vector<std::size_t>> magnetization_sectors(int n) {
  if (n < kMinQubits || n > kMaxQubits)
    throw InputError("magnetization_sectors: chain size n = " + std::to_string(n) + " outside [" +
                     std::to_string(kMinQubits) + ", " + std::to_string(kMaxQubits) + "]");
  std::vector<std::vector<std::size_t>> sectors(static_cast<std::size_t>(n) + 1);
  const std::size_t dim = std::size_t{1} << n;
  for (std::size_t idx = 0; idx < dim; ++idx)
    sectors[static_cast<std::size_t>(std::popcount(idx))].push_back(idx);
  return sectors;
}

}  // namespace xxchain
