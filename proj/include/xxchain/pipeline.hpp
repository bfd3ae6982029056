#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

#include "xxchain/chain.hpp"
#include "xxchain/eigensolver.hpp"
#include "xxchain/matrix.hpp"
#include "xxchain/thermal.hpp"

namespace xxchain {

// Full spectrum of the chain Hamiltonian, diagonalized sector by sector.
// Excitation number is conserved, so H is block diagonal over the
// magnetization sectors; diagonalizing the C(n,k)-dim blocks separately is
// far cheaper than one 2^n-dim solve and keeps the eigenvectors exactly
// sector-pure. The result is equivalent to eigh(build_hamiltonian(spec)):
// eigenvalues ascending, ties broken by (sector, within-sector) order.
inline Spectrum chain_spectrum(const ChainSpec& spec) {
  validate(spec);
  const Matrix h = build_hamiltonian(spec);
  const std::size_t dim = h.dim();

  std::vector<double> values(dim);
  Matrix vectors(dim);
  std::size_t col = 0;
  for (const auto& sector : magnetization_sectors(spec.n)) {
    const std::size_t m = sector.size();
    Matrix block(m);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < m; ++c) block(r, c) = h(sector[r], sector[c]);
    const Spectrum bs = eigh(block);
    for (std::size_t k = 0; k < m; ++k, ++col) {
      values[col] = bs.eigenvalues[k];
      for (std::size_t r = 0; r < m; ++r) vectors(sector[r], col) = bs.eigenvectors(r, k);
    }
  }

  std::vector<std::size_t> order(dim);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&values](std::size_t i, std::size_t j) { return values[i] < values[j]; });

  Spectrum out;
  out.eigenvalues.resize(dim);
  out.eigenvectors = Matrix(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    out.eigenvalues[k] = values[order[k]];
    for (std::size_t r = 0; r < dim; ++r) out.eigenvectors(r, k) = vectors(r, order[k]);
  }
  return out;
}

// Build -> diagonalize -> thermal state in one call.
inline Matrix thermal_chain_state(const ChainSpec& spec, Temperature t) {
  return thermal_state(chain_spectrum(spec), t);
}

}  // namespace xxchain
