#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "xxchain/eigensolver.hpp"
#include "xxchain/errors.hpp"
#include "xxchain/matrix.hpp"

namespace xxchain {

// Temperature in natural units (k_B = 1, beta = 1/T). T = 0 is a valid
// distinguished value meaning the ground-multiplet limit.
class Temperature {
 public:
  explicit Temperature(double value) : value_(value) {
    if (!std::isfinite(value_) || value_ < 0.0)
      throw InputError("temperature: must be finite and >= 0, got " + std::to_string(value));
  }
  static Temperature zero() { return Temperature(0.0); }
  double value() const { return value_; }
  bool is_zero() const { return value_ == 0.0; }

 private:
  double value_;
};

namespace detail {

// rho += weight * |v_k><v_k| for each listed eigenvector column.
inline void accumulate_projectors(Matrix& rho, const Matrix& vectors,
                                  const std::vector<std::size_t>& columns,
                                  const std::vector<double>& weights) {
  const std::size_t n = rho.dim();
  for (std::size_t idx = 0; idx < columns.size(); ++idx) {
    const std::size_t k = columns[idx];
    const double w = weights[idx];
    if (w == 0.0) continue;
    for (std::size_t r = 0; r < n; ++r) {
      const double f = w * vectors(r, k);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < n; ++c) rho(r, c) += f * vectors(c, k);
    }
  }
}

}  // namespace detail

// Gibbs state exp(-H/T)/Z assembled from an eigendecomposition of H.
// Weights are exp(-(lambda_k - lambda_min)/T); the shift keeps the largest
// exponent at exactly 1 so no temperature can overflow.
inline Matrix gibbs_state(const Spectrum& spec, Temperature t) {
  if (t.is_zero())
    throw InputError("gibbs_state: T must be > 0; use ground_state_mixture at T = 0");
  if (spec.eigenvalues.empty()) throw InputError("gibbs_state: empty spectrum");
  const std::size_t n = spec.eigenvalues.size();
  const double lambda_min = spec.eigenvalues.front();

  std::vector<double> weights(n);
  std::vector<std::size_t> columns(n);
  double z = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    weights[k] = std::exp(-(spec.eigenvalues[k] - lambda_min) / t.value());
    columns[k] = k;
    z += weights[k];
  }
  for (double& w : weights) w /= z;

  Matrix rho(n);
  detail::accumulate_projectors(rho, spec.eigenvectors, columns, weights);
  return rho;
}

// Default degeneracy window: 1e-9 of the spectral range, floored so it stays
// positive for flat spectra (where every state is in the multiplet anyway).
inline double default_degeneracy_tolerance(const Spectrum& spec) {
  if (spec.eigenvalues.empty()) throw InputError("degeneracy tolerance: empty spectrum");
  const double range = spec.eigenvalues.back() - spec.eigenvalues.front();
  return std::max(1e-9 * range, std::numeric_limits<double>::min());
}

// Equal-weight mixture over the ground multiplet {k : lambda_k <= lambda_min
// + deg_tol} — the T -> 0+ limit of gibbs_state.
inline Matrix ground_state_mixture(const Spectrum& spec, double deg_tol) {
  if (!(deg_tol > 0.0) || !std::isfinite(deg_tol))
    throw InputError("ground_state_mixture: deg_tol must be finite and > 0");
  if (spec.eigenvalues.empty()) throw InputError("ground_state_mixture: empty spectrum");
  const double cutoff = spec.eigenvalues.front() + deg_tol;

  std::vector<std::size_t> columns;
  for (std::size_t k = 0; k < spec.eigenvalues.size() && spec.eigenvalues[k] <= cutoff; ++k)
    columns.push_back(k);
  const std::vector<double> weights(columns.size(), 1.0 / static_cast<double>(columns.size()));

  Matrix rho(spec.eigenvalues.size());
  detail::accumulate_projectors(rho, spec.eigenvectors, columns, weights);
  return rho;
}

inline Matrix ground_state_mixture(const Spectrum& spec) {
  return ground_state_mixture(spec, default_degeneracy_tolerance(spec));
}

// T = 0 dispatches to the ground multiplet, anything else to the Gibbs state.
inline Matrix thermal_state(const Spectrum& spec, Temperature t) {
  return t.is_zero() ? ground_state_mixture(spec) : gibbs_state(spec, t);
}

}  // namespace xxchain
