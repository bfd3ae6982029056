#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "xxchain/chain.hpp"
#include "xxchain/eigensolver.hpp"
#include "xxchain/pipeline.hpp"
#include "xxchain/thermal.hpp"

using Catch::Approx;
using namespace xxchain;

namespace {

Matrix random_symmetric(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Matrix a(dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = r; c < dim; ++c) a(r, c) = a(c, r) = dist(rng);
  return a;
}

Matrix reconstruct(const Spectrum& s) {
  const std::size_t dim = s.eigenvalues.size();
  Matrix out(dim);
  for (std::size_t k = 0; k < dim; ++k)
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c)
        out(r, c) += s.eigenvalues[k] * s.eigenvectors(r, k) * s.eigenvectors(c, k);
  return out;
}

}  // namespace

TEST_CASE("eigh on trivial matrices") {
  const Spectrum id = eigh(Matrix::identity(4));
  for (double lam : id.eigenvalues) CHECK(lam == Approx(1.0).margin(1e-14));

  Matrix flip(2);
  flip(0, 1) = flip(1, 0) = 1.0;
  const Spectrum s = eigh(flip);
  CHECK(s.eigenvalues[0] == Approx(-1.0).margin(1e-14));
  CHECK(s.eigenvalues[1] == Approx(1.0).margin(1e-14));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  // sign convention: largest-magnitude component positive
  CHECK(std::abs(s.eigenvectors(0, 0)) == Approx(inv_sqrt2).margin(1e-14));
  CHECK(s.eigenvectors(0, 0) * s.eigenvectors(1, 0) < 0.0);  // (1, -1)/sqrt(2) direction
  CHECK(s.eigenvectors(0, 1) == Approx(inv_sqrt2).margin(1e-14));
  CHECK(s.eigenvectors(1, 1) == Approx(inv_sqrt2).margin(1e-14));
}

TEST_CASE("eigh of the uniform 3-chain Hamiltonian") {
  const Spectrum s = eigh(build_hamiltonian(uniform_chain(3)));
  const double r2 = std::sqrt(2.0);
  const std::vector<double> want{-r2, -r2, 0.0, 0.0, 0.0, 0.0, r2, r2};
  REQUIRE(s.eigenvalues.size() == want.size());
  for (std::size_t k = 0; k < want.size(); ++k)
    CHECK(s.eigenvalues[k] == Approx(want[k]).margin(1e-12));
}

TEST_CASE("eigh rejects asymmetric input") {
  Matrix bad(3);
  bad(0, 1) = 1.0;  // transpose entry left at 0
  CHECK_THROWS_AS(eigh(bad), InputError);
}

TEST_CASE("eigh reconstruction and orthonormality up to dim 64") {
  std::mt19937_64 rng(20240817);
  for (const std::size_t dim : {2, 3, 5, 8, 16, 33, 64}) {
    const Matrix a = random_symmetric(dim, rng);
    const Spectrum s = eigh(a);

    for (std::size_t k = 0; k + 1 < dim; ++k) CHECK(s.eigenvalues[k] <= s.eigenvalues[k + 1]);
    CHECK(frobenius_distance(reconstruct(s), a) <= 1e-9);

    double gram_err = 0.0;
    for (std::size_t j = 0; j < dim; ++j)
      for (std::size_t k = 0; k < dim; ++k) {
        double dot = 0.0;
        for (std::size_t r = 0; r < dim; ++r) dot += s.eigenvectors(r, j) * s.eigenvectors(r, k);
        gram_err = std::max(gram_err, std::abs(dot - (j == k ? 1.0 : 0.0)));
      }
    CHECK(gram_err <= 1e-10);
  }
}

TEST_CASE("eigh is deterministic: identical input, bit-identical output") {
  std::mt19937_64 rng(7);
  const Matrix a = random_symmetric(16, rng);
  const Spectrum s1 = eigh(a);
  const Spectrum s2 = eigh(a);
  CHECK(s1.eigenvalues == s2.eigenvalues);
  for (std::size_t r = 0; r < 16; ++r)
    for (std::size_t c = 0; c < 16; ++c) CHECK(s1.eigenvectors(r, c) == s2.eigenvectors(r, c));
}

TEST_CASE("psd_sqrt on trivial states") {
  Matrix quarter = Matrix::identity(4);
  for (std::size_t k = 0; k < 4; ++k) quarter(k, k) = 0.25;
  const Matrix root = psd_sqrt(quarter);
  for (std::size_t k = 0; k < 4; ++k) CHECK(root(k, k) == Approx(0.5).margin(1e-12));

  // a pure-state projector is its own square root (round-off eigenvalues of
  // the projector get amplified by the square root, hence the looser margin)
  Matrix proj(4);
  const double v[4] = {0.5, 0.5, -0.5, 0.5};
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) proj(r, c) = v[r] * v[c];
  const Matrix proj_root = psd_sqrt(proj);
  CHECK(frobenius_distance(proj_root, proj) <= 1e-7);
  CHECK(frobenius_distance(proj_root * proj_root, proj) <= 1e-9);

  Matrix diag(4);
  diag(0, 0) = diag(1, 1) = 0.5;
  const Matrix droot = psd_sqrt(diag);
  CHECK(droot(0, 0) == Approx(std::sqrt(0.5)).margin(1e-12));
  CHECK(droot(1, 1) == Approx(std::sqrt(0.5)).margin(1e-12));
  CHECK(droot(2, 2) == Approx(0.0).margin(1e-12));

  // S*S == rho within 1e-9 on a random mixed state
  std::mt19937_64 rng(99);
  Matrix g = random_symmetric(8, rng);
  Matrix rho = g * g.transposed();
  const double tr = rho.trace();
  for (std::size_t r = 0; r < 8; ++r)
    for (std::size_t c = 0; c < 8; ++c) rho(r, c) /= tr;
  const Matrix s = psd_sqrt(rho);
  CHECK(frobenius_distance(s * s, rho) <= 1e-9);
}

TEST_CASE("psd_sqrt rejects states with a clearly negative eigenvalue") {
  Matrix bad = Matrix::identity(4);
  bad(3, 3) = -1e-6;
  CHECK_THROWS_AS(psd_sqrt(bad), InvalidStateError);

  // round-off-level negativity is clamped instead
  Matrix ok = Matrix::identity(4);
  ok(3, 3) = -1e-9;
  CHECK_NOTHROW(psd_sqrt(ok));
}

TEST_CASE("Temperature validates its value") {
  CHECK_THROWS_AS(Temperature(-0.1), InputError);
  CHECK_THROWS_AS(Temperature(std::nan("")), InputError);
  CHECK_THROWS_AS(Temperature(std::numeric_limits<double>::infinity()), InputError);
  CHECK(Temperature::zero().is_zero());
  CHECK(Temperature(0.5).value() == 0.5);
}

TEST_CASE("gibbs_state limits") {
  const Spectrum s = chain_spectrum(uniform_chain(3));

  // infinite-temperature limit: maximally mixed
  const Matrix hot = gibbs_state(s, Temperature(1e9));
  for (std::size_t r = 0; r < 8; ++r)
    for (std::size_t c = 0; c < 8; ++c)
      CHECK(hot(r, c) == Approx(r == c ? 0.125 : 0.0).margin(1e-6));

  // zero-temperature limit of a nondegenerate spectrum: ground projector
  const Spectrum s4 = chain_spectrum(uniform_chain(4));
  const Matrix cold = gibbs_state(s4, Temperature(1e-9));
  Matrix proj(16);
  for (std::size_t r = 0; r < 16; ++r)
    for (std::size_t c = 0; c < 16; ++c) proj(r, c) = s4.eigenvectors(r, 0) * s4.eigenvectors(c, 0);
  CHECK(frobenius_distance(cold, proj) <= 1e-6);

  CHECK_THROWS_AS(gibbs_state(s, Temperature::zero()), InputError);
}

TEST_CASE("gibbs_state is a density matrix for random chains and temperatures") {
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<int> ndist(2, 6);
  std::uniform_real_distribution<double> jdist(0.0, 10.0);
  std::uniform_real_distribution<double> logt(-3.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = ndist(rng);
    ChainSpec spec{n, {}};
    for (int k = 0; k < n; ++k) spec.site_factors.push_back(jdist(rng));
    const Matrix rho = gibbs_state(chain_spectrum(spec), Temperature(std::pow(10.0, logt(rng))));

    CHECK(std::abs(rho.trace() - 1.0) <= 1e-10);
    CHECK(rho.is_symmetric());
    const Spectrum spec_rho = eigh(rho);
    CHECK(spec_rho.eigenvalues.front() >= -1e-10);
  }
}

TEST_CASE("ground_state_mixture matches the T -> 0 Gibbs limit") {
  const Spectrum s = chain_spectrum(uniform_chain(3));
  const Matrix mix = ground_state_mixture(s);

  // two degenerate ground states -> rank-2 equal mixture: tr(rho^2) = 1/2
  CHECK((mix * mix).trace() == Approx(0.5).margin(1e-12));
  CHECK(frobenius_distance(mix, gibbs_state(s, Temperature(1e-6))) <= 1e-3);

  // nondegenerate case: rank-1 projector
  const Spectrum s4 = chain_spectrum(uniform_chain(4));
  const Matrix proj = ground_state_mixture(s4);
  CHECK((proj * proj).trace() == Approx(1.0).margin(1e-12));

  CHECK_THROWS_AS(ground_state_mixture(s, -1.0), InputError);
  CHECK_THROWS_AS(ground_state_mixture(s, 0.0), InputError);
}

TEST_CASE("distance to the ground mixture is monotone as T decreases") {
  const Spectrum s = chain_spectrum(uniform_chain(3));
  const Matrix mix = ground_state_mixture(s);
  double previous = std::numeric_limits<double>::infinity();
  for (double t = 10.0; t >= 1e-4; t /= 2.0) {
    const double d = frobenius_distance(gibbs_state(s, Temperature(t)), mix);
    CHECK(d <= previous + 1e-12);
    previous = d;
  }
}

TEST_CASE("thermal energy matches the ground energy at tiny T") {
  // nondegenerate ground state (n=4 uniform)
  const ChainSpec spec = uniform_chain(4);
  const Matrix h = build_hamiltonian(spec);
  const Spectrum s = chain_spectrum(spec);
  const Matrix rho = gibbs_state(s, Temperature(1e-6));
  CHECK((rho * h).trace() ==
        Approx(s.eigenvalues.front()).margin(1e-6 * std::abs(s.eigenvalues.front())));
}

TEST_CASE("thermal_state dispatches on the T = 0 sentinel") {
  const Spectrum s = chain_spectrum(uniform_chain(3));
  CHECK(frobenius_distance(thermal_state(s, Temperature::zero()), ground_state_mixture(s)) == 0.0);
  CHECK(frobenius_distance(thermal_state(s, Temperature(0.5)), gibbs_state(s, Temperature(0.5))) ==
        0.0);
}

TEST_CASE("chain_spectrum equals the full-matrix diagonalization") {
  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<int> ndist(2, 6);
  std::uniform_real_distribution<double> jdist(0.0, 5.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = ndist(rng);
    ChainSpec spec{n, {}};
    for (int k = 0; k < n; ++k) spec.site_factors.push_back(jdist(rng));

    const Spectrum blocked = chain_spectrum(spec);
    const Matrix h = build_hamiltonian(spec);
    const Spectrum full = eigh(h);
    for (std::size_t k = 0; k < blocked.eigenvalues.size(); ++k)
      CHECK(blocked.eigenvalues[k] == Approx(full.eigenvalues[k]).margin(1e-10));
    CHECK(frobenius_distance(reconstruct(blocked), h) <= 1e-9);
  }
}
