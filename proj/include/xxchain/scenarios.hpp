#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "xxchain/chain.hpp"
#include "xxchain/errors.hpp"

namespace xxchain {

// A family of chains indexed by one scan parameter J, plus the site pairs
// whose concurrence a sweep should report.
struct Scenario {
  std::string name;
  int n = 0;
  std::function<ChainSpec(double)> coupling_rule;
  std::vector<std::pair<int, int>> pairs;
};

inline std::vector<std::pair<int, int>> all_pairs(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) pairs.emplace_back(i, j);
  return pairs;
}

// One impurity site scanned through J, every other factor 1.
inline Scenario single_impurity_scenario(int n, int impurity_site) {
  impurity_pattern(n, impurity_site, 1.0);  // validate n and site up front
  Scenario s;
  s.name = "n" + std::to_string(n) + "-impurity-site" + std::to_string(impurity_site);
  s.n = n;
  s.coupling_rule = [n, impurity_site](double j) { return impurity_pattern(n, impurity_site, j); };
  s.pairs = all_pairs(n);
  return s;
}

// J_1 = J_n = J with interior factors 1 (palindromic couplings).
inline Scenario boundary_impurity_scenario(int n) {
  uniform_chain(n);  // validate n
  Scenario s;
  s.name = "n" + std::to_string(n) + "-boundary";
  s.n = n;
  s.coupling_rule = [n](double j) {
    ChainSpec spec = uniform_chain(n);
    spec.site_factors.front() = j;
    spec.site_factors.back() = j;
    validate(spec);
    return spec;
  };
  s.pairs = all_pairs(n);
  return s;
}

// Factors falling geometrically (x10 per step) from the middle out to the
// boundary: n=4 -> (0.1, 1, 1, 0.1), n=6 -> (0.1, 1, 10, 10, 1, 0.1),
// n=8 -> (0.1, 1, 10, 100, 100, 10, 1, 0.1).
inline ChainSpec monotone_profile_chain(int n) {
  if (n < 4 || n % 2 != 0)
    throw InputError("monotone_profile_chain: n must be even and >= 4, got " + std::to_string(n));
  ChainSpec spec;
  spec.n = n;
  spec.site_factors.resize(static_cast<std::size_t>(n));
  for (int site = 1; site <= n; ++site) {
    const int depth = std::min(site - 1, n - site);
    spec.site_factors[static_cast<std::size_t>(site - 1)] = std::pow(10.0, depth - 1);
  }
  validate(spec);
  return spec;
}

// The named configurations the CLI exposes.
inline std::vector<std::string> scenario_names() {
  return {"fig1", "fig2", "fig4", "fig5", "six-qubit"};
}

// fig1:      n=3, impurity at site 2 (the canonical three-qubit scan)
// fig2:      n=4, impurity at site 1, all six pairs
// fig4:      n=4, impurity at site 1, the transfer-law pairs
// fig5:      n=4, J_1 = J_4 = J with J_2 = J_3 = 1 (entangled kernel)
// six-qubit: n=6, factors (J, 1, 10, 10, 1, J); J = 0.1 is the flagship chain
inline Scenario named_scenario(const std::string& name) {
  if (name == "fig1") {
    Scenario s = single_impurity_scenario(3, 2);
    s.name = "fig1";
    return s;
  }
  if (name == "fig2") {
    Scenario s = single_impurity_scenario(4, 1);
    s.name = "fig2";
    return s;
  }
  if (name == "fig4") {
    Scenario s = single_impurity_scenario(4, 1);
    s.name = "fig4";
    s.pairs = {{1, 2}, {2, 3}, {3, 4}, {1, 4}};
    std::sort(s.pairs.begin(), s.pairs.end());
    return s;
  }
  if (name == "fig5") {
    Scenario s = boundary_impurity_scenario(4);
    s.name = "fig5";
    s.pairs = {{1, 2}, {1, 4}, {2, 3}, {3, 4}};
    return s;
  }
  if (name == "six-qubit") {
    Scenario s;
    s.name = "six-qubit";
    s.n = 6;
    s.coupling_rule = [](double j) {
      ChainSpec spec{6, {j, 1.0, 10.0, 10.0, 1.0, j}};
      validate(spec);
      return spec;
    };
    s.pairs = all_pairs(6);
    return s;
  }
  std::string known;
  for (const std::string& k : scenario_names()) known += (known.empty() ? "" : ", ") + k;
  throw InputError("unknown scenario '" + name + "'; known: " + known);
}

}  // namespace xxchain
