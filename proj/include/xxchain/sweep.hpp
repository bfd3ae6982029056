#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "xxchain/concurrence.hpp"
#include "xxchain/errors.hpp"
#include "xxchain/pipeline.hpp"
#include "xxchain/scenarios.hpp"
#include "xxchain/thermal.hpp"

namespace xxchain {

// Shortest decimal form that round-trips exactly to the same double.
// Locale-independent (snprintf "%.17g" never inserts grouping and the C
// locale decimal point is fixed by not calling setlocale anywhere).
inline std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline std::vector<double> linspace(double lo, double hi, int count) {
  if (count < 1) throw InputError("linspace: count must be >= 1");
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi)
    throw InputError("linspace: need finite lo <= hi");
  if (count == 1) return {lo};
  std::vector<double> grid(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k)
    grid[static_cast<std::size_t>(k)] = lo + (hi - lo) * k / (count - 1);
  grid.back() = hi;
  return grid;
}

// Default scan grids: J in [0, 3] at 61 points; temperatures 0 (ground
// multiplet) plus a geometric ramp near zero and the qualitative regimes.
inline std::vector<double> default_j_grid() { return linspace(0.0, 3.0, 61); }
inline std::vector<double> default_t_grid() {
  return {0.0, 0.0125, 0.025, 0.05, 0.1, 0.5, 1.0};
}

// One CSV row: the expanded couplings at this grid point, the temperature,
// and the concurrence of one pair.
struct SweepRow {
  std::vector<double> site_factors;
  double temperature = 0.0;
  int pair_i = 0;
  int pair_j = 0;
  double concurrence = 0.0;
};

// Rows in (J, T, pair) lexicographic order: row index
// (j_idx * |t_grid| + t_idx) * |pairs| + pair_idx.
struct SweepResult {
  std::string scenario_name;
  int n = 0;
  std::vector<double> j_grid;
  std::vector<double> t_grid;
  std::vector<std::pair<int, int>> pairs;
  std::vector<SweepRow> rows;

  std::size_t row_index(std::size_t j_idx, std::size_t t_idx, std::size_t pair_idx) const {
    return (j_idx * t_grid.size() + t_idx) * pairs.size() + pair_idx;
  }
  const SweepRow& at(std::size_t j_idx, std::size_t t_idx, std::size_t pair_idx) const {
    return rows[row_index(j_idx, t_idx, pair_idx)];
  }
};

namespace detail {

inline std::vector<double> sorted_grid(std::vector<double> grid, const char* what,
                                       bool allow_zero) {
  if (grid.empty()) throw InputError(std::string(what) + " grid is empty");
  for (double x : grid)
    if (!std::isfinite(x) || x < 0.0 || (!allow_zero && x == 0.0))
      throw InputError(std::string(what) + " grid value " + format_double(x) + " out of range");
  std::sort(grid.begin(), grid.end());
  return grid;
}

}  // namespace detail

// Evaluate the scenario on the full J x T grid. One diagonalization per J,
// reused across temperatures. Rows come out sorted by (J, T, pair).
inline SweepResult run_sweep(const Scenario& scenario, std::vector<double> j_grid,
                             std::vector<double> t_grid) {
  if (!scenario.coupling_rule) throw InputError("run_sweep: scenario has no coupling rule");
  if (scenario.pairs.empty()) throw InputError("run_sweep: scenario has no pairs");

  SweepResult out;
  out.scenario_name = scenario.name;
  out.n = scenario.n;
  out.j_grid = detail::sorted_grid(std::move(j_grid), "J", /*allow_zero=*/true);
  out.t_grid = detail::sorted_grid(std::move(t_grid), "T", /*allow_zero=*/true);
  out.pairs = scenario.pairs;
  std::sort(out.pairs.begin(), out.pairs.end());
  out.rows.reserve(out.j_grid.size() * out.t_grid.size() * out.pairs.size());

  for (double j : out.j_grid) {
    const ChainSpec spec = scenario.coupling_rule(j);
    if (spec.n != scenario.n)
      throw InputError("run_sweep: coupling rule changed the chain size");
    Spectrum spectrum;
    try {
      spectrum = chain_spectrum(spec);
    } catch (const NumericalError& e) {
      throw NumericalError("sweep aborted at J = " + format_double(j) + ": " + e.what());
    }
    for (double t : out.t_grid) {
      Matrix rho;
      try {
        rho = thermal_state(spectrum, Temperature(t));
      } catch (const NumericalError& e) {
        throw NumericalError("sweep aborted at J = " + format_double(j) +
                             ", T = " + format_double(t) + ": " + e.what());
      }
      for (const auto& [pi, pj] : out.pairs) {
        SweepRow row;
        row.site_factors = spec.site_factors;
        row.temperature = t;
        row.pair_i = pi;
        row.pair_j = pj;
        try {
          row.concurrence = concurrence(partial_trace_pair(rho, pi, pj)).value;
        } catch (const NumericalError& e) {
          throw NumericalError("sweep aborted at J = " + format_double(j) + ", T = " +
                               format_double(t) + ", pair (" + std::to_string(pi) + ", " +
                               std::to_string(pj) + "): " + e.what());
        }
        out.rows.push_back(std::move(row));
      }
    }
  }
  return out;
}

// CSV schema: scenario,n,J1,...,Jn,temperature,pair_i,pair_j,concurrence
// with doubles printed %.17g so files round-trip and rerun byte-identically.
inline void write_sweep_csv(const SweepResult& result, std::ostream& os) {
  os << "scenario,n";
  for (int k = 1; k <= result.n; ++k) os << ",J" << k;
  os << ",temperature,pair_i,pair_j,concurrence\n";
  for (const SweepRow& row : result.rows) {
    os << result.scenario_name << ',' << result.n;
    for (double j : row.site_factors) os << ',' << format_double(j);
    os << ',' << format_double(row.temperature) << ',' << row.pair_i << ',' << row.pair_j << ','
       << format_double(row.concurrence) << '\n';
  }
  if (!os) throw IoError("failed while writing sweep CSV");
}

inline void write_sweep_csv(const SweepResult& result, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  write_sweep_csv(result, os);
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

inline double parse_double(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const double x = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return x;
  } catch (const std::exception&) {
    throw IoError("sweep CSV: bad " + std::string(what) + " value '" + s + "'");
  }
}

inline int parse_int(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const int x = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return x;
  } catch (const std::exception&) {
    throw IoError("sweep CSV: bad " + std::string(what) + " value '" + s + "'");
  }
}

}  // namespace detail

// Rebuilds rows, name, n, the temperature grid, and the pair list from a
// CSV produced by write_sweep_csv. The scan-parameter grid is not a CSV
// column, so j_grid comes back empty.
inline SweepResult read_sweep_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw IoError("sweep CSV: missing header");
  const std::vector<std::string> header = detail::split_csv_line(line);
  if (header.size() < 7 || header[0] != "scenario" || header[1] != "n" ||
      header[header.size() - 4] != "temperature" || header.back() != "concurrence")
    throw IoError("sweep CSV: unrecognized header");
  const int n = static_cast<int>(header.size()) - 6;

  SweepResult out;
  out.n = n;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = detail::split_csv_line(line);
    if (f.size() != header.size())
      throw IoError("sweep CSV: row has " + std::to_string(f.size()) + " fields, expected " +
                    std::to_string(header.size()));
    if (out.rows.empty())
      out.scenario_name = f[0];
    else if (f[0] != out.scenario_name)
      throw IoError("sweep CSV: mixed scenario names");
    if (detail::parse_int(f[1], "n") != n) throw IoError("sweep CSV: n column mismatch");

    SweepRow row;
    row.site_factors.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
      row.site_factors.push_back(detail::parse_double(f[static_cast<std::size_t>(2 + k)], "J"));
    row.temperature = detail::parse_double(f[f.size() - 4], "temperature");
    row.pair_i = detail::parse_int(f[f.size() - 3], "pair_i");
    row.pair_j = detail::parse_int(f[f.size() - 2], "pair_j");
    row.concurrence = detail::parse_double(f.back(), "concurrence");
    if (std::find(out.pairs.begin(), out.pairs.end(),
                  std::make_pair(row.pair_i, row.pair_j)) == out.pairs.end())
      out.pairs.emplace_back(row.pair_i, row.pair_j);
    if (std::find(out.t_grid.begin(), out.t_grid.end(), row.temperature) == out.t_grid.end())
      out.t_grid.push_back(row.temperature);
    out.rows.push_back(std::move(row));
  }
  std::sort(out.pairs.begin(), out.pairs.end());
  std::sort(out.t_grid.begin(), out.t_grid.end());
  return out;
}

inline SweepResult read_sweep_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open '" + path + "' for reading");
  return read_sweep_csv(is);
}

}  // namespace xxchain
