#pragma once

#include <algorithm>
#include <fstream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "xxchain/chain.hpp"
#include "xxchain/claims.hpp"
#include "xxchain/concurrence.hpp"
#include "xxchain/errors.hpp"
#include "xxchain/optimize.hpp"
#include "xxchain/pipeline.hpp"
#include "xxchain/scenarios.hpp"
#include "xxchain/sweep.hpp"
#include "xxchain/thermal.hpp"

namespace xxchain {

// Exit-code contract (exhaustive): 0 success, 1 claim failure, 2 invalid
// input, 3 I/O error, 4 numerical error.
inline constexpr int kExitSuccess = 0;
inline constexpr int kExitClaimFailure = 1;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitIoError = 3;
inline constexpr int kExitNumericalError = 4;

namespace cli_detail {

inline std::pair<int, int> parse_pair(const std::string& text) {
  const std::size_t comma = text.find(',');
  if (comma == std::string::npos)
    throw InputError("pair '" + text + "' must be two comma-separated sites, e.g. 1,4");
  try {
    std::size_t used = 0;
    const int i = std::stoi(text.substr(0, comma), &used);
    if (used != comma) throw std::invalid_argument(text);
    const std::string rest = text.substr(comma + 1);
    const int j = std::stoi(rest, &used);
    if (used != rest.size()) throw std::invalid_argument(text);
    return {i, j};
  } catch (const InputError&) {
    throw;
  } catch (const std::exception&) {
    throw InputError("pair '" + text + "' must be two comma-separated integers");
  }
}

inline std::vector<std::pair<int, int>> parse_pairs(const std::vector<std::string>& texts, int n) {
  std::vector<std::pair<int, int>> pairs;
  for (const std::string& text : texts) {
    const auto [i, j] = parse_pair(text);
    if (i < 1 || i >= j || j > n)
      throw InputError("pair (" + std::to_string(i) + ", " + std::to_string(j) +
                       ") needs 1 <= i < j <= n = " + std::to_string(n));
    pairs.emplace_back(i, j);
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

// Pick the named scenario or assemble one from --n plus an impurity rule.
inline Scenario resolve_scenario(const std::string& name, int n, int impurity_site,
                                 bool boundary) {
  if (!name.empty()) {
    if (n != 0 || impurity_site != 0 || boundary)
      throw InputError("--scenario cannot be combined with --n, --impurity-site or --boundary");
    return named_scenario(name);
  }
  if (n == 0)
    throw InputError("need either --scenario or --n together with --impurity-site/--boundary");
  if (boundary && impurity_site != 0)
    throw InputError("--impurity-site and --boundary are mutually exclusive");
  if (boundary) return boundary_impurity_scenario(n);
  if (impurity_site != 0) return single_impurity_scenario(n, impurity_site);
  throw InputError("with --n, pick an impurity rule: --impurity-site K or --boundary");
}

// Route output to a file when a path was given, otherwise to fallback.
class OutputTarget {
 public:
  OutputTarget(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw IoError("cannot open '" + path + "' for writing");
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }
  void finish() {
    stream_->flush();
    if (!*stream_) throw IoError("failed while writing output");
  }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

inline void print_concurrence_table(const std::vector<PairConcurrence>& rows, std::ostream& os) {
  os << "pair_i,pair_j,concurrence,lambda1,lambda2,lambda3,lambda4\n";
  for (const PairConcurrence& p : rows) {
    os << p.site_i << ',' << p.site_j << ',' << format_double(p.result.value);
    for (double lam : p.result.lambdas) os << ',' << format_double(lam);
    os << '\n';
  }
}

inline void write_transfer_table(const TransferLawResult& result, std::ostream& os) {
  os << "J,temperature,C12,C23,C34,C14,min_neighbor,deviation,"
        "decay_T_C12,decay_T_C23,decay_T_C34,decay_T_C14\n";
  const std::size_t t_count = result.sweep.t_grid.size();
  for (std::size_t k = 0; k < result.table.size(); ++k) {
    const TransferPoint& p = result.table[k];
    const TransferDecayRow& d = result.decay[k / t_count];
    os << format_double(p.j) << ',' << format_double(p.t) << ',' << format_double(p.c12) << ','
       << format_double(p.c23) << ',' << format_double(p.c34) << ',' << format_double(p.c14)
       << ',' << format_double(p.min_neighbor) << ',' << format_double(p.deviation) << ','
       << format_double(d.t_c12) << ',' << format_double(d.t_c23) << ','
       << format_double(d.t_c34) << ',' << format_double(d.t_c14) << '\n';
  }
}

inline void print_claim(const ClaimReport& r, std::ostream& os) {
  os << (r.passed ? "PASS " : "FAIL ") << r.id << ": measured " << format_double(r.measured)
     << " against tolerance " << format_double(r.tolerance) << '\n';
  os << "  " << r.detail << '\n';
  for (const ClaimWitness& w : r.witnesses)
    os << "  - J=" << format_double(w.j) << " T=" << format_double(w.t) << " pair ("
       << w.pair_i << "," << w.pair_j << ") C=" << format_double(w.value) << ": " << w.note
       << '\n';
}

inline nlohmann::json claim_to_json(const ClaimReport& r) {
  nlohmann::json witnesses = nlohmann::json::array();
  for (const ClaimWitness& w : r.witnesses)
    witnesses.push_back({{"j", w.j},
                         {"t", w.t},
                         {"pair_i", w.pair_i},
                         {"pair_j", w.pair_j},
                         {"value", w.value},
                         {"note", w.note}});
  return {{"id", r.id},          {"passed", r.passed}, {"measured", r.measured},
          {"tolerance", r.tolerance}, {"detail", r.detail}, {"witnesses", witnesses}};
}

}  // namespace cli_detail

// In-process entry point: args without the program name, results on `out`,
// diagnostics on `err`. Returns an exit code per the contract above.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pairwise thermal concurrence in open XX spin chains with bond impurities"};
  app.require_subcommand(0, 1);
  app.set_config("--config", "",
                 "read options from a key=value config file (command-line flags win)");

  // concurrence: one chain, one temperature, a table of pairs
  CLI::App* cc = app.add_subcommand(
      "concurrence", "pairwise concurrences of one chain at one temperature");
  int cc_n = 0;
  std::vector<double> cc_couplings;
  double cc_t = 0.0;
  std::vector<std::string> cc_pairs;
  std::string cc_out_path;
  cc->add_option("--n", cc_n, "chain size (number of qubits)")->required();
  cc->add_option("--couplings", cc_couplings, "site factors J1,...,Jn")
      ->required()
      ->delimiter(',');
  cc->add_option("--temperature,-T", cc_t, "temperature, 0 = ground multiplet (default 0)");
  cc->add_option("--pair", cc_pairs, "site pair i,j (repeatable; default: every pair)");
  cc->add_option("--out", cc_out_path, "write the table to this file instead of stdout");

  // sweep: scenario x J grid x T grid -> CSV
  CLI::App* sw = app.add_subcommand("sweep", "scan a scenario over J and T grids, emit CSV");
  std::string sw_scenario;
  int sw_n = 0, sw_site = 0, sw_steps = 61;
  bool sw_boundary = false;
  double sw_jmin = 0.0, sw_jmax = 3.0;
  std::vector<double> sw_t;
  std::vector<std::string> sw_pairs;
  std::string sw_out_path;
  sw->add_option("--scenario", sw_scenario,
                 "named scenario: fig1, fig2, fig4, fig5, six-qubit");
  sw->add_option("--n", sw_n, "chain size (with --impurity-site or --boundary)");
  sw->add_option("--impurity-site", sw_site, "scan J at this site, other factors 1");
  sw->add_flag("--boundary", sw_boundary, "scan J1 = Jn = J with interior factors 1");
  sw->add_option("--j-min", sw_jmin, "lowest J (default 0)");
  sw->add_option("--j-max", sw_jmax, "highest J (default 3)");
  sw->add_option("--j-steps", sw_steps, "number of J grid points (default 61)");
  sw->add_option("--t", sw_t, "temperature grid, comma-separated (default built-in grid)")
      ->delimiter(',');
  sw->add_option("--pair", sw_pairs, "restrict to pair i,j (repeatable)");
  sw->add_option("--out", sw_out_path, "CSV output path (default stdout)");

  // verify: claim suites with witnesses
  CLI::App* vf = app.add_subcommand("verify", "run claim suites and report pass/fail");
  std::vector<std::string> vf_claims{"all"};
  int vf_n = 0;
  double vf_eps = kTransferEps;
  std::string vf_report_path, vf_table_path;
  vf->add_option("--claims", vf_claims,
                 "claim sets: all, three-qubit, four-qubit, parity, transfer, kernel, "
                 "six-qubit, monotone (comma-separated)")
      ->delimiter(',');
  vf->add_option("--n", vf_n, "restrict the parity suite to one chain size (3..6)");
  vf->add_option("--transfer-eps", vf_eps, "transfer-law tolerance (default 0.05)");
  vf->add_option("--report", vf_report_path, "write a JSON report to this file");
  vf->add_option("--transfer-table", vf_table_path,
                 "write the per-point transfer-law table (with decay columns) to this CSV");

  // optimize: best (J, T) for one pair
  CLI::App* op = app.add_subcommand("optimize", "search for the maximal concurrence of a pair");
  std::string op_scenario, op_pair;
  int op_n = 0, op_site = 0, op_grid = 61;
  bool op_boundary = false;
  double op_jmin = 0.0, op_jmax = 5.0;
  double op_t = 0.0, op_tmin = -1.0, op_tmax = -1.0;
  op->add_option("--scenario", op_scenario, "named scenario (alternative to --n)");
  op->add_option("--n", op_n, "chain size (with --impurity-site or --boundary)");
  op->add_option("--impurity-site", op_site, "impurity site for the J scan");
  op->add_flag("--boundary", op_boundary, "J1 = Jn = J rule");
  op->add_option("--pair", op_pair, "site pair i,j to maximize")->required();
  op->add_option("--j-min", op_jmin, "lower J bound (default 0)");
  op->add_option("--j-max", op_jmax, "upper J bound (default 5)");
  op->add_option("--t", op_t, "fixed temperature (default 0)");
  op->add_option("--t-min", op_tmin, "lower T bound (scan T instead of fixing it)");
  op->add_option("--t-max", op_tmax, "upper T bound");
  op->add_option("--grid-points", op_grid, "coarse grid points per axis (default 61)");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitSuccess : kExitInvalidInput;
  }

  try {
    if (*cc) {
      ChainSpec spec{cc_n, cc_couplings};
      validate(spec);
      if (!std::isfinite(cc_t) || cc_t < 0.0)
        throw InputError("temperature must be finite and >= 0, got " + format_double(cc_t));
      const Matrix rho = thermal_chain_state(spec, Temperature(cc_t));
      std::vector<PairConcurrence> rows;
      if (cc_pairs.empty()) {
        rows = all_pairwise(rho);
      } else {
        for (const auto& [i, j] : cli_detail::parse_pairs(cc_pairs, cc_n))
          rows.push_back({i, j, concurrence(partial_trace_pair(rho, i, j))});
      }
      cli_detail::OutputTarget target(cc_out_path, out);
      cli_detail::print_concurrence_table(rows, target.get());
      target.finish();
      return kExitSuccess;
    }

    if (*sw) {
      Scenario scenario = cli_detail::resolve_scenario(sw_scenario, sw_n, sw_site, sw_boundary);
      if (!sw_pairs.empty()) scenario.pairs = cli_detail::parse_pairs(sw_pairs, scenario.n);
      const std::vector<double> t_grid = sw_t.empty() ? default_t_grid() : sw_t;
      const SweepResult result =
          run_sweep(scenario, linspace(sw_jmin, sw_jmax, sw_steps), t_grid);
      cli_detail::OutputTarget target(sw_out_path, out);
      write_sweep_csv(result, target.get());
      target.finish();
      return kExitSuccess;
    }

    if (*vf) {
      // expand "all", keep first-seen order, drop duplicates
      std::vector<std::string> names;
      for (const std::string& raw : vf_claims) {
        const std::vector<std::string> expanded =
            (raw == "all") ? claim_set_names() : std::vector<std::string>{raw};
        for (const std::string& name : expanded)
          if (std::find(names.begin(), names.end(), name) == names.end())
            names.push_back(name);
      }
      std::vector<ClaimReport> reports;
      for (const std::string& name : names) {
        if (name == "transfer") {
          const TransferLawResult t =
              transfer_law_report(default_j_grid(), default_t_grid(), vf_eps);
          if (!vf_table_path.empty()) {
            cli_detail::OutputTarget target(vf_table_path, out);
            cli_detail::write_transfer_table(t, target.get());
            target.finish();
          }
          reports.push_back(t.report);
        } else {
          const std::vector<ClaimReport> sub = run_claim_set(name, vf_n, vf_eps);
          reports.insert(reports.end(), sub.begin(), sub.end());
        }
      }

      int failed = 0;
      for (const ClaimReport& r : reports) {
        cli_detail::print_claim(r, out);
        if (!r.passed) ++failed;
      }
      out << reports.size() << " claims: " << (reports.size() - failed) << " passed, " << failed
          << " failed\n";

      if (!vf_report_path.empty()) {
        nlohmann::json doc;
        doc["all_passed"] = (failed == 0);
        doc["claims"] = nlohmann::json::array();
        for (const ClaimReport& r : reports) doc["claims"].push_back(cli_detail::claim_to_json(r));
        std::ofstream file(vf_report_path);
        if (!file) throw IoError("cannot open '" + vf_report_path + "' for writing");
        file << doc.dump(2) << '\n';
        if (!file) throw IoError("failed while writing '" + vf_report_path + "'");
      }
      return failed == 0 ? kExitSuccess : kExitClaimFailure;
    }

    if (*op) {
      const Scenario scenario =
          cli_detail::resolve_scenario(op_scenario, op_n, op_site, op_boundary);
      const auto [i, j] = cli_detail::parse_pair(op_pair);
      if (i < 1 || i >= j || j > scenario.n)
        throw InputError("pair (" + std::to_string(i) + ", " + std::to_string(j) +
                         ") needs 1 <= i < j <= n = " + std::to_string(scenario.n));
      const bool t_scan = (op_tmin >= 0.0 || op_tmax >= 0.0);
      if (t_scan && (op_tmin < 0.0 || op_tmax < 0.0))
        throw InputError("--t-min and --t-max must be given together");
      const SearchInterval t_bounds =
          t_scan ? SearchInterval(op_tmin, op_tmax) : SearchInterval::fixed(op_t);
      const OptimizeResult r = maximize_concurrence(scenario, {i, j},
                                                    SearchInterval(op_jmin, op_jmax), t_bounds,
                                                    op_grid);
      out << "scenario = " << scenario.name << '\n';
      out << "pair = (" << i << ", " << j << ")\n";
      out << "J* = " << format_double(r.best_j) << '\n';
      out << "T* = " << format_double(r.best_t) << '\n';
      out << "C* = " << format_double(r.best_value) << '\n';
      out << "evaluations = " << r.evaluations << '\n';
      return kExitSuccess;
    }

    out << app.help();
    return kExitSuccess;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kExitIoError;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumericalError;
  }
}

}  // namespace xxchain
