/*
   Copyright 2026 The crossing-lab Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

/// \file cli.hpp
/// The crossing_lab command line: subcommands density, expect, asym,
/// constants, mc and compare. Output is JSON ({meta, data}) or CSV.
///
/// Exit codes: 0 success, 1 usage error, 2 numerical failure (tolerance not
/// reached or degenerate moments), 3 internal invariant breach.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "crossing/asymptotics.hpp"
#include "crossing/density.hpp"
#include "crossing/model.hpp"
#include "crossing/montecarlo.hpp"
#include "crossing/report_io.hpp"

namespace crossing::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kUsage = 1, kNumerical = 2, kInvariant = 3 };

/// A flag value that is well-formed but unusable; the message names the flag.
class UsageError : public std::runtime_error {
 public:
  UsageError(const std::string& flag, const std::string& what)
      : std::runtime_error(flag + ": " + what) {}
};

struct Options {
  std::string format = "json";
  std::string out;
  int n = 1;
  double k = 0.0;
  double sigma0 = 1.0;
  double x_min = -2.0, x_max = 2.0;
  int points = 101;
  std::string a, b;
  double tol = 1e-8;
  std::string regime = "n14";
  std::string parity;
  long long trials = 10000;
  std::uint64_t seed = 0;
  std::string mode = "sturm";
  int threads = 0;
  bool emit_curves = false;
};

struct Output {
  Json data = Json::array();
  std::function<void(CsvWriter&)> csv;
  std::optional<std::uint64_t> seed;
  bool tolerance_missed = false;
};

namespace detail {

inline double parse_endpoint(const std::string& flag, const std::string& s) {
  try {
    return io::parse_number(s == "+inf" ? "inf" : s);
  } catch (const std::invalid_argument&) {
    throw UsageError(flag, "expected a number, inf or -inf, got '" + s + "'");
  }
}

inline CoefficientModel model_from(const Options& o) {
  if (!(o.sigma0 >= 0.0) || !std::isfinite(o.sigma0))
    throw UsageError("--sigma0", "must be finite and >= 0");
  CoefficientModel m = CoefficientModel::brownian(o.n, o.k);
  m.sigma[0] = o.sigma0;
  return m;
}

inline CountingMode mode_from(const Options& o) {
  const CountingMode m = o.mode == "scan" ? CountingMode::SignScan : CountingMode::ExactSturm;
  if (m == CountingMode::ExactSturm && o.n > kExactSturmMaxDegree)
    throw UsageError("--mode", "sturm counting requires --n <= " +
                                   std::to_string(kExactSturmMaxDegree) + "; use --mode scan");
  return m;
}

inline Output cmd_density(const Options& o) {
  if (!(o.x_min < o.x_max)) throw UsageError("--x-max", "must exceed --x-min");
  const auto model = model_from(o);
  std::vector<DensitySample> rows;
  for (int i = 0; i < o.points; ++i) {
    const double x = i == o.points - 1
                         ? o.x_max
                         : o.x_min + (o.x_max - o.x_min) * i / static_cast<double>(o.points - 1);
    rows.push_back(density_at(model, x));
  }
  Output out;
  for (const auto& r : rows) out.data.push_back(r);
  out.csv = [rows](CsvWriter& w) {
    w.header({"x", "fn_value", "g1", "g2", "g3", "g4", "g5"});
    for (const auto& r : rows) w.values(r.x, r.fn_value, r.g1, r.g2, r.g3, r.g4, r.g5);
  };
  return out;
}

inline Output cmd_expect(const Options& o) {
  const auto model = model_from(o);
  if (o.a.empty() != o.b.empty())
    throw UsageError(o.a.empty() ? "--a" : "--b", "--a and --b must be given together");
  std::vector<IntervalCount> rows;
  if (!o.a.empty()) {
    const double a = parse_endpoint("--a", o.a), b = parse_endpoint("--b", o.b);
    if (std::isnan(a) || std::isnan(b) || !(a < b)) throw UsageError("--b", "must exceed --a");
    rows.push_back(expected_crossings(model, a, b, o.tol));
  } else {
    // Each piece gets a quarter of the tolerance so the total meets it.
    IntervalCount total{-std::numeric_limits<double>::infinity(),
                        std::numeric_limits<double>::infinity(), 0.0, 0.0, true};
    for (const auto& iv : default_intervals()) {
      rows.push_back(expected_crossings(model, iv.a, iv.b, o.tol / 4));
      total.expected += rows.back().expected;
      total.abs_error_estimate += rows.back().abs_error_estimate;
      total.converged = total.converged && rows.back().converged;
    }
    rows.push_back(total);
  }
  Output out;
  for (const auto& r : rows) {
    out.data.push_back(r);
    out.tolerance_missed = out.tolerance_missed || !r.converged;
  }
  out.csv = [rows](CsvWriter& w) {
    w.header({"a", "b", "expected", "abs_error_estimate", "converged"});
    for (const auto& r : rows) w.values(r.a, r.b, r.expected, r.abs_error_estimate, r.converged);
  };
  return out;
}

inline Output cmd_asym(const Options& o) {
  const Regime regime = io::parse_regime(o.regime);
  const Parity parity = o.parity.empty() ? Parity::NotApplicable : io::parse_parity(o.parity);
  const auto r = theorem_formula(o.n, o.k, regime, parity);
  Output out;
  out.data.push_back(r);
  out.csv = [r](CsvWriter& w) {
    w.header({"n", "K", "regime", "parity", "leading_log", "constant_term", "sqrt_correction",
              "k2_coefficient", "c1", "c1_term", "total"});
    w.values(r.n, r.K, to_string(r.regime), io::parity_name(r.parity), r.leading_log,
             r.constant_term, r.sqrt_correction, r.k2_coefficient, r.c1, r.c1_term, r.total);
  };
  return out;
}

inline Output cmd_constants(const Options&) {
  const auto rows = constant_audit();
  Output out;
  for (const auto& r : rows) out.data.push_back(r);
  out.csv = [rows](CsvWriter& w) {
    w.header({"name", "published", "status", "computed", "abs_diff"});
    for (const auto& r : rows) w.values(r.name, r.published, r.status, r.computed, r.abs_diff);
  };
  return out;
}

inline SimulationReport run_simulation(const Options& o) {
  SimulationConfig cfg;
  cfg.model = model_from(o);
  cfg.trials = o.trials;
  cfg.seed = o.seed;
  cfg.mode = mode_from(o);
  cfg.threads = o.threads;
  return estimate(cfg);
}

inline void simulation_csv(CsvWriter& w, const SimulationReport& r) {
  w.header({"a", "b", "mean", "stderr", "trials", "seed", "mode"});
  for (std::size_t i = 0; i < r.intervals.size(); ++i)
    w.values(r.intervals[i].a, r.intervals[i].b, r.per_interval_mean[i],
             r.per_interval_stderr[i], r.trials, r.seed, to_string(r.mode));
  w.values(-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
           r.total_mean, r.total_stderr, r.trials, r.seed, to_string(r.mode));
}

inline Output cmd_mc(const Options& o) {
  const auto r = run_simulation(o);
  Output out;
  out.seed = o.seed;
  out.data.push_back(r);
  out.csv = [r](CsvWriter& w) { simulation_csv(w, r); };
  return out;
}

inline Output cmd_compare(const Options& o) {
  const auto model = model_from(o);
  mode_from(o);  // validate before the expensive parts
  const auto quad = expected_crossings(model, -std::numeric_limits<double>::infinity(),
                                       std::numeric_limits<double>::infinity(), o.tol);
  const auto asym = theorem_formula(o.n, o.k, Regime::KSmallQuarter);
  const auto mc = run_simulation(o);

  ComparisonReport r;
  r.n = o.n;
  r.K = o.k;
  r.quadrature_total = quad.expected;
  r.quadrature_error = quad.abs_error_estimate;
  r.asymptotic_total = asym.total;
  r.mc_mean = mc.total_mean;
  r.mc_stderr = mc.total_stderr;
  r.diff_quadrature_mc = std::abs(quad.expected - mc.total_mean);
  r.diff_quadrature_asymptotic = std::abs(quad.expected - asym.total);
  r.diff_asymptotic_mc = std::abs(asym.total - mc.total_mean);
  r.verdict = r.diff_quadrature_mc <= 3.0 * mc.total_stderr ? "within 3σ" : "outside 3σ";

  Output out;
  out.seed = o.seed;
  out.tolerance_missed = !quad.converged;
  out.data.push_back(r);

  std::vector<std::pair<double, double>> density_curve, count_curve;
  if (o.emit_curves) {
    constexpr int kPoints = 241;
    for (int i = 0; i < kPoints; ++i) {
      const double x = -3.0 + 6.0 * i / (kPoints - 1);
      density_curve.emplace_back(x, density_at(model, x).fn_value);
    }
    std::vector<int> degrees;
    for (int m = 1; m < o.n; m *= 2) degrees.push_back(m);
    degrees.push_back(o.n);
    for (int m : degrees) {
      Options om = o;
      om.n = m;
      const auto q = expected_crossings(model_from(om), -std::numeric_limits<double>::infinity(),
                                        std::numeric_limits<double>::infinity(), o.tol);
      out.tolerance_missed = out.tolerance_missed || !q.converged;
      count_curve.emplace_back(m, q.expected);
    }
    auto series = [](const char* name, const char* xs, const char* ys, const auto& pts) {
      Json p = Json::array();
      for (const auto& [x, y] : pts) p.push_back(Json{{xs, io::num(x)}, {ys, io::num(y)}});
      return Json{{"series", name}, {"points", p}};
    };
    out.data.push_back(series("density", "x", "fn_value", density_curve));
    out.data.push_back(series("expected_count", "n", "expected", count_curve));
  }
  out.csv = [r, density_curve, count_curve](CsvWriter& w) {
    w.header({"n", "K", "quadrature_total", "quadrature_error", "asymptotic_total", "mc_mean",
              "mc_stderr", "diff_quadrature_mc", "diff_quadrature_asymptotic",
              "diff_asymptotic_mc", "verdict"});
    w.values(r.n, r.K, r.quadrature_total, r.quadrature_error, r.asymptotic_total, r.mc_mean,
             r.mc_stderr, r.diff_quadrature_mc, r.diff_quadrature_asymptotic,
             r.diff_asymptotic_mc, r.verdict);
    if (!density_curve.empty()) {
      w.blank();
      w.header({"x", "fn_value"});
      for (const auto& [x, y] : density_curve) w.values(x, y);
      w.blank();
      w.header({"n", "expected"});
      for (const auto& [x, y] : count_curve) w.values(static_cast<int>(x), y);
    }
  };
  return out;
}

inline void emit(const Output& o, const std::string& command, const std::string& format,
                 std::ostream& os) {
  if (format == "csv") {
    CsvWriter w(os);
    o.csv(w);
    return;
  }
  Json meta{{"version", kVersion}, {"command", command}};
  meta["seed"] = o.seed ? Json(*o.seed) : Json(nullptr);
  Json doc{{"meta", meta}, {"data", o.data}};
  os << doc.dump(2) << '\n';
}

}  // namespace detail

/// Runs one command line. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Expected real crossings of random polynomials with Brownian coefficients",
               "crossing_lab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  Options o;
  app.add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--out", o.out, "Write output to this file instead of stdout");

  auto add_model = [&o](CLI::App* sc) {
    sc->add_option("--n", o.n, "Polynomial degree")->required()->check(CLI::Range(1, 1 << 20));
    sc->add_option("--k", o.k, "Slope K of the line y = Kx")->capture_default_str();
    sc->add_option("--sigma0", o.sigma0, "Standard deviation of the first increment")
        ->capture_default_str();
  };
  auto add_sim = [&o](CLI::App* sc) {
    sc->add_option("--trials", o.trials, "Monte Carlo trials")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sc->add_option("--seed", o.seed, "Random seed")->capture_default_str();
    sc->add_option("--mode", o.mode, "Root counting: exact Sturm chains or sign scan")
        ->check(CLI::IsMember({"sturm", "scan"}))
        ->capture_default_str();
    sc->add_option("--threads", o.threads, "Worker threads (0: CROSSING_LAB_THREADS or all)")
        ->check(CLI::NonNegativeNumber);
  };

  auto* density = app.add_subcommand("density", "Tabulate the crossing density f_n(x)");
  add_model(density);
  density->add_option("--x-min", o.x_min)->capture_default_str();
  density->add_option("--x-max", o.x_max)->capture_default_str();
  density->add_option("--points", o.points)->check(CLI::Range(2, 10000000))->capture_default_str();

  auto* expect = app.add_subcommand("expect", "Expected crossings by quadrature");
  add_model(expect);
  expect->add_option("--a", o.a, "Left endpoint (number, -inf)");
  expect->add_option("--b", o.b, "Right endpoint (number, inf)");
  expect->add_option("--tol", o.tol)->check(CLI::PositiveNumber)->capture_default_str();

  auto* asym = app.add_subcommand("asym", "Large-n formula with each term itemized");
  asym->add_option("--n", o.n)->required()->check(CLI::Range(1, 1 << 30));
  asym->add_option("--k", o.k)->capture_default_str();
  asym->add_option("--regime", o.regime)
      ->check(CLI::IsMember({"n14", "n12"}))
      ->capture_default_str();
  asym->add_option("--parity", o.parity, "Override the parity of n")
      ->check(CLI::IsMember({"odd", "even"}));

  auto* constants = app.add_subcommand("constants", "Recompute and audit the published constants");

  auto* mc = app.add_subcommand("mc", "Monte Carlo estimate of the expected crossings");
  add_model(mc);
  add_sim(mc);

  auto* compare = app.add_subcommand("compare", "Quadrature, formula and Monte Carlo together");
  add_model(compare);
  add_sim(compare);
  compare->add_option("--tol", o.tol)->check(CLI::PositiveNumber)->capture_default_str();
  compare->add_flag("--emit-curves", o.emit_curves, "Also emit (x, f_n) and (n, EN) series");
  for (auto* sc : {density, expect, asym, constants, mc, compare}) sc->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  const auto* sc = app.get_subcommands().front();
  const std::string command = sc->get_name();
  if (command == "compare") {
    if (sc->count("--trials") == 0) o.trials = 20000;
    if (sc->count("--tol") == 0) o.tol = 1e-7;
  }

  Output result;
  try {
    if (command == "density") result = detail::cmd_density(o);
    else if (command == "expect") result = detail::cmd_expect(o);
    else if (command == "asym") result = detail::cmd_asym(o);
    else if (command == "constants") result = detail::cmd_constants(o);
    else if (command == "mc") result = detail::cmd_mc(o);
    else result = detail::cmd_compare(o);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DegenerateMoment& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const InvariantBreach& e) {
    err << "invariant breach: " << e.what() << '\n';
    return kInvariant;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInvariant;
  }

  if (o.out.empty()) {
    detail::emit(result, command, o.format, out);
  } else {
    std::ofstream f(o.out, std::ios::binary | std::ios::trunc);
    if (!f) {
      err << "error: --out: cannot open '" << o.out << "'\n";
      return kUsage;
    }
    detail::emit(result, command, o.format, f);
  }
  if (result.tolerance_missed) {
    // The report holds the best estimate; the exit code flags it.
    err << "numerical failure: tolerance not reached\n";
    return kNumerical;
  }
  return kOk;
}

}  // namespace crossing::cli
