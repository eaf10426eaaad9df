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

/// \file report_io.hpp
/// JSON and CSV encodings of the report types.
///
/// Finite numbers are written in a round-trip form: both formats read back
/// to the identical double (CSV via std::to_chars, JSON via the library's
/// shortest-digits printer). JSON has no infinities, so +-inf and nan are
/// written as the strings "inf", "-inf" and "nan" and decoded again on read.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "crossing/asymptotics.hpp"
#include "crossing/density.hpp"
#include "crossing/montecarlo.hpp"

namespace crossing {

using Json = nlohmann::ordered_json;

namespace io {

inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline double parse_number(const std::string& s) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw std::invalid_argument("not a number: '" + s + "'");
  return v;
}

inline Json num(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

inline double get_num(const Json& j) {
  if (j.is_string()) return parse_number(j.get<std::string>());
  return j.get<double>();
}

inline const char* parity_name(Parity p) {
  switch (p) {
    case Parity::Odd: return "odd";
    case Parity::Even: return "even";
    case Parity::NotApplicable: return "na";
  }
  return "na";
}

inline Parity parse_parity(const std::string& s) {
  if (s == "odd") return Parity::Odd;
  if (s == "even") return Parity::Even;
  if (s == "na") return Parity::NotApplicable;
  throw std::invalid_argument("unknown parity '" + s + "'");
}

inline Regime parse_regime(const std::string& s) {
  if (s == "n14") return Regime::KSmallQuarter;
  if (s == "n12") return Regime::KSmallHalf;
  throw std::invalid_argument("unknown regime '" + s + "'");
}

inline CountingMode parse_mode(const std::string& s) {
  if (s == "EXACT_STURM") return CountingMode::ExactSturm;
  if (s == "SIGN_SCAN") return CountingMode::SignScan;
  throw std::invalid_argument("unknown counting mode '" + s + "'");
}

}  // namespace io

// nlohmann adapters, found by argument-dependent lookup.

inline void to_json(Json& j, const DensitySample& d) {
  j = Json{{"x", io::num(d.x)},   {"fn_value", io::num(d.fn_value)}, {"g1", io::num(d.g1)},
           {"g2", io::num(d.g2)}, {"g3", io::num(d.g3)},             {"g4", io::num(d.g4)},
           {"g5", io::num(d.g5)}};
}
inline void from_json(const Json& j, DensitySample& d) {
  d.x = io::get_num(j.at("x"));
  d.fn_value = io::get_num(j.at("fn_value"));
  d.g1 = io::get_num(j.at("g1"));
  d.g2 = io::get_num(j.at("g2"));
  d.g3 = io::get_num(j.at("g3"));
  d.g4 = io::get_num(j.at("g4"));
  d.g5 = io::get_num(j.at("g5"));
}

inline void to_json(Json& j, const IntervalCount& c) {
  j = Json{{"a", io::num(c.a)},
           {"b", io::num(c.b)},
           {"expected", io::num(c.expected)},
           {"abs_error_estimate", io::num(c.abs_error_estimate)},
           {"converged", c.converged}};
}
inline void from_json(const Json& j, IntervalCount& c) {
  c.a = io::get_num(j.at("a"));
  c.b = io::get_num(j.at("b"));
  c.expected = io::get_num(j.at("expected"));
  c.abs_error_estimate = io::get_num(j.at("abs_error_estimate"));
  c.converged = j.at("converged").get<bool>();
}

inline void to_json(Json& j, const AsymptoticReport& r) {
  j = Json{{"n", r.n},
           {"K", io::num(r.K)},
           {"regime", to_string(r.regime)},
           {"parity", io::parity_name(r.parity)},
           {"leading_log", io::num(r.leading_log)},
           {"constant_term", io::num(r.constant_term)},
           {"sqrt_correction", io::num(r.sqrt_correction)},
           {"k2_coefficient", io::num(r.k2_coefficient)},
           {"c1", io::num(r.c1)},
           {"c1_term", io::num(r.c1_term)},
           {"total", io::num(r.total)}};
}
inline void from_json(const Json& j, AsymptoticReport& r) {
  r.n = j.at("n").get<int>();
  r.K = io::get_num(j.at("K"));
  r.regime = io::parse_regime(j.at("regime").get<std::string>());
  r.parity = io::parse_parity(j.at("parity").get<std::string>());
  r.leading_log = io::get_num(j.at("leading_log"));
  r.constant_term = io::get_num(j.at("constant_term"));
  r.sqrt_correction = io::get_num(j.at("sqrt_correction"));
  r.k2_coefficient = io::get_num(j.at("k2_coefficient"));
  r.c1 = io::get_num(j.at("c1"));
  r.c1_term = io::get_num(j.at("c1_term"));
  r.total = io::get_num(j.at("total"));
}

inline void to_json(Json& j, const AuditRow& r) {
  j = Json{{"name", r.name},
           {"published", io::num(r.published)},
           {"status", r.status},
           {"computed", io::num(r.computed)},
           {"abs_diff", io::num(r.abs_diff)}};
}
inline void from_json(const Json& j, AuditRow& r) {
  r.name = j.at("name").get<std::string>();
  r.published = io::get_num(j.at("published"));
  r.status = j.at("status").get<std::string>();
  r.computed = io::get_num(j.at("computed"));
  r.abs_diff = io::get_num(j.at("abs_diff"));
}

inline void to_json(Json& j, const SimulationReport& r) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < r.intervals.size(); ++i)
    rows.push_back(Json{{"a", io::num(r.intervals[i].a)},
                        {"b", io::num(r.intervals[i].b)},
                        {"mean", io::num(r.per_interval_mean[i])},
                        {"stderr", io::num(r.per_interval_stderr[i])}});
  j = Json{{"intervals", rows},
           {"total_mean", io::num(r.total_mean)},
           {"total_stderr", io::num(r.total_stderr)},
           {"trials", r.trials},
           {"seed", r.seed},
           {"mode", to_string(r.mode)}};
}
inline void from_json(const Json& j, SimulationReport& r) {
  r.intervals.clear();
  r.per_interval_mean.clear();
  r.per_interval_stderr.clear();
  for (const auto& row : j.at("intervals")) {
    r.intervals.push_back({io::get_num(row.at("a")), io::get_num(row.at("b"))});
    r.per_interval_mean.push_back(io::get_num(row.at("mean")));
    r.per_interval_stderr.push_back(io::get_num(row.at("stderr")));
  }
  r.total_mean = io::get_num(j.at("total_mean"));
  r.total_stderr = io::get_num(j.at("total_stderr"));
  r.trials = j.at("trials").get<long long>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.mode = io::parse_mode(j.at("mode").get<std::string>());
}

/// Quadrature, asymptotic formula and Monte Carlo side by side.
struct ComparisonReport {
  int n = 0;
  double K = 0.0;
  double quadrature_total = 0.0;
  double quadrature_error = 0.0;
  double asymptotic_total = 0.0;
  double mc_mean = 0.0;
  double mc_stderr = 0.0;
  double diff_quadrature_mc = 0.0;
  double diff_quadrature_asymptotic = 0.0;
  double diff_asymptotic_mc = 0.0;
  std::string verdict;
};

inline void to_json(Json& j, const ComparisonReport& r) {
  j = Json{{"n", r.n},
           {"K", io::num(r.K)},
           {"quadrature_total", io::num(r.quadrature_total)},
           {"quadrature_error", io::num(r.quadrature_error)},
           {"asymptotic_total", io::num(r.asymptotic_total)},
           {"mc_mean", io::num(r.mc_mean)},
           {"mc_stderr", io::num(r.mc_stderr)},
           {"diff_quadrature_mc", io::num(r.diff_quadrature_mc)},
           {"diff_quadrature_asymptotic", io::num(r.diff_quadrature_asymptotic)},
           {"diff_asymptotic_mc", io::num(r.diff_asymptotic_mc)},
           {"verdict", r.verdict}};
}
inline void from_json(const Json& j, ComparisonReport& r) {
  r.n = j.at("n").get<int>();
  r.K = io::get_num(j.at("K"));
  r.quadrature_total = io::get_num(j.at("quadrature_total"));
  r.quadrature_error = io::get_num(j.at("quadrature_error"));
  r.asymptotic_total = io::get_num(j.at("asymptotic_total"));
  r.mc_mean = io::get_num(j.at("mc_mean"));
  r.mc_stderr = io::get_num(j.at("mc_stderr"));
  r.diff_quadrature_mc = io::get_num(j.at("diff_quadrature_mc"));
  r.diff_quadrature_asymptotic = io::get_num(j.at("diff_quadrature_asymptotic"));
  r.diff_asymptotic_mc = io::get_num(j.at("diff_asymptotic_mc"));
  r.verdict = j.at("verdict").get<std::string>();
}

// ---------------------------------------------------------------------------
// CSV: one header row, LF line endings, no quoting (no field contains a
// comma).

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void header(const std::vector<std::string>& cols) { row(cols); }

  template <class... Ts>
  void values(const Ts&... vs) {
    std::vector<std::string> cells{cell(vs)...};
    row(cells);
  }

  void blank() { out_ << '\n'; }

 private:
  static std::string cell(double v) { return io::format_number(v); }
  static std::string cell(int v) { return std::to_string(v); }
  static std::string cell(long long v) { return std::to_string(v); }
  static std::string cell(std::uint64_t v) { return std::to_string(v); }
  static std::string cell(bool v) { return v ? "true" : "false"; }
  static std::string cell(const std::string& v) { return v; }
  static std::string cell(const char* v) { return v; }

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << '\n';
  }

  std::ostream& out_;
};

}  // namespace crossing
