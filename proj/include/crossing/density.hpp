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

/// \file density.hpp
/// Expected-crossing density of Q_n(x) = Kx and its integral over intervals.
///
///   f_n(x) = g1 exp(g2) + g3 exp(g4) erf(g5)
///   g1 = E / (pi A^2)                  g2 = -K^2 (A^2 - 2Cx + B^2 x^2) / (2 E^2)
///   g3 = K (A^2 - Cx) / (sqrt(2pi) A^3) g4 = -K^2 x^2 / (2 A^2)
///   g5 = K (A^2 - Cx) / (sqrt(2) A E)
///
/// For |x| > 1 the same expressions are evaluated from the moments of the
/// reversed polynomial at u = 1/x, where every power of x cancels analytically
/// and nothing overflows.

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "crossing/model.hpp"
#include "crossing/quadrature.hpp"

namespace crossing {

/// The Gaussian pair (Q_n(x), Q_n'(x)) is singular at x: A^2 = 0 or E^2 = 0.
class DegenerateMoment : public std::domain_error {
 public:
  explicit DegenerateMoment(double x)
      : std::domain_error("degenerate moments at x = " + std::to_string(x)), x_(x) {}
  double x() const { return x_; }

 private:
  double x_;
};

inline double erf_eval(double t) { return std::erf(t); }

struct DensitySample {
  double x = 0.0;
  double fn_value = 0.0;
  double g1 = 0.0, g2 = 0.0, g3 = 0.0, g4 = 0.0, g5 = 0.0;
};

namespace detail {

inline DensitySample assemble(double x, double g1, double g2, double g3, double g4, double g5) {
  DensitySample d{x, 0.0, g1, g2, g3, g4, g5};
  // g3 and g5 carry the same sign, so the second term is never negative;
  // K = 0 gives g3 = 0 and the first term alone.
  const double second = g3 == 0.0 ? 0.0 : g3 * std::exp(g4) * erf_eval(g5);
  d.fn_value = g1 * std::exp(g2) + second;
  return d;
}

inline DensitySample density_direct(const CoefficientModel& model, double x) {
  using std::numbers::pi;
  const auto dm = direct_moments(model, x);
  const double a2 = dm.m.a2, e2 = dm.m.e2;
  if (!(a2 > 0.0) || !(e2 > 0.0)) throw DegenerateMoment(x);
  const double K = model.slope;
  const double a = std::sqrt(a2), e = std::sqrt(e2);
  const double g1 = e / (pi * a2);
  const double g2 = -K * K * dm.v / (2.0 * e2);
  const double g3 = K * dm.s / (std::sqrt(2.0 * pi) * a2 * a);
  const double g4 = -K * K * x * x / (2.0 * a2);
  const double g5 = K * dm.s / (std::sqrt(2.0) * a * e);
  return assemble(x, g1, g2, g3, g4, g5);
}

/// Terms at x = 1/u in scaled form. `jacobian` multiplies g1 and g3 by
/// 1/u^2 so that the result is the density in u.
inline DensitySample density_scaled(const CoefficientModel& model, double u, bool jacobian) {
  using std::numbers::pi;
  const int n = model.degree;
  const auto sm = scaled_moments(model, u);
  if (!(sm.a2 > 0.0) || !(sm.e2 > 0.0)) throw DegenerateMoment(1.0 / u);
  const double K = model.slope;
  const double au = std::abs(u);
  const double a = std::sqrt(sm.a2), e = std::sqrt(sm.e2);
  const double un2 = std::pow(au, n - 2);  // |u|^{n-2}
  const double g2 = -K * K * (un2 * un2) * sm.v / (2.0 * sm.e2);
  const double g4 = -K * K * std::pow(au, 2 * n - 2) / (2.0 * sm.a2);
  const double g5 = -K * un2 * sm.s / (std::sqrt(2.0) * a * e);
  // In u: g1/u^2 = e/(pi a2),  g3/u^2 = -K |u|^{n-2} s / (sqrt(2pi) a^3).
  double g1 = e / (pi * sm.a2);
  double g3 = -K * un2 * sm.s / (std::sqrt(2.0 * pi) * sm.a2 * a);
  if (!jacobian) {
    g1 *= u * u;
    g3 *= u * u;
  }
  return assemble(1.0 / u, g1, g2, g3, g4, g5);
}

}  // namespace detail

/// Density f_n(x) with its intermediate terms.
/// Throws DegenerateMoment when A^2 = 0 or E^2 = 0 at x.
inline DensitySample density_at(const CoefficientModel& model, double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("density_at: x must be finite");
  if (std::abs(x) <= 1.0) return detail::density_direct(model, x);
  return detail::density_scaled(model, 1.0 / x, false);
}

/// f_n(1/u) / u^2, the density of crossings in the variable u = 1/x.
inline double density_inverted(const CoefficientModel& model, double u) {
  return detail::density_scaled(model, u, true).fn_value;
}

/// Expected number of crossings on (a, b); a and b may be infinite.
struct IntervalCount {
  double a = 0.0;
  double b = 0.0;
  double expected = 0.0;
  double abs_error_estimate = 0.0;
  bool converged = true;
};

/// Integrates f_n over (a, b). The range is cut at -1, 0, 1; pieces inside
/// [-1, 1] are integrated in x, pieces outside in u = 1/x. If the tolerance
/// is not met within the panel budget the best estimate is returned with
/// `converged = false`.
inline IntervalCount expected_crossings(const CoefficientModel& model, double a, double b,
                                        double tol, std::size_t max_panels = 10000) {
  model.validate();
  if (!(a < b)) throw std::invalid_argument("expected_crossings: need a < b");
  if (!(tol > 0.0)) throw std::invalid_argument("expected_crossings: tol must be > 0");
  const double n = model.degree;

  auto fx = [&model](double x) { return density_at(model, x).fn_value; };
  auto fu = [&model](double u) { return density_inverted(model, u); };

  // Cut points; the ones at 1 - 1/n help the adaptive scheme find the
  // shoulder of width 1/n next to x = +-1 faster.
  const double shoulder = 1.0 - 1.0 / (n + 1.0);
  const std::vector<double> xcuts{-shoulder, 0.0, shoulder};

  std::vector<QuadratureSegment> segs;
  auto add_pieces = [&segs](double lo, double hi, const std::vector<double>& cuts,
                            const std::function<double(double)>& f) {
    if (!(lo < hi)) return;
    double left = lo;
    for (double c : cuts) {
      if (c > left && c < hi) {
        segs.push_back({left, c, f});
        left = c;
      }
    }
    segs.push_back({left, hi, f});
  };
  auto inv = [](double x) { return std::isinf(x) ? 0.0 : 1.0 / x; };

  // x in (a, min(b, -1))  <->  u in (1/min(b, -1), 1/a).
  if (a < -1.0) add_pieces(inv(std::min(b, -1.0)), inv(a), {-shoulder}, fu);
  add_pieces(std::max(a, -1.0), std::min(b, 1.0), xcuts, fx);
  // x in (max(a, 1), b)  <->  u in (1/b, 1/max(a, 1)).
  if (b > 1.0) add_pieces(inv(b), inv(std::max(a, 1.0)), {shoulder}, fu);

  const auto q = integrate_segments(segs, tol, max_panels);
  return IntervalCount{a, b, q.value, q.error, q.converged};
}

}  // namespace crossing
