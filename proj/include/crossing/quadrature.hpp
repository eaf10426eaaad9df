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

/// \file quadrature.hpp
/// Globally adaptive Gauss-Kronrod (21/10) integration over a list of
/// segments, each with its own integrand. The panel with the largest error
/// estimate is bisected until the summed error meets the tolerance or the
/// panel budget runs out. Nothing depends on evaluation order, so results are
/// reproducible.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace crossing {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t panels = 0;
  bool converged = false;
};

struct QuadratureSegment {
  double lo = 0.0;
  double hi = 0.0;
  std::function<double(double)> f;
};

namespace detail {

struct Panel {
  std::size_t segment;
  double lo, hi;
  double value, error;
};

/// One 21-point Kronrod panel with the embedded 10-point Gauss estimate and
/// the QUADPACK error heuristic.
inline Panel kronrod_panel(const std::function<double(double)>& f, std::size_t seg,
                           double lo, double hi) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 21>;
  static const auto& xk = GK::abscissa();
  static const auto& wk = GK::weights();
  using G = boost::math::quadrature::gauss<double, 10>;
  static const auto& wg = G::weights();

  const double c = 0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);
  // Kronrod abscissae: xk[0] = 0 (odd count), Gauss points sit at odd indices.
  const double fc = f(c);
  double kron = wk[0] * fc;
  double gauss = 0.0;
  std::vector<double> fv(2 * xk.size());
  fv[0] = fv[1] = fc;
  for (std::size_t i = 1; i < xk.size(); ++i) {
    const double f1 = f(c - h * xk[i]);
    const double f2 = f(c + h * xk[i]);
    fv[2 * i] = f1;
    fv[2 * i + 1] = f2;
    kron += wk[i] * (f1 + f2);
    if (i % 2 == 1) gauss += wg[i / 2] * (f1 + f2);
  }
  const double mean = 0.5 * kron;
  double asc = wk[0] * std::abs(fc - mean);
  for (std::size_t i = 1; i < xk.size(); ++i)
    asc += wk[i] * (std::abs(fv[2 * i] - mean) + std::abs(fv[2 * i + 1] - mean));
  asc *= std::abs(h);

  double err = std::abs((kron - gauss) * h);
  if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  const double abs_kron = std::abs(kron * h);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (abs_kron > std::numeric_limits<double>::min() / (50 * eps))
    err = std::max(50 * eps * abs_kron, err);
  return Panel{seg, lo, hi, kron * h, err};
}

}  // namespace detail

/// Integrates sum_i int_{lo_i}^{hi_i} f_i. `tol` is an absolute tolerance on
/// the summed error estimate.
inline QuadratureResult integrate_segments(const std::vector<QuadratureSegment>& segments,
                                           double tol, std::size_t max_panels = 10000) {
  std::vector<detail::Panel> panels;
  panels.reserve(std::min<std::size_t>(max_panels, 4096));
  for (std::size_t s = 0; s < segments.size(); ++s) {
    const auto& seg = segments[s];
    if (seg.hi > seg.lo) panels.push_back(detail::kronrod_panel(seg.f, s, seg.lo, seg.hi));
  }
  auto total_error = [&] {
    double e = 0.0;
    for (const auto& p : panels) e += p.error;
    return e;
  };

  QuadratureResult out;
  double err = total_error();
  while (err > tol && panels.size() < max_panels) {
    // First panel with the maximal error; ties resolved by position.
    auto worst = std::max_element(panels.begin(), panels.end(),
                                  [](const auto& a, const auto& b) { return a.error < b.error; });
    const detail::Panel p = *worst;
    const double mid = 0.5 * (p.lo + p.hi);
    if (!(mid > p.lo && mid < p.hi)) break;  // cannot split further
    const auto& f = segments[p.segment].f;
    *worst = detail::kronrod_panel(f, p.segment, p.lo, mid);
    panels.push_back(detail::kronrod_panel(f, p.segment, mid, p.hi));
    err = total_error();
  }

  std::sort(panels.begin(), panels.end(), [](const auto& a, const auto& b) {
    return a.segment != b.segment ? a.segment < b.segment : a.lo < b.lo;
  });
  for (const auto& p : panels) out.value += p.value;
  out.error = total_error();
  out.panels = panels.size();
  out.converged = out.error <= tol;
  return out;
}

/// Single-integrand convenience with interior breakpoints.
inline QuadratureResult integrate(const std::function<double(double)>& f,
                                  std::vector<double> breakpoints, double tol,
                                  std::size_t max_panels = 10000) {
  std::sort(breakpoints.begin(), breakpoints.end());
  std::vector<QuadratureSegment> segs;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
    segs.push_back({breakpoints[i], breakpoints[i + 1], f});
  return integrate_segments(segs, tol, max_panels);
}

}  // namespace crossing
