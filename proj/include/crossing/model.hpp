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

/// \file model.hpp
/// Random polynomial with Brownian coefficients: Q_n(x) = sum_i A_i x^i where
/// A_j = Delta_0 + ... + Delta_j and Delta_k ~ N(0, sigma_k^2) independent.
/// Rewriting in the increments gives Q_n(x) = sum_k a_k(x) Delta_k with
///   a_k(x) = sum_{j=k}^n x^j,   b_k(x) = a_k'(x) = sum_{j=k}^n j x^{j-1}.

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace crossing {

/// Degree n, slope K of the line y = Kx, and the increment standard
/// deviations sigma_0..sigma_n.
struct CoefficientModel {
  int degree = 1;
  double slope = 0.0;
  std::vector<double> sigma;

  /// sigma_k = 1 for k = 0..n (A_j = Delta_0 + ... + Delta_j).
  static CoefficientModel brownian(int n, double K) {
    CoefficientModel m{n, K, std::vector<double>(n >= 0 ? n + 1 : 0, 1.0)};
    m.validate();
    return m;
  }

  /// sigma_0 = 0, sigma_k = 1 for k >= 1 (A_j = Delta_1 + ... + Delta_j).
  /// Q_n(0) = 0 almost surely here, so x = 0 is always a crossing.
  static CoefficientModel brownian_from_first(int n, double K) {
    CoefficientModel m = brownian(n, K);
    m.sigma[0] = 0.0;
    return m;
  }

  void validate() const {
    if (degree < 1) throw std::invalid_argument("degree must be >= 1");
    if (!std::isfinite(slope)) throw std::invalid_argument("slope must be finite");
    if (sigma.size() != static_cast<std::size_t>(degree) + 1)
      throw std::invalid_argument("sigma must have degree+1 entries");
    bool any_positive = false;
    for (double s : sigma) {
      if (!(s >= 0.0) || !std::isfinite(s))
        throw std::invalid_argument("sigma entries must be finite and >= 0");
      any_positive = any_positive || s > 0.0;
    }
    if (!any_positive) throw std::invalid_argument("at least one sigma must be > 0");
  }
};

/// Half-width of the band around x = 1 where the weight functions switch from
/// closed geometric forms to compensated direct summation.
inline constexpr double kWeightSeam = 1e-3;

namespace detail {

/// Neumaier compensated accumulator.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      carry += (sum - t) + v;
    else
      carry += (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

/// 1 - x^m without cancellation when x^m is close to 1.
inline double one_minus_pow(double x, int m) {
  if (x == 0.0) return 1.0;
  if (x > 0.0 || m % 2 == 0) return -std::expm1(m * std::log(std::abs(x)));
  return 1.0 + std::pow(std::abs(x), m);
}

inline void check_index(int k, int n) {
  if (n < 1) throw std::out_of_range("degree must be >= 1");
  if (k < 0 || k > n)
    throw std::out_of_range("weight index " + std::to_string(k) + " outside [0, " +
                            std::to_string(n) + "]");
}

}  // namespace detail

/// a_k(x) by direct compensated summation.
inline double weight_a_direct(int k, double x, int n) {
  detail::check_index(k, n);
  detail::CompensatedSum s;
  double p = std::pow(x, k);
  for (int j = k; j <= n; ++j, p *= x) s.add(p);
  return s.value();
}

/// a_k(x) from x^k (1 - x^{n-k+1}) / (1 - x).
inline double weight_a_closed(int k, double x, int n) {
  detail::check_index(k, n);
  const int m = n - k + 1;
  return std::pow(x, k) * detail::one_minus_pow(x, m) / (1.0 - x);
}

inline double weight_a(int k, double x, int n) {
  return std::abs(x - 1.0) < kWeightSeam ? weight_a_direct(k, x, n)
                                          : weight_a_closed(k, x, n);
}

inline double weight_b_direct(int k, double x, int n) {
  detail::check_index(k, n);
  if (k == 0) k = 1;  // the j = 0 term vanishes
  detail::CompensatedSum s;
  double p = std::pow(x, k - 1);
  for (int j = k; j <= n; ++j, p *= x) s.add(j * p);
  return s.value();
}

/// Derivative of the closed form of a_k: with q = 1 - x^m, y = 1 - x,
///   b_k(x) = x^{k-1} (q (1 + n y) - m y) / y^2,  m = n - k + 1.
inline double weight_b_closed(int k, double x, int n) {
  detail::check_index(k, n);
  if (k == 0) k = 1;
  const int m = n - k + 1;
  const double y = 1.0 - x;
  const double q = detail::one_minus_pow(x, m);
  return std::pow(x, k - 1) * (q * (1.0 + n * y) - m * y) / (y * y);
}

inline double weight_b(int k, double x, int n) {
  return std::abs(x - 1.0) < kWeightSeam ? weight_b_direct(k, x, n)
                                          : weight_b_closed(k, x, n);
}

/// A^2 = Var Q_n(x), B^2 = Var Q_n'(x), C = Cov(Q_n, Q_n'), E^2 = A^2 B^2 - C^2.
struct MomentBundle {
  double x = 0.0;
  double a2 = 0.0;
  double b2 = 0.0;
  double c = 0.0;
  double e2 = 0.0;
};

namespace detail {

/// Gram determinant |u|^2 |v|^2 - (u.v)^2 under weights w. Evaluated as
/// |u|^2 |r|^2 - (u.r)^2 with r = v - (u.v/|u|^2) u, which is the same
/// quantity but keeps the subtraction away from the near-parallel case.
inline long double weighted_gram(const std::vector<long double>& u,
                                 const std::vector<long double>& v,
                                 const std::vector<double>& w,
                                 long double uu, long double uv) {
  if (uu == 0.0L) return 0.0L;
  const long double lambda = uv / uu;
  long double rr = 0.0L, ur = 0.0L;
  for (std::size_t k = 0; k < u.size(); ++k) {
    const long double s2 = static_cast<long double>(w[k]) * w[k];
    const long double r = v[k] - lambda * u[k];
    rr += s2 * r * r;
    ur += s2 * u[k] * r;
  }
  const long double g = uu * rr - ur * ur;
  // Tiny negatives are rounding; anything larger is a genuine error upstream.
  if (g < 0.0L) {
    const long double scale = uu * rr;
    if (-g <= 1e-9L * scale) return 0.0L;
  }
  return g;
}

}  // namespace detail

/// Moment data at x for |x| <= 1 plus the two auxiliary sums the crossing
/// density needs, computed from the same weights:
///   v = A^2 - 2Cx + B^2 x^2 = Var(Q_n - x Q_n'),   s = A^2 - C x.
struct DirectMoments {
  MomentBundle m;
  double v = 0.0;
  double s = 0.0;
};

inline DirectMoments direct_moments(const CoefficientModel& model, double x) {
  const int n = model.degree;
  std::vector<long double> a(n + 1), b(n + 1), d(n + 1);
  // Running sums from the top index down: a_k = a_{k+1} + x^k and
  // d_k = a_k - x b_k = d_{k+1} + (1 - k) x^k, both without cancellation.
  std::vector<long double> pw(n + 1);
  pw[0] = 1.0L;
  for (int j = 1; j <= n; ++j) pw[j] = pw[j - 1] * x;
  long double sa = 0.0L, sb = 0.0L, sd = 0.0L;
  for (int k = n; k >= 0; --k) {
    sa += pw[k];
    if (k >= 1) sb += k * pw[k - 1];
    sd += (1 - k) * pw[k];
    a[k] = sa;
    b[k] = sb;
    d[k] = sd;
  }
  long double a2 = 0.0L, b2 = 0.0L, c = 0.0L, v = 0.0L, s = 0.0L;
  for (int k = 0; k <= n; ++k) {
    const long double s2 = static_cast<long double>(model.sigma[k]) * model.sigma[k];
    a2 += s2 * a[k] * a[k];
    b2 += s2 * b[k] * b[k];
    c += s2 * a[k] * b[k];
    v += s2 * d[k] * d[k];
    s += s2 * a[k] * d[k];
  }
  DirectMoments out;
  out.m.x = x;
  out.m.a2 = static_cast<double>(a2);
  out.m.b2 = static_cast<double>(b2);
  out.m.c = static_cast<double>(c);
  out.m.e2 = static_cast<double>(detail::weighted_gram(a, b, model.sigma, a2, c));
  out.v = static_cast<double>(v);
  out.s = static_cast<double>(s);
  return out;
}

/// A^2, B^2, C, E^2 at x. The sums are accumulated in long double and E^2 is
/// formed from a projected residual, then clamped at 0 within 1e-9 A^2 B^2.
/// Values overflow for |x|^{2n} beyond double range; use the scaled moments
/// for large |x|.
inline MomentBundle moments(const CoefficientModel& model, double x) {
  return direct_moments(model, x).m;
}

/// Moments of the reversed polynomial at u = 1/x (0 < |u| <= 1). With
///   at_k(u) = sum_{i=0}^{n-k} u^i,   at_k'(u),   w_k(u) = sum_{i=0}^{n-k} (n-1-i) u^i
/// one has a_k(x) = x^n at_k(u) and a_k(x) - x b_k(x) = -x^n w_k(u), so
///   A^2 = x^{2n} a2,  E^2 = x^{4n-4} e2,  A^2 - 2Cx + B^2x^2 = x^{2n} v,
///   A^2 - Cx = -x^{2n} s.
struct ScaledMoments {
  double u = 0.0;
  double a2 = 0.0;
  double e2 = 0.0;
  double v = 0.0;
  double s = 0.0;
};

inline ScaledMoments scaled_moments(const CoefficientModel& model, double u) {
  const int n = model.degree;
  std::vector<long double> at(n + 1), dt(n + 1);
  long double alpha = 0.0L, beta = 0.0L, gamma = 0.0L;
  long double a2 = 0.0L, v = 0.0L, s = 0.0L, ad = 0.0L;
  long double p = 1.0L;      // u^i
  long double pm1 = 0.0L;    // u^{i-1}
  for (int i = 0; i <= n; ++i) {
    alpha += p;
    if (i >= 1) beta += i * pm1;
    gamma += (n - 1 - i) * p;
    const int k = n - i;
    const long double s2 = static_cast<long double>(model.sigma[k]) * model.sigma[k];
    at[k] = alpha;
    dt[k] = beta;
    a2 += s2 * alpha * alpha;
    ad += s2 * alpha * beta;
    v += s2 * gamma * gamma;
    s += s2 * alpha * gamma;
    pm1 = p;
    p *= u;
  }
  ScaledMoments out;
  out.u = u;
  out.a2 = static_cast<double>(a2);
  out.e2 = static_cast<double>(detail::weighted_gram(at, dt, model.sigma, a2, ad));
  out.v = static_cast<double>(v);
  out.s = static_cast<double>(s);
  return out;
}

}  // namespace crossing
