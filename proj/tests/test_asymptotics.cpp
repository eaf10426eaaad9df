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

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <gtest/gtest.h>

#include "crossing/asymptotics.hpp"
#include "crossing/density.hpp"

namespace {

using crossing::ExpansionFamily;
using crossing::IntegralCombo;
using crossing::Parity;
using F = ExpansionFamily;
namespace ex = crossing::expansion;
using ex::Wide;

constexpr Parity kNA = Parity::NotApplicable;

const F kAllFamilies[] = {F::R1,       F::S1,       F::R2,       F::S2,       F::R3,
                          F::S3,       F::R4,       F::S4,       F::G21Outer, F::G31Outer,
                          F::G51Outer, F::G21Inner, F::G31Inner, F::G51Inner};

Parity parity_for(F f) { return crossing::parity_dependent(f) ? Parity::Odd : kNA; }

TEST(Expansion, Examples) {
  const double r1 = crossing::eval_expansion(F::R1, 50.0);
  // The leading form carries an O(t^-2) error, about 8.5e-3 relative here.
  EXPECT_NEAR(r1, 0.5 / std::pow(50.0, 1.5), 1.0 / (50.0 * 50.0));
  EXPECT_NEAR(crossing::eval_expansion(F::S3, 40.0), 0.75, 1e-6);
  EXPECT_NEAR(crossing::eval_expansion(F::R2, 1.0),
              static_cast<double>(ex::r2(ex::Wider(1))), 1e-10 * crossing::eval_expansion(F::R2, 1.0));
  const double g51 = crossing::eval_expansion(F::G51Inner, 30.0);
  EXPECT_NEAR(g51, -2 * std::sqrt(30.0), 1e-5 * 2 * std::sqrt(30.0));
}

TEST(Expansion, ArgumentChecks) {
  EXPECT_THROW(crossing::eval_expansion(F::R1, 0.0), std::domain_error);
  EXPECT_THROW(crossing::eval_expansion(F::R1, -1.0), std::domain_error);
  EXPECT_THROW(crossing::eval_expansion(F::S2, 1.0), std::invalid_argument);
  EXPECT_THROW(crossing::eval_expansion(F::R1, 1.0, Parity::Odd), std::invalid_argument);
  EXPECT_NO_THROW(crossing::eval_expansion(F::S4, 1.0, Parity::Even));
}

TEST(Expansion, FiniteForSmallT) {
  for (F f : kAllFamilies) {
    for (double t = 1e-8; t <= 1e-2; t *= 1.7) {
      const double v = crossing::eval_expansion(f, t, parity_for(f));
      EXPECT_TRUE(std::isfinite(v)) << crossing::to_string(f) << " " << t;
    }
  }
}

TEST(Expansion, BranchesAgreeAtTheSeam) {
  const double t = crossing::kSmallTSeam;
  for (F f : kAllFamilies) {
    for (Parity p : {Parity::Odd, Parity::Even}) {
      const Parity q = crossing::parity_dependent(f) ? p : kNA;
      const double lo = crossing::eval_expansion_wide(f, t, q);
      const double hi = crossing::eval_expansion_double(f, t, q);
      EXPECT_NEAR(lo, hi, 1e-8 * std::abs(lo)) << crossing::to_string(f);
    }
  }
}

TEST(Expansion, DoubleBranchIsAccurateAboveSeam) {
  for (F f : kAllFamilies) {
    for (double t : {1.0, 1.5, 3.0, 10.0, 45.0}) {
      const double w = crossing::eval_expansion_wide(f, t, parity_for(f));
      const double d = crossing::eval_expansion_double(f, t, parity_for(f));
      EXPECT_NEAR(d, w, 1e-9 * std::abs(w) + 1e-300) << crossing::to_string(f) << " " << t;
    }
  }
}

TEST(Expansion, LargeTDoesNotOverflow) {
  for (F f : kAllFamilies) {
    for (double t : {120.0, 400.0, 1e4, 1e8, 1e40, 1e200, 1e300}) {
      const double v = crossing::eval_expansion(f, t, parity_for(f));
      EXPECT_TRUE(std::isfinite(v)) << crossing::to_string(f) << " " << t;
    }
  }
}

TEST(Expansion, MirrorIdentities) {
  for (double t : {0.05, 0.3, 1.0, 2.5, 7.0}) {
    const Wide w(t);
    auto rel = [](const Wide& a, const Wide& b) {
      return static_cast<double>(abs(a - b) / abs(b));
    };
    EXPECT_LT(rel(ex::r3(w), ex::r1(Wide(-w))), 1e-10) << t;
    EXPECT_LT(rel(ex::r4(w), ex::r2(Wide(-w))), 1e-10) << t;
    // S32(t) = S12(-t)
    const Wide d3 = ex::exp_sum<Wide>(w, ex::kD3, 0);
    const Wide s32 = d3 * d3 * sqrt(ex::exp_sum<Wide>(w, ex::kN3, 0));
    const Wide d1 = ex::exp_sum<Wide>(-w, ex::kD1, 0);
    const Wide s12m = d1 * d1 * sqrt(ex::exp_sum<Wide>(-w, ex::kN1, 0));
    EXPECT_LT(rel(s32, s12m), 1e-10);
    // S42(t) = S22(-t), S43(t) = S23(-t)
    EXPECT_LT(rel(ex::exp_sum<Wide>(w, ex::kS42, 0), ex::exp_sum<Wide>(-w, ex::kS22, 0)), 1e-10);
    const Wide g4 = ex::exp_sum<Wide>(w, ex::kG4, 0);
    const Wide g2m = ex::exp_sum<Wide>(-w, ex::kG2, 0);
    EXPECT_LT(rel(sqrt(ex::exp_sum<Wide>(w, ex::kN4, 0)) * g4 * g4,
                  sqrt(ex::exp_sum<Wide>(-w, ex::kN2, 0)) * g2m * g2m),
              1e-10);
  }
}

TEST(Expansion, ParityFlip) {
  for (double t : {0.2, 1.0, 3.0, 12.0}) {
    const Wide w(t);
    const Wide g = ex::exp_sum<Wide>(w, ex::kG2, 2);
    const Wide s22 = ex::exp_sum<Wide>(w, ex::kS22, 6);
    const Wide s23 = sqrt(ex::exp_sum<Wide>(w, ex::kN2, 4)) * g * g;
    const double expected = static_cast<double>(-s22 / (2 * s23));
    const double diff = crossing::eval_expansion(F::S2, t, Parity::Odd) -
                        crossing::eval_expansion(F::S2, t, Parity::Even);
    EXPECT_NEAR(diff, expected, 1e-12 * std::max(1.0, std::abs(expected))) << t;
  }
}

TEST(Expansion, TailFormsWithinStatedOrder) {
  for (F f : kAllFamilies) {
    auto gap = [f](double t) {
      return std::abs(crossing::eval_expansion(f, t, parity_for(f)) - crossing::tail_form(f, t));
    };
    const double c = gap(20.0) / crossing::tail_error_order(f, 20.0);
    EXPECT_LE(gap(40.0), 1.5 * c * crossing::tail_error_order(f, 40.0) + 1e-300)
        << crossing::to_string(f);
  }
}

// The expansions describe pi f_n(x) / n at x = 1 + t/n, -1 - t/n,
// 1 - t/(n+t) and -1 + t/(n+t) as R(t) + S(t)/n + O(n^-2) (K = 0). The
// 1/n coefficient is extracted from the finite-n density with one
// Richardson step and compared with S.
double extract_s(F r_family, int n, double t, Parity parity) {
  auto point = [&](int m) {
    switch (r_family) {
      case F::R1: return 1.0 + t / m;
      case F::R2: return -1.0 - t / m;
      case F::R3: return 1.0 - t / (m + t);
      default: return -1.0 + t / (m + t);
    }
  };
  const double r = crossing::eval_expansion(r_family, t);
  auto d = [&](int m) {
    const double f = crossing::density_at(crossing::CoefficientModel::brownian(m, 0.0), point(m)).fn_value;
    return m * (std::numbers::pi * f / m - r);
  };
  const int n2 = parity == Parity::Odd ? 2 * n - 1 : 2 * n;
  // d(m) = S + c/m: eliminate c using m = n and m = n2.
  return (n2 * d(n2) - n * d(n)) / (n2 - n);
}

TEST(Expansion, LeadingTermsMatchFiniteDegreeDensity) {
  const int n = 4000;
  for (double t : {0.3, 1.0, 4.0}) {
    for (auto [rf, pt] : {std::pair{F::R1, 1.0 + t / n}, std::pair{F::R2, -1.0 - t / n},
                          std::pair{F::R3, 1.0 - t / (n + t)}, std::pair{F::R4, -1.0 + t / (n + t)}}) {
      const double f = crossing::density_at(crossing::CoefficientModel::brownian(n, 0.0), pt).fn_value;
      const double r = crossing::eval_expansion(rf, t);
      EXPECT_NEAR(std::numbers::pi * f / n, r, 5.0 / n * std::max(1.0, r)) << crossing::to_string(rf) << " " << t;
    }
  }
}

TEST(Expansion, CorrectionTermsMatchFiniteDegreeDensity) {
  for (double t : {0.3, 0.7, 2.0, 5.0}) {
    EXPECT_NEAR(extract_s(F::R1, 800, t, Parity::Even), crossing::eval_expansion(F::S1, t), 2e-3) << t;
    EXPECT_NEAR(extract_s(F::R3, 800, t, Parity::Even), crossing::eval_expansion(F::S3, t), 2e-3) << t;
    for (Parity p : {Parity::Odd, Parity::Even}) {
      const int n = p == Parity::Odd ? 801 : 800;
      EXPECT_NEAR(extract_s(F::R2, n, t, p), crossing::eval_expansion(F::S2, t, p), 2e-3) << t;
      EXPECT_NEAR(extract_s(F::R4, n, t, p), crossing::eval_expansion(F::S4, t, p), 2e-3) << t;
    }
  }
}

// g-terms: with slope K the density's g2, g3, g5 scale as K^2/n g21,
// K/sqrt(n pi) g31 (after the Jacobian) and K/sqrt(n) g51. The finite-n
// error is O(1/n), so values at n and 2n are Richardson-extrapolated.
TEST(Expansion, SlopeTermsMatchFiniteDegreeDensity) {
  const double K = 0.5;
  auto scaled = [K](int n, double t, bool outer) {
    const auto model = crossing::CoefficientModel::brownian(n, K);
    const double x = outer ? -1.0 - t / n : -1.0 + t / (n + t);
    const double jac = outer ? 1.0 / n : n / ((n + t) * (n + t));
    const auto d = crossing::density_at(model, x);
    return std::array<double, 3>{d.g2 * n / (K * K),
                                 d.g3 * jac * std::sqrt(n * std::numbers::pi) / K,
                                 d.g5 * std::sqrt(n) / K};
  };
  auto extrapolated = [&](double t, bool outer) {
    const auto a = scaled(20000, t, outer);
    const auto b = scaled(40000, t, outer);
    return std::array<double, 3>{2 * b[0] - a[0], 2 * b[1] - a[1], 2 * b[2] - a[2]};
  };
  for (double t : {0.4, 1.0, 3.0}) {
    const auto o = extrapolated(t, true);
    EXPECT_NEAR(o[0], crossing::eval_expansion(F::G21Outer, t), 1e-4) << t;
    EXPECT_NEAR(o[1], crossing::eval_expansion(F::G31Outer, t), 1e-4) << t;
    EXPECT_NEAR(o[2], crossing::eval_expansion(F::G51Outer, t), 1e-4) << t;
    const auto i = extrapolated(t, false);
    EXPECT_NEAR(i[0], crossing::eval_expansion(F::G21Inner, t), 1e-4) << t;
    EXPECT_NEAR(i[1], crossing::eval_expansion(F::G31Inner, t), 1e-4) << t;
    EXPECT_NEAR(i[2], crossing::eval_expansion(F::G51Inner, t), 1e-4) << t;
  }
}

// Same integrands, independent quadrature: tanh-sinh on panels [0, 1],
// [1, 10], ... up to T, with the indicator kink at t = 1 as a panel edge and
// no tail subtraction. Remainders that decay like c t^{-3/2} run to T = 1e12
// and add 2 f(T) T for the rest. The others decay exponentially but cancel
// O(1) terms, so they stop at T = 200 before roundoff accumulates.
double oracle_integral(IntegralCombo c, Parity p) {
  auto f = [c, p](double t) { return crossing::combo_integrand(c, t, p); };
  const bool power_law = c == IntegralCombo::R1 || c == IntegralCombo::R2 ||
                         c == IntegralCombo::S1Reg || c == IntegralCombo::S2Reg;
  const double T = power_law ? 1e12 : 200.0;
  boost::math::quadrature::tanh_sinh<double> ts;
  double sum = ts.integrate(f, 0.0, 1.0, 1e-13);
  for (double lo = 1.0; lo < T; lo *= 10.0) sum += ts.integrate(f, lo, std::min(lo * 10.0, T), 1e-13);
  return sum + (power_law ? 2.0 * f(T) * T : 0.0);
}

TEST(RegularizedIntegral, AgreesWithIndependentQuadrature) {
  const std::pair<IntegralCombo, Parity> cases[] = {
      {IntegralCombo::R1, kNA},          {IntegralCombo::S1Reg, kNA},
      {IntegralCombo::R2, kNA},          {IntegralCombo::S2Reg, Parity::Odd},
      {IntegralCombo::S2Reg, Parity::Even}, {IntegralCombo::R3Reg, kNA},
      {IntegralCombo::S3Combo, kNA},     {IntegralCombo::R4Reg, kNA},
      {IntegralCombo::S4Combo, Parity::Odd}, {IntegralCombo::S4Combo, Parity::Even},
      {IntegralCombo::K2Outer, kNA},     {IntegralCombo::K2Inner, kNA}};
  for (auto [c, p] : cases) {
    const auto r = crossing::regularized_integral(c, p);
    EXPECT_TRUE(r.converged) << crossing::to_string(c);
    EXPECT_LE(r.error, 1e-7);
    EXPECT_NEAR(r.value, oracle_integral(c, p), 1e-7) << crossing::to_string(c);
  }
}

TEST(RegularizedIntegral, RequiresParityForParityCombos) {
  EXPECT_THROW(crossing::regularized_integral(IntegralCombo::S2Reg), std::invalid_argument);
  EXPECT_THROW(crossing::regularized_integral(IntegralCombo::S4Combo), std::invalid_argument);
}

TEST(TheoremFormula, Examples) {
  using crossing::Regime;
  const auto a = crossing::theorem_formula(1000, 0.0, Regime::KSmallHalf);
  EXPECT_NEAR(a.total, (std::log(2001.0) + 1.920134478) / std::numbers::pi, 1e-14);

  const int n = 500;
  const auto even = crossing::theorem_formula(n, 0.0, Regime::KSmallQuarter);
  const auto odd = crossing::theorem_formula(n, 0.0, Regime::KSmallQuarter, Parity::Odd);
  EXPECT_NEAR(odd.total - even.total, (1.715215531 + 0.7200279388) / (n * std::numbers::pi),
              1e-14);
  const auto next = crossing::theorem_formula(n + 1, 0.0, Regime::KSmallQuarter);
  EXPECT_EQ(next.parity, Parity::Odd);
  EXPECT_EQ(next.c1, 1.715215531);

  double prev = 1.0;
  for (int m : {100, 10000, 1000000}) {
    const double gap = std::abs(crossing::theorem_formula(m, 1.0, Regime::KSmallQuarter).total -
                                crossing::theorem_formula(m, 1.0, Regime::KSmallHalf).total);
    EXPECT_LT(gap, prev);
    prev = gap;
  }
  EXPECT_LT(prev, 1e-3);
}

TEST(TheoremFormula, TotalIsSumOfParts) {
  const auto r = crossing::theorem_formula(37, 0.8, crossing::Regime::KSmallQuarter);
  EXPECT_EQ(r.total,
            r.leading_log + r.constant_term + r.sqrt_correction + r.k2_coefficient + r.c1_term);
  EXPECT_NEAR(r.c1_term, r.c1 / (37 * std::numbers::pi), 1e-16);
  EXPECT_THROW(crossing::theorem_formula(0, 0.0, crossing::Regime::KSmallHalf),
               std::invalid_argument);
}

TEST(ConstantAudit, CrossFootingAndResidualRows) {
  const auto rows = crossing::constant_audit();
  ASSERT_EQ(rows.size(), 18u);
  auto find = [&rows](const std::string& name) {
    for (const auto& r : rows)
      if (r.name == name) return r;
    throw std::runtime_error("missing row " + name);
  };
  EXPECT_EQ(find("R_SUM").status, "pass");
  EXPECT_EQ(find("K2_SUM").status, "pass");
  EXPECT_EQ(find("C1_ODD_COMPUTED").status, "residual");
  // The four printed S constants assemble to 1.7106..., not the printed C_1.
  EXPECT_NEAR(find("C1_ODD_FROM_PUBLISHED").computed, 1.710614127, 1e-9);
  EXPECT_NEAR(find("C1_ODD_FROM_PUBLISHED").abs_diff, 4.6014e-3, 1e-6);
  for (const auto& r : rows) EXPECT_NEAR(r.abs_diff, std::abs(r.computed - r.published), 1e-15);
}

}  // namespace
