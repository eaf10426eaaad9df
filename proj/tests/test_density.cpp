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

#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <gtest/gtest.h>

#include "crossing/density.hpp"

namespace {

using crossing::CoefficientModel;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Kac-Rice for the curve m(x) = Kx, built only from the joint Gaussian law of
// (Q_n(x), Q_n'(x)):  f(x) = int |y - K| p(Kx, y) dy.
double kac_rice_oracle(const CoefficientModel& model, double x) {
  const auto m = crossing::moments(model, x);
  const double K = model.slope;
  const double det = m.a2 * m.b2 - m.c * m.c;
  const double q0 = K * x;
  auto joint = [&](double y) {
    const double quad = (m.b2 * q0 * q0 - 2 * m.c * q0 * y + m.a2 * y * y) / det;
    return std::exp(-0.5 * quad) / (2 * std::numbers::pi * std::sqrt(det));
  };
  // Split at the kink y = K: int_0^inf s (p(K + s) + p(K - s)) ds.
  boost::math::quadrature::exp_sinh<double> integrator;
  auto f = [&](double s) { return s * (joint(K + s) + joint(K - s)); };
  return integrator.integrate(f, 0.0, std::numeric_limits<double>::infinity(), 1e-14);
}

TEST(Erf, Examples) {
  EXPECT_EQ(crossing::erf_eval(0.0), 0.0);
  EXPECT_NEAR(crossing::erf_eval(10.0), 1.0, 1e-12);
  EXPECT_NEAR(crossing::erf_eval(1.0), 0.842700792949715, 1e-12);
  for (double t : {0.1, 0.7, 2.3, 5.0}) EXPECT_EQ(crossing::erf_eval(-t), -crossing::erf_eval(t));
}

TEST(Density, UnitValueAtOrigin) {
  const auto d = crossing::density_at(CoefficientModel::brownian(5, 0.0), 0.0);
  EXPECT_NEAR(d.fn_value, 1.0 / std::numbers::pi, 1e-15);
}

TEST(Density, ZeroSlopeReducesToFirstTerm) {
  for (int n : {1, 4, 25}) {
    const auto model = CoefficientModel::brownian(n, 0.0);
    for (double x : {-3.0, -1.0, -0.4, 0.0, 0.3, 0.99, 1.0, 1.7}) {
      const auto d = crossing::density_at(model, x);
      EXPECT_EQ(d.g2, 0.0);
      EXPECT_EQ(d.g3, 0.0);
      EXPECT_EQ(d.g4, 0.0);
      EXPECT_EQ(d.g5, 0.0);
      EXPECT_EQ(d.fn_value, d.g1);
      if (std::abs(x) <= 1.0) {
        const auto m = crossing::moments(model, x);
        EXPECT_NEAR(d.fn_value, std::sqrt(m.e2) / (std::numbers::pi * m.a2), 1e-14 * d.fn_value);
      }
    }
  }
}

TEST(Density, MatchesBivariateKacRiceOracle) {
  for (int n : {3, 10}) {
    for (double K : {-1.5, 0.0, 2.0}) {
      const auto model = CoefficientModel::brownian(n, K);
      for (double x : {-1.4, -0.8, 0.0, 0.5, 0.95, 1.3}) {
        const double f = crossing::density_at(model, x).fn_value;
        const double oracle = kac_rice_oracle(model, x);
        EXPECT_NEAR(f, oracle, 1e-9 * std::max(1.0, oracle)) << n << " " << K << " " << x;
      }
    }
  }
}

TEST(Density, NonNegativeAndSignCoupling) {
  for (int n : {1, 2, 9, 60, 300}) {
    for (double K : {-7.0, -0.5, 0.0, 1.0, 4.0}) {
      const auto model = CoefficientModel::brownian(n, K);
      for (double x = -5.0; x <= 5.0; x += 0.03125) {
        const auto d = crossing::density_at(model, x);
        EXPECT_GE(d.fn_value, 0.0) << n << " " << K << " " << x;
        EXPECT_GE(d.g3 * d.g5, 0.0);
      }
    }
  }
}

TEST(Density, ContinuousAcrossTheScaledBranch) {
  for (int n : {5, 80, 1000}) {
    const auto model = CoefficientModel::brownian(n, 1.3);
    for (double x : {1.0, -1.0}) {
      const double inside = crossing::detail::density_direct(model, x).fn_value;
      const double outside = crossing::detail::density_scaled(model, 1.0 / x, false).fn_value;
      EXPECT_NEAR(inside, outside, 1e-8 * inside) << n << " " << x;
    }
  }
}

TEST(Density, DegenerateMomentIsReported) {
  // sigma_0 = 0: Q_n(0) = 0 surely, so A^2(0) = 0.
  const auto model = CoefficientModel::brownian_from_first(4, 1.0);
  EXPECT_THROW(crossing::density_at(model, 0.0), crossing::DegenerateMoment);
  EXPECT_THROW(crossing::density_at(model, kInf), std::invalid_argument);
}

TEST(ExpectedCrossings, LineCrossesOnce) {
  for (double K : {-3.0, 0.0, 7.0}) {
    const auto r =
        crossing::expected_crossings(CoefficientModel::brownian(1, K), -kInf, kInf, 1e-8);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.expected, 1.0, 1e-8) << K;
  }
}

TEST(ExpectedCrossings, Additive) {
  const auto model = CoefficientModel::brownian(10, 0.0);
  const double tol = 1e-9;
  const auto whole = crossing::expected_crossings(model, 0.0, kInf, tol);
  const auto left = crossing::expected_crossings(model, 0.0, 1.0, tol);
  const auto right = crossing::expected_crossings(model, 1.0, kInf, tol);
  EXPECT_NEAR(left.expected + right.expected, whole.expected, 2 * tol);

  const auto m2 = CoefficientModel::brownian(23, 1.7);
  const double cuts[] = {-kInf, -4.0, -1.0, -0.97, 0.2, 1.0, 1.01, 9.0, kInf};
  double sum = 0.0, err = 0.0;
  for (std::size_t i = 0; i + 1 < std::size(cuts); ++i) {
    const auto r = crossing::expected_crossings(m2, cuts[i], cuts[i + 1], tol);
    sum += r.expected;
    err += r.abs_error_estimate;
  }
  const auto all = crossing::expected_crossings(m2, -kInf, kInf, tol);
  EXPECT_NEAR(sum, all.expected, err + all.abs_error_estimate + 1e-12);
}

TEST(ExpectedCrossings, GrowsLogarithmically) {
  double prev = 0.0;
  for (int n : {2, 4, 8, 16, 32}) {
    const auto r =
        crossing::expected_crossings(CoefficientModel::brownian(n, 0.0), -kInf, kInf, 1e-9);
    EXPECT_GT(r.expected, prev) << n;
    prev = r.expected;
    if (n == 32) {
      const double formula = (std::log(2.0 * n + 1) + 1.920134478) / std::numbers::pi;
      EXPECT_NEAR(r.expected, formula, 0.15);
    }
  }
}

TEST(ExpectedCrossings, RejectsBadArguments) {
  const auto model = CoefficientModel::brownian(3, 0.0);
  EXPECT_THROW(crossing::expected_crossings(model, 1.0, 1.0, 1e-8), std::invalid_argument);
  EXPECT_THROW(crossing::expected_crossings(model, 0.0, 1.0, 0.0), std::invalid_argument);
}

TEST(ExpectedCrossings, BudgetExhaustionKeepsEstimate) {
  const auto r = crossing::expected_crossings(CoefficientModel::brownian(200, 0.0), -kInf, kInf,
                                              1e-15, 8);
  EXPECT_FALSE(r.converged);
  EXPECT_GT(r.expected, 0.0);
}

}  // namespace
