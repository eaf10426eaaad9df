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

/// \file montecarlo.hpp
/// Monte Carlo estimate of the expected number of real solutions of
/// Q_n(x) = Kx per interval.
///
/// Trial i draws its increments from std::mt19937_64 seeded with
/// splitmix64(seed + splitmix64(i)), so the sample set does not depend on how
/// trials are split between workers. Normals come from the Box-Muller
/// transform of 53-bit uniforms. Per-interval counts are summed as integers,
/// which makes the aggregate exact and order independent.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "crossing/model.hpp"
#include "crossing/sturm.hpp"

namespace crossing {

/// A result that contradicts a mathematical invariant (e.g. more distinct
/// roots than the degree).
class InvariantBreach : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline constexpr int kExactSturmMaxDegree = 60;

enum class CountingMode { ExactSturm, SignScan };

inline const char* to_string(CountingMode m) {
  return m == CountingMode::ExactSturm ? "EXACT_STURM" : "SIGN_SCAN";
}

/// Open interval (a, b); a and b may be infinite.
struct Interval {
  double a = -std::numeric_limits<double>::infinity();
  double b = std::numeric_limits<double>::infinity();
  bool operator==(const Interval&) const = default;
};

inline std::vector<Interval> default_intervals() {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return {{-inf, -1.0}, {-1.0, 0.0}, {0.0, 1.0}, {1.0, inf}};
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Standard normal stream: Box-Muller on a 64-bit Mersenne Twister.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

  /// Stream for trial `index` of a run seeded with `seed`.
  static NormalStream for_trial(std::uint64_t seed, std::uint64_t index) {
    return NormalStream(splitmix64(seed + splitmix64(index)));
  }

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// A_0..A_n with A_j = Delta_0 + ... + Delta_j, Delta_k ~ N(0, sigma_k^2).
inline std::vector<double> sample_coefficients(const CoefficientModel& model, NormalStream& rng) {
  std::vector<double> a(model.degree + 1);
  double acc = 0.0;
  for (int k = 0; k <= model.degree; ++k) {
    acc += model.sigma[k] * rng.next();
    a[k] = acc;
  }
  return a;
}

namespace detail {

inline long double horner(const std::vector<long double>& p, long double x) {
  long double r = 0.0L;
  for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + *it;
  return r;
}

inline int sign_of(long double v) { return (v > 0) - (v < 0); }

/// Sign changes of p on [lo, hi] sampled on a Chebyshev grid, plus two for
/// every local minimum of |p| between equal-sign samples where p changes sign.
inline int scan_piece(const std::vector<long double>& p, long double lo, long double hi) {
  if (!(lo < hi)) return 0;
  std::vector<long double> dp;
  for (std::size_t i = 1; i < p.size(); ++i) dp.push_back(p[i] * static_cast<long double>(i));
  const int m = 8 * static_cast<int>(p.size()) + 32;
  const long double c = (lo + hi) / 2, h = (hi - lo) / 2;
  int changes = 0, last = 0;
  long double last_x = lo;
  for (int j = 0; j <= m; ++j) {
    const long double x =
        j == 0 ? lo : (j == m ? hi : c - h * std::cos(std::numbers::pi_v<long double> * j / m));
    const int s = sign_of(horner(p, x));
    if (s == 0) continue;
    if (last != 0 && s != last) {
      ++changes;
    } else if (last != 0 && !dp.empty()) {
      // |p| falls then rises between the samples: look at its minimum.
      long double l = last_x, r = x;
      if (last * sign_of(horner(dp, l)) < 0 && last * sign_of(horner(dp, r)) > 0) {
        for (int it = 0; it < 60; ++it) {
          const long double mid = (l + r) / 2;
          if (last * sign_of(horner(dp, mid)) < 0) l = mid; else r = mid;
        }
        if (sign_of(horner(p, (l + r) / 2)) == -last) changes += 2;
      }
    }
    last = s;
    last_x = x;
  }
  return changes;
}

}  // namespace detail

/// Sign-change count of p on (a, b): a lower bound on the number of distinct
/// roots. Pieces with |x| > 1 are scanned in u = 1/x on the reversed
/// polynomial, which has the same sign changes.
inline int sign_scan_count(const std::vector<double>& coeffs, double a, double b) {
  std::vector<long double> p(coeffs.begin(), coeffs.end());
  std::vector<long double> rev(p.rbegin(), p.rend());
  auto inv = [](double x) -> long double { return std::isinf(x) ? 0.0L : 1.0L / x; };
  int total = 0;
  if (a < -1.0) total += detail::scan_piece(rev, inv(std::min(b, -1.0)), inv(a));
  if (a < 1.0 && b > -1.0) total += detail::scan_piece(p, std::max(a, -1.0), std::min(b, 1.0));
  if (b > 1.0) total += detail::scan_piece(rev, inv(b), inv(std::max(a, 1.0)));
  return total;
}

/// Distinct real roots of P(x) = Q_n(x) - Kx in the open interval, where
/// Q_n has coefficients `coeffs` (lowest degree first).
inline int count_real_roots(const std::vector<double>& coeffs, double K, const Interval& iv,
                            CountingMode mode) {
  std::vector<double> p = coeffs;
  if (p.size() < 2) p.resize(2, 0.0);
  p[1] -= K;
  if (std::all_of(p.begin(), p.end(), [](double c) { return c == 0.0; })) throw ZeroPolynomial();
  if (mode == CountingMode::ExactSturm) return SturmCounter(p).count(iv.a, iv.b);
  return sign_scan_count(p, iv.a, iv.b);
}

struct SimulationConfig {
  CoefficientModel model = CoefficientModel::brownian(1, 0.0);
  long long trials = 1;
  std::uint64_t seed = 0;
  std::vector<Interval> intervals = default_intervals();
  CountingMode mode = CountingMode::ExactSturm;
  /// Worker count; 0 means CROSSING_LAB_THREADS, else hardware concurrency.
  int threads = 0;

  void validate() const {
    model.validate();
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (intervals.empty()) throw std::invalid_argument("at least one interval is required");
    for (std::size_t i = 0; i < intervals.size(); ++i) {
      if (!(intervals[i].a < intervals[i].b))
        throw std::invalid_argument("interval " + std::to_string(i) + " is empty");
      if (i > 0 && intervals[i].a < intervals[i - 1].b)
        throw std::invalid_argument("intervals must be ordered and disjoint");
    }
    if (mode == CountingMode::ExactSturm && model.degree > kExactSturmMaxDegree)
      throw std::invalid_argument("EXACT_STURM is limited to degree <= " +
                                  std::to_string(kExactSturmMaxDegree));
  }
};

struct SimulationReport {
  std::vector<Interval> intervals;
  std::vector<double> per_interval_mean;
  std::vector<double> per_interval_stderr;
  double total_mean = 0.0;
  double total_stderr = 0.0;
  long long trials = 0;
  std::uint64_t seed = 0;
  CountingMode mode = CountingMode::ExactSturm;
};

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("CROSSING_LAB_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace detail {

struct Tally {
  std::vector<long long> sum, sumsq;  // per interval, then the total last
  explicit Tally(std::size_t k) : sum(k + 1, 0), sumsq(k + 1, 0) {}
};

inline void run_trials(const SimulationConfig& cfg, long long begin, long long end, Tally& out) {
  const auto& iv = cfg.intervals;
  const std::size_t k = iv.size();
  for (long long t = begin; t < end; ++t) {
    auto rng = NormalStream::for_trial(cfg.seed, static_cast<std::uint64_t>(t));
    std::vector<double> p = sample_coefficients(cfg.model, rng);
    p[1] -= cfg.model.slope;
    if (std::all_of(p.begin(), p.end(), [](double c) { return c == 0.0; }))
      throw ZeroPolynomial();
    long long total = 0;
    auto tally = [&](std::size_t i, long long c) {
      out.sum[i] += c;
      out.sumsq[i] += c * c;
      total += c;
    };
    if (cfg.mode == CountingMode::ExactSturm) {
      const SturmCounter sc(p);
      for (std::size_t i = 0; i < k; ++i) {
        long long c = sc.count(iv[i].a, iv[i].b);
        // A root exactly on a shared boundary goes to the interval on its right.
        if (i > 0 && iv[i].a == iv[i - 1].b && sc.is_root(iv[i].a)) ++c;
        tally(i, c);
      }
    } else {
      for (std::size_t i = 0; i < k; ++i) tally(i, sign_scan_count(p, iv[i].a, iv[i].b));
    }
    if (total > cfg.model.degree)
      throw InvariantBreach("trial " + std::to_string(t) + " found " + std::to_string(total) +
                            " distinct roots for degree " + std::to_string(cfg.model.degree));
    out.sum[k] += total;
    out.sumsq[k] += total * total;
  }
}

inline void mean_and_stderr(long long sum, long long sumsq, long long n, double& mean,
                            double& se) {
  mean = static_cast<double>(sum) / static_cast<double>(n);
  if (n < 2) {
    se = 0.0;
    return;
  }
  // n * sum of squares - sum^2 in exact integers.
  const __int128 num = static_cast<__int128>(n) * sumsq - static_cast<__int128>(sum) * sum;
  const long double var = static_cast<long double>(num) /
                          (static_cast<long double>(n) * static_cast<long double>(n - 1));
  se = static_cast<double>(std::sqrt(var / n));
}

}  // namespace detail

/// Runs the configured trials and returns per-interval means and standard
/// errors. The report is bit-identical for any worker count.
inline SimulationReport estimate(const SimulationConfig& cfg) {
  cfg.validate();
  const std::size_t k = cfg.intervals.size();
  const long long workers =
      std::min<long long>(resolve_threads(cfg.threads), std::max<long long>(1, cfg.trials / 64));
  std::vector<detail::Tally> tallies(workers, detail::Tally(k));
  std::vector<std::exception_ptr> errors(workers);
  auto job = [&](long long w) {
    const long long begin = cfg.trials * w / workers;
    const long long end = cfg.trials * (w + 1) / workers;
    try {
      detail::run_trials(cfg, begin, end, tallies[w]);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    job(0);
  } else {
    std::vector<std::thread> pool;
    for (long long w = 0; w < workers; ++w) pool.emplace_back(job, w);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  detail::Tally all(k);
  for (const auto& t : tallies)
    for (std::size_t i = 0; i <= k; ++i) {
      all.sum[i] += t.sum[i];
      all.sumsq[i] += t.sumsq[i];
    }
  SimulationReport r;
  r.intervals = cfg.intervals;
  r.per_interval_mean.resize(k);
  r.per_interval_stderr.resize(k);
  for (std::size_t i = 0; i < k; ++i)
    detail::mean_and_stderr(all.sum[i], all.sumsq[i], cfg.trials, r.per_interval_mean[i],
                            r.per_interval_stderr[i]);
  double unused = 0.0;
  detail::mean_and_stderr(all.sum[k], all.sumsq[k], cfg.trials, unused, r.total_stderr);
  // Summed in interval order so the total equals the displayed parts exactly.
  for (double m : r.per_interval_mean) r.total_mean += m;
  r.trials = cfg.trials;
  r.seed = cfg.seed;
  r.mode = cfg.mode;
  return r;
}

}  // namespace crossing
