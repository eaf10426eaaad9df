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

/// \file sturm.hpp
/// Distinct real roots of a polynomial with double coefficients, counted
/// exactly. The doubles are scaled by a common power of two to integers,
/// and the Sturm chain is built as a primitive pseudo-remainder sequence
/// over the integers with the signs fixed up so that it is a genuine Sturm
/// sequence.

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace crossing {

/// All coefficients are zero.
class ZeroPolynomial : public std::invalid_argument {
 public:
  ZeroPolynomial() : std::invalid_argument("polynomial has no nonzero coefficient") {}
};

namespace sturm {

/// Integer polynomial, lowest degree first, no trailing zeros (the zero
/// polynomial is empty).
using ZPoly = std::vector<mpz_class>;

inline void trim(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int degree(const ZPoly& p) { return static_cast<int>(p.size()) - 1; }

/// Exact conversion: coefficient c_i = m_i 2^{e_i} with integer m_i, scaled
/// by 2^{-min e_i}.
inline ZPoly from_doubles(const std::vector<double>& c) {
  constexpr int kMantBits = std::numeric_limits<double>::digits;
  int min_exp = std::numeric_limits<int>::max();
  std::vector<std::pair<long long, int>> parts(c.size(), {0, 0});
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!std::isfinite(c[i])) throw std::invalid_argument("non-finite polynomial coefficient");
    if (c[i] == 0.0) continue;
    int e = 0;
    const double f = std::frexp(c[i], &e);  // c = f 2^e, 0.5 <= |f| < 1
    parts[i] = {static_cast<long long>(std::ldexp(f, kMantBits)), e - kMantBits};
    min_exp = std::min(min_exp, e - kMantBits);
  }
  ZPoly p(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (parts[i].first == 0) continue;
    mpz_class m(static_cast<long>(parts[i].first));
    mpz_mul_2exp(m.get_mpz_t(), m.get_mpz_t(), static_cast<mp_bitcnt_t>(parts[i].second - min_exp));
    p[i] = m;
  }
  trim(p);
  return p;
}

inline ZPoly derivative(const ZPoly& p) {
  ZPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<unsigned long>(i));
  trim(d);
  return d;
}

/// Divides out the gcd of the coefficients, keeping the sign.
inline void make_primitive(ZPoly& p) {
  mpz_class g = 0;
  for (const auto& c : p) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) return;
  }
  if (g > 1)
    for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

/// Pseudo-remainder lc(b)^s a mod b. Returns the remainder and s, the number
/// of elimination steps actually taken.
inline std::pair<ZPoly, int> pseudo_remainder(ZPoly a, const ZPoly& b) {
  const int db = degree(b);
  const mpz_class& lb = b.back();
  int steps = 0;
  while (!a.empty() && degree(a) >= db) {
    const mpz_class la = a.back();
    const int shift = degree(a) - db;
    for (auto& c : a) c *= lb;
    for (int i = 0; i <= db; ++i) a[i + shift] -= la * b[i];
    ++steps;
    trim(a);
  }
  return {std::move(a), steps};
}

/// Sturm chain p0 = p, p1 = p', p_{i+1} = -c (p_{i-1} mod p_i) with c > 0.
inline std::vector<ZPoly> chain(const ZPoly& p) {
  std::vector<ZPoly> seq{p};
  ZPoly d = derivative(p);
  if (d.empty()) return seq;
  make_primitive(d);
  seq.push_back(std::move(d));
  while (true) {
    const ZPoly& a = seq[seq.size() - 2];
    const ZPoly& b = seq.back();
    auto [r, steps] = pseudo_remainder(a, b);
    if (r.empty()) break;
    const bool flip = b.back() < 0 && steps % 2 == 1;
    make_primitive(r);
    if (!flip)
      for (auto& c : r) c = -c;
    seq.push_back(std::move(r));
    if (degree(seq.back()) == 0) break;
  }
  return seq;
}

/// Exact quotient a / b over Q when b divides a, scaled to a primitive
/// integer polynomial with the sign of lc(a) lc(b).
inline ZPoly exact_quotient(const ZPoly& a, const ZPoly& b) {
  std::vector<mpq_class> r(a.begin(), a.end());
  const int db = degree(b);
  std::vector<mpq_class> q(a.size() - b.size() + 1);
  for (int i = degree(a); i >= db; --i) {
    const mpq_class f = r[i] / b.back();
    q[i - db] = f;
    for (int j = 0; j <= db; ++j) r[i - db + j] -= f * b[j];
  }
  mpz_class den = 1;
  for (const auto& c : q) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  ZPoly out;
  for (const auto& c : q) out.push_back(mpz_class(c * den));
  trim(out);
  make_primitive(out);
  return out;
}

inline int sign(const mpz_class& v) { return sgn(v); }

/// Sign of p at a finite rational point.
inline int sign_at(const ZPoly& p, const mpq_class& x) {
  mpq_class acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return sgn(acc);
}

/// Sign of p at +infinity (dir = +1) or -infinity (dir = -1).
inline int sign_at_infinity(const ZPoly& p, int dir) {
  const int s = sign(p.back());
  return (dir < 0 && degree(p) % 2 == 1) ? -s : s;
}

inline int variations(const std::vector<int>& signs) {
  int v = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

}  // namespace sturm

/// Sturm chain of the square-free part of a polynomial, ready for repeated
/// root counts on different intervals.
class SturmCounter {
 public:
  /// `coeffs` lowest degree first.
  explicit SturmCounter(const std::vector<double>& coeffs) {
    sturm::ZPoly p = sturm::from_doubles(coeffs);
    if (p.empty()) throw ZeroPolynomial();
    sturm::make_primitive(p);
    chain_ = sturm::chain(p);
    // The last element is the gcd of p and p' up to a constant.
    if (chain_.size() > 1 && sturm::degree(chain_.back()) > 0) {
      p = sturm::exact_quotient(p, chain_.back());
      chain_ = sturm::chain(p);
    }
  }

  /// Degree of the square-free part.
  int degree() const { return sturm::degree(chain_.front()); }

  /// Sign variations at x; x may be +-infinity.
  int variations_at(double x) const {
    std::vector<int> s;
    s.reserve(chain_.size());
    if (std::isinf(x)) {
      for (const auto& q : chain_) s.push_back(sturm::sign_at_infinity(q, x > 0 ? 1 : -1));
    } else {
      const mpq_class xq(x);
      for (const auto& q : chain_) s.push_back(sturm::sign_at(q, xq));
    }
    return sturm::variations(s);
  }

  /// True when x is a root (always false at infinity).
  bool is_root(double x) const {
    if (std::isinf(x)) return false;
    return sturm::sign_at(chain_.front(), mpq_class(x)) == 0;
  }

  /// Distinct real roots in the open interval (a, b).
  int count(double a, double b) const {
    if (!(a < b)) return 0;
    return variations_at(a) - variations_at(b) - (is_root(b) ? 1 : 0);
  }

 private:
  std::vector<sturm::ZPoly> chain_;
};

}  // namespace crossing
