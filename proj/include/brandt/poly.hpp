#pragma once
// Exact univariate polynomial arithmetic over Q with the real-root toolkit:
// Sturm chains, root counting over intervals, isolation of simple roots, and
// rational bisection refinement.  Everything is exact; no floating point.

#include "brandt/matrix.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace brandt {

// coefficients low to high, no trailing zeros; the zero polynomial is empty
using Poly = std::vector<Rat>;

inline void poly_trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int poly_deg(const Poly& p) { return static_cast<int>(p.size()) - 1; }

inline Poly poly_add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), Rat(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  poly_trim(r);
  return r;
}

inline Poly poly_sub(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), Rat(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  poly_trim(r);
  return r;
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  poly_trim(r);
  return r;
}

inline Poly poly_scale(const Poly& a, const Rat& c) {
  if (c == 0) return {};
  Poly r = a;
  for (Rat& x : r) x *= c;
  return r;
}

inline Rat poly_eval(const Poly& p, const Rat& x) {
  Rat v(0);
  for (size_t i = p.size(); i-- > 0;) v = v * x + p[i];
  return v;
}

inline Poly poly_derivative(const Poly& p) {
  if (p.size() <= 1) return {};
  Poly r(p.size() - 1);
  for (size_t i = 1; i < p.size(); ++i) r[i - 1] = p[i] * Rat(static_cast<long>(i));
  return r;
}

inline std::pair<Poly, Poly> poly_divrem(const Poly& a, const Poly& b) {
  check(!b.empty(), "polynomial division by zero");
  Poly rem = a, quot;
  int db = poly_deg(b);
  if (poly_deg(a) >= db) quot.assign(a.size() - b.size() + 1, Rat(0));
  while (poly_deg(rem) >= db) {
    int k = poly_deg(rem) - db;
    Rat c = rem.back() / b.back();
    quot[k] = c;
    for (int i = 0; i <= db; ++i) rem[k + i] -= c * b[i];
    rem.pop_back();  // leading term cancels exactly
    poly_trim(rem);
  }
  poly_trim(quot);
  return {quot, rem};
}

// scale by a positive rational so the coefficients are coprime integers
// (positive scaling keeps all sign information intact)
inline Poly poly_pos_primitive(const Poly& p) {
  if (p.empty()) return p;
  Int den(1), gcd(0);
  for (const Rat& c : p) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
  Poly r = p;
  for (Rat& c : r) {
    c *= den;
    mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), c.get_num().get_mpz_t());
  }
  if (gcd > 1)
    for (Rat& c : r) c /= gcd;
  return r;
}

inline Poly poly_monic(const Poly& p) {
  if (p.empty()) return p;
  return poly_scale(p, Rat(1) / p.back());
}

inline Poly poly_gcd(Poly a, Poly b) {
  a = poly_pos_primitive(a);
  b = poly_pos_primitive(b);
  while (!b.empty()) {
    Poly r = poly_pos_primitive(poly_divrem(a, b).second);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.empty()) return a;
  return poly_monic(a);
}

// squarefree polynomial with the same distinct roots
inline Poly poly_radical(const Poly& p) {
  check(!p.empty(), "radical of the zero polynomial");
  if (poly_deg(p) == 0) return {Rat(1)};
  Poly g = poly_gcd(p, poly_derivative(p));
  return poly_monic(poly_divrem(p, g).first);
}

// Yun's squarefree decomposition: p = lc * prod out[i]^(i+1) with the out[i]
// squarefree and pairwise coprime (entries may be the constant 1)
inline std::vector<Poly> yun_squarefree(const Poly& p) {
  check(!p.empty(), "squarefree decomposition of the zero polynomial");
  std::vector<Poly> out;
  if (poly_deg(p) == 0) return out;
  Poly f = poly_monic(p);
  Poly fp = poly_derivative(f);
  Poly a0 = poly_gcd(f, fp);
  Poly b = poly_divrem(f, a0).first;
  Poly c = poly_divrem(fp, a0).first;
  Poly d = poly_sub(c, poly_derivative(b));
  while (poly_deg(b) > 0) {
    Poly ai = poly_gcd(b, d);
    out.push_back(ai);
    b = poly_divrem(b, ai).first;
    c = poly_divrem(d, ai).first;
    d = poly_sub(c, poly_derivative(b));
  }
  // sanity: multiplicities reassemble the degree
  int total = 0;
  for (size_t i = 0; i < out.size(); ++i) total += (static_cast<int>(i) + 1) * poly_deg(out[i]);
  check(total == poly_deg(p), "squarefree decomposition degree mismatch");
  return out;
}

// ---------------------------------------------------------------------------
// Sturm machinery

inline std::vector<Poly> sturm_chain(const Poly& p) {
  std::vector<Poly> ch;
  ch.push_back(poly_pos_primitive(p));
  Poly d = poly_pos_primitive(poly_derivative(p));
  if (!d.empty()) ch.push_back(d);
  while (ch.back().size() > 0 && poly_deg(ch.back()) > 0) {
    Poly r = poly_divrem(ch[ch.size() - 2], ch.back()).second;
    if (r.empty()) break;
    for (Rat& c : r) c = -c;
    ch.push_back(poly_pos_primitive(r));
  }
  return ch;
}

inline int rat_sign(const Rat& x) { return sgn(x); }

inline int sign_at(const Poly& p, const Rat& x) { return sgn(poly_eval(p, x)); }

inline int sign_at_pinf(const Poly& p) { return p.empty() ? 0 : sgn(p.back()); }

inline int sign_at_minf(const Poly& p) {
  if (p.empty()) return 0;
  int s = sgn(p.back());
  return (poly_deg(p) % 2 == 0) ? s : -s;
}

namespace detail {

template <typename SignFn>
inline int sturm_variations(const std::vector<Poly>& ch, SignFn&& sign_of) {
  int var = 0, prev = 0;
  for (const Poly& q : ch) {
    int s = sign_of(q);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++var;
    prev = s;
  }
  return var;
}

}  // namespace detail

// number of distinct real roots in the half-open interval (a, b]
inline int count_roots_between(const std::vector<Poly>& ch, const Rat& a, const Rat& b) {
  check(a < b, "empty interval in root count");
  int va = detail::sturm_variations(ch, [&](const Poly& q) { return sign_at(q, a); });
  int vb = detail::sturm_variations(ch, [&](const Poly& q) { return sign_at(q, b); });
  return va - vb;
}

// number of distinct real roots in (a, +infinity)
inline int count_roots_above(const std::vector<Poly>& ch, const Rat& a) {
  int va = detail::sturm_variations(ch, [&](const Poly& q) { return sign_at(q, a); });
  int vi = detail::sturm_variations(ch, [](const Poly& q) { return sign_at_pinf(q); });
  // (a, +inf) and (a, b] agree once b passes every root, and a itself may be
  // a root of p: the half-open convention only matters at the right end
  return va - vi;
}

inline int count_real_roots(const std::vector<Poly>& ch) {
  int vm = detail::sturm_variations(ch, [](const Poly& q) { return sign_at_minf(q); });
  int vi = detail::sturm_variations(ch, [](const Poly& q) { return sign_at_pinf(q); });
  return vm - vi;
}

inline int count_real_roots(const Poly& p) { return count_real_roots(sturm_chain(p)); }

// every real root lies in (-B, B]
inline Rat cauchy_bound(const Poly& p) {
  check(poly_deg(p) >= 1, "root bound of a constant");
  Rat m(0);
  for (size_t i = 0; i + 1 < p.size(); ++i) {
    Rat q = abs(p[i] / p.back());
    if (q > m) m = q;
  }
  return m + 1;
}

// disjoint intervals (lo, hi], each holding exactly one distinct real root
inline std::vector<std::pair<Rat, Rat>> isolate_roots(const Poly& p) {
  std::vector<std::pair<Rat, Rat>> out;
  if (poly_deg(p) < 1) return out;
  std::vector<Poly> ch = sturm_chain(p);
  Rat B = cauchy_bound(p);
  std::vector<std::pair<Rat, Rat>> todo{{-B, B}};
  while (!todo.empty()) {
    auto [a, b] = todo.back();
    todo.pop_back();
    int n = count_roots_between(ch, a, b);
    if (n == 0) continue;
    if (n == 1) {
      out.emplace_back(a, b);
      continue;
    }
    Rat mid = (a + b) / 2;
    todo.emplace_back(a, mid);
    todo.emplace_back(mid, b);
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

// shrink an isolating interval (lo, hi] below the requested width
inline std::pair<Rat, Rat> refine_root(const std::vector<Poly>& ch, Rat lo, Rat hi,
                                       const Rat& eps) {
  check(count_roots_between(ch, lo, hi) == 1, "interval does not isolate a single root");
  while (hi - lo > eps) {
    Rat mid = (lo + hi) / 2;
    if (count_roots_between(ch, lo, mid) == 1)
      hi = mid;
    else
      lo = mid;
  }
  return {lo, hi};
}

}  // namespace brandt
