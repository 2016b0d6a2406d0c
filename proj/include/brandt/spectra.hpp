#pragma once
// Exact spectral analysis of adjacency matrices: characteristic polynomials
// via Faddeev-LeVerrier, certified real spectra (Sturm counts), isolated
// eigenvalue approximations, and the exact Ramanujan criterion for regular
// graphs.  The Ramanujan test never leaves rational arithmetic: with
// q(x) = A(x^2) + x B(x^2) the polynomial G(y) = A(y)^2 - y B(y)^2 satisfies
// G(x^2) = q(x) q(-x), so the squared eigenvalues are exactly the roots of G
// and the bound lambda^2 <= 4(k-1) becomes a Sturm count on (4(k-1), +inf).

#include "brandt/matrix.hpp"
#include "brandt/poly.hpp"

#include <cstdint>
#include <vector>

namespace brandt {

inline Poly char_poly(const QMat& A) {
  check(A.m == A.n, "characteristic polynomial of a non-square matrix");
  int n = A.m;
  Poly c(n + 1, Rat(0));
  c[n] = 1;
  if (n == 0) return c;
  QMat M = A;
  for (int k = 1; k <= n; ++k) {
    if (k > 1) {
      QMat S = M;
      for (int i = 0; i < n; ++i) S(i, i) += c[n - k + 1];
      M = A * S;
    }
    Rat tr(0);
    for (int i = 0; i < n; ++i) tr += M(i, i);
    c[n - k] = -tr / Rat(static_cast<long>(k));
  }
  // Cayley-Hamilton tail: M_n = -c_0 I
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      check(M(i, j) == (i == j ? -c[0] : Rat(0)), "Faddeev-LeVerrier consistency check failed");
  return c;
}

inline Poly char_poly(const I64Mat& A) {
  QMat Q(A.m, A.n);
  for (size_t i = 0; i < A.a.size(); ++i) Q.a[i] = Rat(static_cast<long>(A.a[i]));
  Poly p = char_poly(Q);
  for (const Rat& x : p) check(x.get_den() == 1, "integer matrix with non-integer char poly");
  return p;
}

inline Poly poly_from_roots(const std::vector<Rat>& roots) {
  Poly p{Rat(1)};
  for (const Rat& r : roots) p = poly_mul(p, Poly{-r, Rat(1)});
  return p;
}

struct RootInfo {
  Rat lo, hi;            // isolating interval (lo, hi]
  int multiplicity = 1;
  bool exact = false;    // true when the root is known exactly
  Rat value;             // the root when exact (and lo = hi = value)
};

struct Spectrum {
  Poly charpoly;               // monic
  bool all_real = false;       // certified: every complex root is real
  std::vector<RootInfo> roots; // distinct real roots, ascending
};

inline Rat default_root_eps() {
  Int d = 1;
  for (int i = 0; i < 12; ++i) d *= 10;
  return Rat(Int(1), d);
}

inline Spectrum analyze_spectrum(const Poly& p, const Rat& eps = default_root_eps()) {
  Spectrum S;
  S.charpoly = poly_monic(p);
  Poly rad = poly_radical(S.charpoly);
  S.all_real = (count_real_roots(rad) == poly_deg(rad));
  std::vector<Poly> sq = yun_squarefree(S.charpoly);
  for (size_t i = 0; i < sq.size(); ++i) {
    const Poly& f = sq[i];
    if (poly_deg(f) < 1) continue;
    int mult = static_cast<int>(i) + 1;
    if (poly_deg(f) == 1) {
      RootInfo ri;
      ri.exact = true;
      ri.value = -f[0] / f[1];
      ri.lo = ri.hi = ri.value;
      ri.multiplicity = mult;
      S.roots.push_back(ri);
      continue;
    }
    std::vector<Poly> ch = sturm_chain(f);
    for (auto [lo, hi] : isolate_roots(f)) {
      auto [l, h] = refine_root(ch, lo, hi, eps);
      RootInfo ri;
      ri.lo = l;
      ri.hi = h;
      ri.multiplicity = mult;
      // monic integer char polys only admit integer rational roots, and the
      // interval is now narrower than 1, so test its single integer candidate
      Int cand;
      mpz_fdiv_q(cand.get_mpz_t(), h.get_num().get_mpz_t(), h.get_den().get_mpz_t());
      if (Rat(cand) > l && poly_eval(f, Rat(cand)) == 0) {
        ri.exact = true;
        ri.value = Rat(cand);
        ri.lo = ri.hi = ri.value;
      }
      S.roots.push_back(ri);
    }
  }
  std::sort(S.roots.begin(), S.roots.end(),
            [](const RootInfo& a, const RootInfo& b) { return a.lo + a.hi < b.lo + b.hi; });
  return S;
}

struct RamanujanReport {
  int64_t k = 0;          // regularity (constant row sum)
  int mult_k = 0;         // multiplicity of the trivial eigenvalue k
  int mult_minus_k = 0;   // multiplicity of -k (bipartite companion)
  bool all_real = false;
  bool ramanujan = false; // nontrivial eigenvalues satisfy lambda^2 <= 4(k-1)
  Spectrum spec;
};

inline int64_t row_sum_regular(const I64Mat& A) {
  check(A.m == A.n && A.m > 0, "regularity of a non-square matrix");
  int64_t k = 0;
  for (int j = 0; j < A.n; ++j) k += A(0, j);
  for (int i = 1; i < A.m; ++i) {
    int64_t s = 0;
    for (int j = 0; j < A.n; ++j) s += A(i, j);
    check(s == k, "matrix is not regular: row sums differ");
  }
  return k;
}

inline RamanujanReport ramanujan_test(const I64Mat& A, const Rat& eps = default_root_eps()) {
  RamanujanReport R;
  R.k = row_sum_regular(A);
  Poly p = char_poly(A);
  R.spec = analyze_spectrum(p, eps);
  R.all_real = R.spec.all_real;
  // strip the trivial eigenvalues +-k
  Poly q = p;
  Poly fk{Rat(static_cast<long>(-R.k)), Rat(1)};
  Poly fmk{Rat(static_cast<long>(R.k)), Rat(1)};
  while (poly_deg(q) >= 1 && poly_eval(q, Rat(static_cast<long>(R.k))) == 0) {
    q = poly_divrem(q, fk).first;
    ++R.mult_k;
  }
  while (R.k != 0 && poly_deg(q) >= 1 && poly_eval(q, Rat(static_cast<long>(-R.k))) == 0) {
    q = poly_divrem(q, fmk).first;
    ++R.mult_minus_k;
  }
  check(R.mult_k >= 1, "regular matrix is missing its trivial eigenvalue");
  bool inside = true;
  if (poly_deg(q) >= 1) {
    // split q into even and odd parts and form G(y) = E(y)^2 - y O(y)^2
    Poly E, O;
    for (size_t i = 0; i < q.size(); ++i)
      (i % 2 == 0 ? E : O).push_back(q[i]);
    poly_trim(E);
    poly_trim(O);
    Poly G = poly_sub(poly_mul(E, E), poly_mul(Poly{Rat(0), Rat(1)}, poly_mul(O, O)));
    check(poly_deg(G) == poly_deg(q), "squared-spectrum polynomial has the wrong degree");
    Rat bound(static_cast<long>(4 * (R.k - 1)));
    inside = (count_roots_above(sturm_chain(poly_radical(G)), bound) == 0);
  }
  R.ramanujan = R.all_real && inside;
  return R;
}

}  // namespace brandt
