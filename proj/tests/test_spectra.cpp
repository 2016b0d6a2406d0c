#include "brandt/spectra.hpp"

#include "test_util.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace brandt;

namespace {

Poly P(std::initializer_list<long> coeffs_low_to_high) {
  Poly p;
  for (long c : coeffs_low_to_high) p.push_back(Rat(c));
  poly_trim(p);
  return p;
}

}  // namespace

TEST_CASE("polynomial arithmetic") {
  Poly a = P({-6, 11, -6, 1});  // (x-1)(x-2)(x-3)
  REQUIRE(poly_eval(a, 1) == 0);
  REQUIRE(poly_eval(a, 2) == 0);
  REQUIRE(poly_eval(a, 4) == 6);
  auto [q, r] = poly_divrem(a, P({-1, 1}));
  REQUIRE(r.empty());
  REQUIRE(q == P({6, -5, 1}));
  REQUIRE(poly_mul(q, P({-1, 1})) == a);
  REQUIRE(poly_gcd(a, poly_derivative(a)) == P({1}));  // squarefree
  Poly b = poly_mul(a, P({-2, 1}));                    // extra (x-2): double root
  REQUIRE(poly_gcd(b, poly_derivative(b)) == P({-2, 1}));
  REQUIRE(poly_radical(b) == a);
}

TEST_CASE("yun squarefree decomposition") {
  // p = (x-1)(x+2)^2 (x-3)^3
  Poly p = poly_mul(poly_mul(P({-1, 1}), poly_mul(P({2, 1}), P({2, 1}))),
                    poly_mul(P({-3, 1}), poly_mul(P({-3, 1}), P({-3, 1}))));
  std::vector<Poly> f = yun_squarefree(p);
  REQUIRE(f.size() == 3);
  REQUIRE(f[0] == P({-1, 1}));
  REQUIRE(f[1] == P({2, 1}));
  REQUIRE(f[2] == P({-3, 1}));
}

TEST_CASE("sturm chains count real roots exactly") {
  Poly p = P({-2, 0, 1});  // x^2 - 2
  auto ch = sturm_chain(p);
  REQUIRE(count_real_roots(ch) == 2);
  REQUIRE(count_roots_between(ch, 0, 2) == 1);
  REQUIRE(count_roots_between(ch, -2, 0) == 1);
  REQUIRE(count_roots_above(ch, Rat(3) / Rat(2)) == 0);
  REQUIRE(count_roots_above(ch, 1) == 1);
  // x^2 + 1 has no real roots
  REQUIRE(count_real_roots(P({1, 0, 1})) == 0);
  // boundary convention: intervals are (a, b]
  Poly q = P({-1, 1});
  auto chq = sturm_chain(q);
  REQUIRE(count_roots_between(chq, 0, 1) == 1);
  REQUIRE(count_roots_between(chq, 1, 2) == 0);
}

TEST_CASE("characteristic polynomials") {
  REQUIRE(char_poly(I64Mat::identity(3)) == P({-1, 3, -3, 1}));  // (x-1)^3
  I64Mat N(2, 2, {0, 1, 0, 0});
  REQUIRE(char_poly(N) == P({0, 0, 1}));  // x^2
  // companion matrix of x^3 - 2x - 5
  I64Mat Cm(3, 3, {0, 1, 0, 0, 0, 1, 5, 2, 0});
  REQUIRE(char_poly(Cm) == P({-5, -2, 0, 1}));
  // rational entries
  QMat Q(2, 2);
  Q(0, 0) = Rat(1) / Rat(2);
  Q(1, 1) = Rat(1) / Rat(3);
  Poly cp = char_poly(Q);
  REQUIRE(poly_eval(cp, Rat(1) / Rat(2)) == 0);
  REQUIRE(poly_eval(cp, Rat(1) / Rat(3)) == 0);
  REQUIRE(poly_deg(cp) == 2);
}

TEST_CASE("spectrum analysis: exact and isolated roots") {
  // (x-2)^2 (x+1)
  Poly p = poly_mul(poly_mul(P({-2, 1}), P({-2, 1})), P({1, 1}));
  Spectrum s = analyze_spectrum(p);
  REQUIRE(s.all_real);
  REQUIRE(s.roots.size() == 2);
  REQUIRE(s.roots[0].exact);
  REQUIRE(s.roots[0].value == -1);
  REQUIRE(s.roots[0].multiplicity == 1);
  REQUIRE(s.roots[1].exact);
  REQUIRE(s.roots[1].value == 2);
  REQUIRE(s.roots[1].multiplicity == 2);

  // x^2 - 2: irrational but real, isolated to width <= eps
  Spectrum t = analyze_spectrum(P({-2, 0, 1}));
  REQUIRE(t.all_real);
  REQUIRE(t.roots.size() == 2);
  for (const RootInfo& ri : t.roots) {
    REQUIRE(!ri.exact);
    REQUIRE(ri.hi - ri.lo <= default_root_eps());
    // interval really contains the root: sign change of x^2 - 2
    REQUIRE(poly_eval(P({-2, 0, 1}), ri.lo) * poly_eval(P({-2, 0, 1}), ri.hi) <= 0);
  }
  REQUIRE(t.roots[0].hi < 0);
  REQUIRE(t.roots[1].lo > 0);

  // x^2 + 1: not all real
  Spectrum u = analyze_spectrum(P({1, 0, 1}));
  REQUIRE(!u.all_real);
}

TEST_CASE("published spectra: the Ramanujan block") {
  I64Mat A = from_rows({{8, 32, 0}, {4, 4, 32}, {0, 12, 28}});
  RamanujanReport R = ramanujan_test(A);
  REQUIRE(R.k == 40);
  REQUIRE(R.mult_k == 1);
  REQUIRE(R.mult_minus_k == 0);
  REQUIRE(R.all_real);
  REQUIRE(R.ramanujan);  // 12^2 = 144 <= 4*39 = 156
  // exact eigenvalues {40, 12, -12}
  REQUIRE(R.spec.charpoly ==
          poly_monic(poly_mul(poly_mul(P({-40, 1}), P({-12, 1})), P({12, 1}))));
  REQUIRE(R.spec.roots.size() == 3);
  REQUIRE((R.spec.roots[0].exact && R.spec.roots[0].value == -12));
  REQUIRE((R.spec.roots[1].exact && R.spec.roots[1].value == 12));
  REQUIRE((R.spec.roots[2].exact && R.spec.roots[2].value == 40));
}

TEST_CASE("published spectra: the non-Ramanujan block") {
  I64Mat A = from_rows({{6, 9, 0}, {3, 3, 9}, {0, 3, 12}});
  RamanujanReport R = ramanujan_test(A);
  REQUIRE(R.k == 15);
  REQUIRE(R.mult_k == 1);
  REQUIRE(R.all_real);
  REQUIRE(!R.ramanujan);  // (3 + 3 sqrt 3)^2 = 54 + 18 sqrt 3 > 56
  // charpoly (x - 15)(x^2 - 6x - 18), eigenvalues 15 and 3 +- 3 sqrt 3
  REQUIRE(R.spec.charpoly == poly_monic(poly_mul(P({-15, 1}), P({-18, -6, 1}))));
  REQUIRE(R.spec.roots.size() == 3);
  REQUIRE(R.spec.roots[2].exact);
  REQUIRE(R.spec.roots[2].value == 15);
  // 3 - 3 sqrt 3 in (-2.2, -2.19), 3 + 3 sqrt 3 in (8.19, 8.2)
  REQUIRE(R.spec.roots[0].lo > Rat(-22) / Rat(10));
  REQUIRE(R.spec.roots[0].hi < Rat(-219) / Rat(100));
  REQUIRE(R.spec.roots[1].lo > Rat(819) / Rat(100));
  REQUIRE(R.spec.roots[1].hi < Rat(82) / Rat(10));
}

TEST_CASE("classic graphs as regularity sanity checks") {
  // K4: eigenvalues {3, -1, -1, -1}, Ramanujan
  I64Mat K4(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) K4(i, j) = i == j ? 0 : 1;
  RamanujanReport rk = ramanujan_test(K4);
  REQUIRE(rk.k == 3);
  REQUIRE(rk.ramanujan);
  REQUIRE(rk.spec.roots.size() == 2);
  REQUIRE(rk.spec.roots[0].value == -1);
  REQUIRE(rk.spec.roots[0].multiplicity == 3);

  // C6: bipartite 2-regular, eigenvalues {2, 1, 1, -1, -1, -2}, Ramanujan
  I64Mat C6(6, 6);
  for (int i = 0; i < 6; ++i) {
    C6(i, (i + 1) % 6) = 1;
    C6(i, (i + 5) % 6) = 1;
  }
  RamanujanReport rc = ramanujan_test(C6);
  REQUIRE(rc.k == 2);
  REQUIRE(rc.mult_k == 1);
  REQUIRE(rc.mult_minus_k == 1);
  REQUIRE(rc.ramanujan);

  // Petersen graph: {3, 1^5, (-2)^4}, Ramanujan
  int edges[15][2] = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {5, 7}, {7, 9}, {9, 6},
                      {6, 8}, {8, 5}, {0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9}};
  I64Mat Pt(10, 10);
  for (auto& e : edges) {
    Pt(e[0], e[1]) = 1;
    Pt(e[1], e[0]) = 1;
  }
  RamanujanReport rp = ramanujan_test(Pt);
  REQUIRE(rp.k == 3);
  REQUIRE(rp.ramanujan);
  REQUIRE(rp.spec.roots.size() == 3);
  REQUIRE(rp.spec.roots[0].value == -2);
  REQUIRE(rp.spec.roots[0].multiplicity == 4);
  REQUIRE(rp.spec.roots[1].value == 1);
  REQUIRE(rp.spec.roots[1].multiplicity == 5);
}

TEST_CASE("bipartite double covers have symmetric spectra") {
  I64Mat B = from_rows({{2, 1}, {0, 3}});
  I64Mat M(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      M(i, 2 + j) = B(i, j);
      M(2 + j, i) = B(j, i);
    }
  Poly p = char_poly(M);
  for (size_t i = 0; i < p.size(); ++i)
    if ((static_cast<int>(i) % 2) != (poly_deg(p) % 2)) REQUIRE(p[i] == 0);
}
