#pragma once
// Orders in a definite rational quaternion algebra: structure constants,
// discriminants, codifferents, unit groups, and maximal orders.
//
// A maximal order is computed from Z<1,i,j,k> by saturation: for every prime
// p whose exponent in disc(O) exceeds its exponent in the algebra
// discriminant, pass to an idealizer of (the preimage of) the Jacobson
// radical of O/pO.  That enlarges O strictly unless O_p is hereditary; in the
// hereditary (Eichler, level p) case O/pO modulo its radical splits as
// F_p x F_p and idealizing the preimage of one of the two maximal ideals
// above the radical gives a maximal order.

#include "brandt/matrix.hpp"
#include "brandt/quaternion.hpp"
#include "brandt/shortvec.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace brandt {

// structure constants mod p: T[u][v][w] = w-coord of e_u * e_v
using Tensor4 = std::array<std::array<std::array<int64_t, 4>, 4>, 4>;

struct Order {
  QuaternionAlgebra alg;
  QMat basis;      // 4x4, row u = coordinates of basis vector over 1,i,j,k
  QMat basis_inv;  // inverse, for coordinate lookups
  Int disc;        // reduced discriminant: disc^2 = |det(trd(e_u e_v))|
  std::array<IMat, 4> tens;  // tens[u](v,w) = w-coord of e_u * e_v (integral)

  Quat elt(int u) const {
    return Quat(basis(u, 0), basis(u, 1), basis(u, 2), basis(u, 3));
  }
  Quat elt(const std::vector<Rat>& coef) const {
    Quat q;
    for (int u = 0; u < 4; ++u) {
      Quat e = elt(u);
      for (int t = 0; t < 4; ++t) q.c[t] += coef[u] * e.c[t];
    }
    return q;
  }
  std::vector<Rat> coords(const Quat& q) const {
    std::vector<Rat> out(4);
    for (int v = 0; v < 4; ++v) {
      Rat s = 0;
      for (int t = 0; t < 4; ++t) s += q.c[t] * basis_inv(t, v);
      out[v] = s;
    }
    return out;
  }
  bool contains(const Quat& q) const {
    for (const Rat& x : coords(q))
      if (x.get_den() != 1) return false;
    return true;
  }

  // Gram matrix of the reduced norm form: trd(e_u * conj(e_v)); positive definite
  IMat norm_gram() const {
    IMat G(4, 4);
    for (int u = 0; u < 4; ++u)
      for (int v = 0; v < 4; ++v) {
        Rat t = trd(alg.mul(elt(u), conj(elt(v))));
        check(t.get_den() == 1, "norm Gram not integral");
        G(u, v) = t.get_num();
      }
    return G;
  }

  Tensor4 tensor_mod(int64_t p) const {
    Tensor4 T{};
    for (int u = 0; u < 4; ++u)
      for (int v = 0; v < 4; ++v)
        for (int w = 0; w < 4; ++w) T[u][v][w] = mod_norm(mpz_fdiv_ui(tens[u](v, w).get_mpz_t(), static_cast<unsigned long>(p)), p);
    return T;
  }
};

// canonicalize a basis (HNF of the row lattice) and build the order data
inline Order make_order(const QuaternionAlgebra& alg, const QMat& rows) {
  check(rows.m == 4 && rows.n == 4, "order basis must be 4x4");
  auto [Z, den] = clear_denominators(rows);
  IMat H = hnf(Z);
  check(H.m == 4, "order basis is singular");
  Order O;
  O.alg = alg;
  O.basis = QMat(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) O.basis(i, j) = Rat(H(i, j)) / Rat(den);
  O.basis_inv = inverse(O.basis);
  check(O.contains(Quat::one()), "order does not contain 1");
  for (int u = 0; u < 4; ++u) {
    O.tens[u] = IMat(4, 4);
    for (int v = 0; v < 4; ++v) {
      std::vector<Rat> c = O.coords(O.alg.mul(O.elt(u), O.elt(v)));
      for (int w = 0; w < 4; ++w) {
        check(c[w].get_den() == 1, "order is not multiplicatively closed");
        O.tens[u](v, w) = c[w].get_num();
      }
    }
  }
  IMat T2(4, 4);
  for (int u = 0; u < 4; ++u)
    for (int v = 0; v < 4; ++v) {
      Rat t = trd(alg.mul(O.elt(u), O.elt(v)));
      check(t.get_den() == 1, "trace form not integral on order");
      T2(u, v) = t.get_num();
    }
  Rat d = det(T2);
  Int dz = d.get_num();
  if (dz < 0) dz = -dz;
  O.disc = isqrt_exact(dz);
  return O;
}

// basis (coords over 1,i,j,k) of the codifferent O^# = {x : trd(x O) in Z}
inline QMat codifferent_basis(const Order& O) {
  QMat T2(4, 4);
  for (int u = 0; u < 4; ++u)
    for (int v = 0; v < 4; ++v) T2(u, v) = trd(O.alg.mul(O.elt(u), O.elt(v)));
  return inverse(T2) * O.basis;
}

// ---------------------------------------------------------------------------
// Jacobson radical of O/pO, as rows of an RREF subspace of F_p^4

namespace detail {

inline std::array<int64_t, 4> mulp(const Tensor4& T, const std::array<int64_t, 4>& x,
                                   const std::array<int64_t, 4>& y, int64_t p) {
  std::array<int64_t, 4> z{};
  for (int u = 0; u < 4; ++u) {
    if (x[u] == 0) continue;
    for (int v = 0; v < 4; ++v) {
      if (y[v] == 0) continue;
      int64_t f = mod_norm(x[u] * y[v], p);
      if (f == 0) continue;
      for (int w = 0; w < 4; ++w) z[w] = mod_norm(z[w] + f * T[u][v][w], p);
    }
  }
  return z;
}

inline std::array<int64_t, 4> row4(const I64Mat& A, int i) {
  return {A(i, 0), A(i, 1), A(i, 2), A(i, 3)};
}

// does the span of S (RREF'd in place) consist of a nilpotent ideal power chain?
inline bool span_nilpotent(I64Mat S, const Tensor4& T, int64_t p) {
  rref_mod(S, p);
  for (int iter = 0; iter < 6; ++iter) {
    if (S.m == 0) return true;
    I64Mat P(S.m * S.m, 4);
    for (int i = 0; i < S.m; ++i)
      for (int j = 0; j < S.m; ++j) {
        auto z = mulp(T, row4(S, i), row4(S, j), p);
        for (int w = 0; w < 4; ++w) P(i * S.m + j, w) = z[w];
      }
    rref_mod(P, p);
    if (P.m >= S.m) return false;  // span stabilized nonzero
    S = P;
  }
  return S.m == 0;
}

// two-sided ideal of O/pO generated by x
inline I64Mat ideal_generated(const Tensor4& T, const std::array<int64_t, 4>& x, int64_t p) {
  I64Mat G(16, 4);
  for (int u = 0; u < 4; ++u) {
    std::array<int64_t, 4> eu{};
    eu[u] = 1;
    auto ux = mulp(T, eu, x, p);
    for (int v = 0; v < 4; ++v) {
      std::array<int64_t, 4> ev{};
      ev[v] = 1;
      auto uxv = mulp(T, ux, ev, p);
      for (int w = 0; w < 4; ++w) G(u * 4 + v, w) = uxv[w];
    }
  }
  rref_mod(G, p);
  return G;
}

inline I64Mat radical_mod(const Tensor4& T, int64_t p) {
  if (p <= 3) {
    // direct search: an element lies in the radical iff the two-sided ideal
    // it generates is nilpotent (the radical is the largest such ideal)
    std::vector<std::vector<int64_t>> rows;
    std::array<int64_t, 4> x{};
    for (x[0] = 0; x[0] < p; ++x[0])
      for (x[1] = 0; x[1] < p; ++x[1])
        for (x[2] = 0; x[2] < p; ++x[2])
          for (x[3] = 0; x[3] < p; ++x[3]) {
            if (x == std::array<int64_t, 4>{0, 0, 0, 0}) continue;
            I64Mat I = ideal_generated(T, x, p);
            if (span_nilpotent(I, T, p)) rows.push_back({x[0], x[1], x[2], x[3]});
          }
    I64Mat S(static_cast<int>(rows.size()), 4);
    for (size_t i = 0; i < rows.size(); ++i)
      for (int j = 0; j < 4; ++j) S(static_cast<int>(i), j) = rows[i][j];
    rref_mod(S, p);
    return S;
  }
  // p >= 5: kernel of the regular trace form (x,y) -> Tr(L_{xy}); this kernel
  // always contains the radical and is an ideal; dim <= 4 rules out simple
  // factors with multiplicity divisible by p, so equality holds — still, we
  // certify nilpotency below.
  std::array<int64_t, 4> trw{};
  for (int w = 0; w < 4; ++w) {
    int64_t s = 0;
    for (int v = 0; v < 4; ++v) s += T[w][v][v];
    trw[w] = mod_norm(s, p);
  }
  I64Mat K(4, 4);
  for (int u = 0; u < 4; ++u)
    for (int v = 0; v < 4; ++v) {
      int64_t s = 0;
      for (int w = 0; w < 4; ++w) s = mod_norm(s + T[u][v][w] * trw[w], p);
      K(u, v) = s;
    }
  I64Mat R = kernel_mod(K, p);
  check(span_nilpotent(R, T, p), "trace-form kernel is not nilpotent");
  rref_mod(R, p);
  return R;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// idealizer step

enum class Side { left, right };

// J given by integer rows (order coords) with p*O <= J <= O; returns the
// order {x in H : x J <= J} (side = left) or {x : J x <= J} (side = right).
inline Order idealizer(const Order& O, const IMat& Jb, int64_t p, Side side) {
  QMat Jq = to_rat(Jb);
  QMat Jinv = inverse(Jq);
  I64Mat C(16, 4);
  for (int t = 0; t < 4; ++t) {
    for (int u = 0; u < 4; ++u) {
      // product of basis vector u with generator t (in order coords)
      std::vector<Rat> prod(4, Rat(0));
      for (int w = 0; w < 4; ++w) {
        if (Jb(t, w) == 0) continue;
        const IMat& M = (side == Side::left) ? O.tens[u] : O.tens[w];
        int r = (side == Side::left) ? w : u;
        for (int s = 0; s < 4; ++s) prod[s] += Rat(Jb(t, w)) * Rat(M(r, s));
      }
      // coordinates of the product in the J-basis must be integral
      for (int s = 0; s < 4; ++s) {
        Rat c = 0;
        for (int w = 0; w < 4; ++w) c += prod[w] * Jinv(w, s);
        check(c.get_den() == 1, "J is not a one-sided O-ideal");
        C(t * 4 + s, u) = mpz_fdiv_ui(c.get_num().get_mpz_t(), static_cast<unsigned long>(p));
      }
    }
  }
  I64Mat K = kernel_mod(C, p);
  IMat S(4 + K.m, 4);
  for (int i = 0; i < 4; ++i) S(i, i) = p;
  for (int i = 0; i < K.m; ++i)
    for (int j = 0; j < 4; ++j) S(4 + i, j) = K(i, j);
  IMat H = hnf(S);
  QMat rows(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) rows(i, j) = Rat(H(i, j)) / Rat(Int(p));
  return make_order(O.alg, rows * O.basis);
}

// one strict enlargement of O at p (precondition: O_p not maximal)
inline Order enlarge_at(const Order& O, const Int& pz) {
  int64_t p = to_i64(pz);
  Tensor4 T = O.tensor_mod(p);
  I64Mat R = detail::radical_mod(T, p);
  auto lift_ideal = [&](const I64Mat& rows) {
    IMat S(4 + rows.m, 4);
    for (int i = 0; i < 4; ++i) S(i, i) = pz;
    for (int i = 0; i < rows.m; ++i)
      for (int j = 0; j < 4; ++j) S(4 + i, j) = rows(i, j);
    return hnf(S);
  };
  IMat Jb = lift_ideal(R);
  for (Side side : {Side::left, Side::right}) {
    Order O2 = idealizer(O, Jb, p, side);
    if (O2.disc < O.disc) return O2;
  }
  // hereditary stall: O/pO mod radical = F_p x F_p; idealize the preimage of
  // a maximal ideal above the radical instead
  std::vector<int> pivots;
  {
    I64Mat Rc = R;
    pivots = rref_mod(Rc, p);
  }
  std::vector<bool> is_piv(4, false);
  for (int c : pivots) is_piv[c] = true;
  std::vector<int> comp;
  for (int c = 0; c < 4; ++c)
    if (!is_piv[c]) comp.push_back(c);
  check(comp.size() == 2, "hereditary stall with unexpected quotient dimension");

  // reduce a vector modulo the radical rows (RREF) and read quotient coords
  auto qcoords = [&](std::array<int64_t, 4> v) {
    for (int i = 0; i < R.m; ++i) {
      int64_t f = v[pivots[i]];
      if (f == 0) continue;
      for (int j = 0; j < 4; ++j) v[j] = mod_norm(v[j] - f * R(i, j), p);
    }
    return std::array<int64_t, 2>{v[comp[0]], v[comp[1]]};
  };
  std::vector<Rat> onec = O.coords(Quat::one());
  std::array<int64_t, 4> onev{};
  for (int j = 0; j < 4; ++j)
    onev[j] = mod_norm(mpz_fdiv_ui(onec[j].get_num().get_mpz_t(), static_cast<unsigned long>(p)), p);
  auto one_q = qcoords(onev);

  std::array<int64_t, 4> e{};
  bool found = false;
  for (int64_t al = 0; al < p && !found; ++al)
    for (int64_t be = 0; be < p && !found; ++be) {
      if (al == 0 && be == 0) continue;
      std::array<int64_t, 4> cand{};
      cand[comp[0]] = al;
      cand[comp[1]] = be;
      auto cq = qcoords(cand);  // = (al, be) by construction
      if (cq == one_q) continue;
      auto sq = qcoords(detail::mulp(T, cand, cand, p));
      if (sq == cq) {
        e = cand;
        found = true;
      }
    }
  check(found, "no nontrivial idempotent in the hereditary quotient");

  std::array<int64_t, 4> f{};
  for (int j = 0; j < 4; ++j) f[j] = mod_norm(onev[j] - e[j], p);
  for (const auto& gen : {e, f}) {
    // ideal = radical + (gen * quotient basis)
    I64Mat rows(R.m + 2, 4);
    for (int i = 0; i < R.m; ++i)
      for (int j = 0; j < 4; ++j) rows(i, j) = R(i, j);
    for (int t = 0; t < 2; ++t) {
      std::array<int64_t, 4> q{};
      q[comp[t]] = 1;
      auto gq = detail::mulp(T, gen, q, p);
      for (int j = 0; j < 4; ++j) rows(R.m + t, j) = gq[j];
    }
    IMat Jm = lift_ideal(rows);
    for (Side side : {Side::left, Side::right}) {
      Order O2 = idealizer(O, Jm, p, side);
      if (O2.disc < O.disc) return O2;
    }
  }
  throw invariant_error("saturation failed to enlarge the order");
}

inline Order maximal_order(const QuaternionAlgebra& alg) {
  QMat B = QMat::identity(4);
  Order O = make_order(alg, B);
  for (const Int& p : prime_factors(O.disc)) {
    unsigned target = valuation(alg.disc, p);
    int guard = 0;
    while (valuation(O.disc, p) > target) {
      Int before = O.disc;
      O = enlarge_at(O, p);
      check(O.disc < before && before % O.disc == 0, "saturation step did not shrink disc");
      check(++guard < 64, "saturation did not terminate");
    }
  }
  check(O.disc == alg.disc, "maximal order has wrong discriminant");
  return O;
}

// all units of O (elements of reduced norm 1), as quaternions; includes +-1
inline std::vector<Quat> unit_group(const Order& O) {
  I64Mat G = to_i64(O.norm_gram());
  std::vector<Quat> units;
  for (const auto& v : short_vectors(G, 2)) {
    if (gram_norm(G, v) != 2) continue;
    std::vector<Rat> c(4);
    for (int t = 0; t < 4; ++t) c[t] = Rat(Int(static_cast<long>(v[t])));
    units.push_back(O.elt(c));
  }
  return units;
}

}  // namespace brandt
