#pragma once
// Hermitian O-lattices in H^g for a maximal order O of a definite rational
// quaternion algebra H, with the standard form h(x,y) = sum_s x_s conj(y_s).
//
// Lattices are full-rank left O-modules M < H^g, stored by a Z-basis in
// Hermite normal form over the coordinate system "g slots x order basis".
// The key invariants:
//   * dual    M* = {x : h(M, x) < O},  computed from the codifferent of O;
//   * type(M) = n where [M* : M] = l^{4n}, for integral l-bounded M
//     (h(M,M) < O and l M* < M);
//   * neighbors: lattices M' with M < M' < M* correspond to O-submodules of
//     Q = M*/M = F_l^{4n}; via a rank-1 idempotent e of O/lO = M_2(F_l)
//     these biject with F_l-subspaces of the Morita module V = eQ.
// Integrality of a superlattice is a pure F_l condition expressed by the
// table T[a][b] = l*h(f_a, f_b) mod lO; l-boundedness is automatic.
// Sublattices of given type are enumerated dually inside M / lM*, where the
// extra condition is U-perp < U for the pairing h mod lO.

#include "brandt/formulas.hpp"
#include "brandt/order.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace brandt {

// ---------------------------------------------------------------------------
// ambient space

struct BrandtSpace {
  QuaternionAlgebra alg;
  Order O;
  int g = 0;
  Int ell;
  int64_t l = 0;
  QMat codiff;                    // basis of O^# (rows, coords over 1,i,j,k)
  Tensor4 Tm{};                   // order structure constants mod l
  std::array<int64_t, 4> one_mod{};
  std::array<int64_t, 4> idem{};  // rank-1 idempotent of O/lO

  int dim() const { return 4 * g; }
};

inline std::array<int64_t, 4> ocoords_mod(const BrandtSpace& sp, const Quat& q) {
  std::vector<Rat> c = sp.O.coords(q);
  std::array<int64_t, 4> out{};
  for (int u = 0; u < 4; ++u) {
    check(c[u].get_den() == 1, "element not in the order");
    out[u] = static_cast<int64_t>(
        mpz_fdiv_ui(c[u].get_num().get_mpz_t(), static_cast<unsigned long>(sp.l)));
  }
  return out;
}

inline BrandtSpace make_space(int g, const Int& ell, const Int& N) {
  check(1 <= g && g <= 4, "dimension g must be in 1..4");
  check(is_prime(ell), "l must be prime");
  check(N % ell != 0, "l must not divide the discriminant");
  BrandtSpace sp;
  sp.alg = construct_algebra(N);
  sp.O = maximal_order(sp.alg);
  sp.g = g;
  sp.ell = ell;
  sp.l = to_i64(ell);
  sp.codiff = codifferent_basis(sp.O);
  sp.Tm = sp.O.tensor_mod(sp.l);
  sp.one_mod = ocoords_mod(sp, Quat::one());

  // rank-1 idempotent of O/lO = M_2(F_l): smallest e != 0 with e^2 = e and
  // dim e*(O/lO) = 2
  bool found = false;
  std::array<int64_t, 4> x{};
  for (x[0] = 0; x[0] < sp.l && !found; ++x[0])
    for (x[1] = 0; x[1] < sp.l && !found; ++x[1])
      for (x[2] = 0; x[2] < sp.l && !found; ++x[2])
        for (x[3] = 0; x[3] < sp.l && !found; ++x[3]) {
          if (x == std::array<int64_t, 4>{0, 0, 0, 0}) continue;
          if (detail::mulp(sp.Tm, x, x, sp.l) != x) continue;
          I64Mat S(4, 4);
          for (int v = 0; v < 4; ++v) {
            std::array<int64_t, 4> ev{};
            ev[v] = 1;
            auto xv = detail::mulp(sp.Tm, x, ev, sp.l);
            for (int w = 0; w < 4; ++w) S(v, w) = xv[w];
          }
          if (rank_mod(S, sp.l) == 2) {
            sp.idem = x;
            found = true;
          }
        }
  check(found, "no rank-1 idempotent: O/lO is not a matrix algebra");
  return sp;
}

// ---------------------------------------------------------------------------
// lattices

struct Lattice {
  IMat B;       // HNF basis rows, full rank
  Int den = 1;  // lattice = (1/den) * row span of B
  bool operator==(const Lattice& o) const { return den == o.den && B == o.B; }
};

inline Lattice make_lattice(const QMat& rows) {
  auto [Z, d] = clear_denominators(rows);
  IMat H = hnf(Z);
  check(H.m == rows.n, "lattice basis is singular");
  Int c = d;
  for (const Int& x : H.a) {
    mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), x.get_mpz_t());
    if (c == 1) break;
  }
  if (c > 1) {
    for (Int& x : H.a) x /= c;
    d /= c;
  }
  return Lattice{std::move(H), d};
}

inline QMat lat_rows(const Lattice& L) {
  QMat R(L.B.m, L.B.n);
  for (size_t i = 0; i < L.B.a.size(); ++i) R.a[i] = Rat(L.B.a[i]) / Rat(L.den);
  return R;
}

inline Lattice standard_lattice(const BrandtSpace& sp) {
  return Lattice{IMat::identity(sp.dim()), 1};
}

inline std::string lattice_key(const Lattice& L) {
  std::ostringstream os;
  os << L.den.get_str() << ';';
  for (const Int& x : L.B.a) os << x.get_str() << ',';
  return os.str();
}

// does L1 contain L2?
inline bool lat_contains(const Lattice& L1, const Lattice& L2) {
  return is_integral(lat_rows(L2) * inverse(lat_rows(L1)));
}

// index [L1 : L2] for L2 < L1
inline Int lat_index(const Lattice& L1, const Lattice& L2) {
  Rat r = det(lat_rows(L2)) / det(lat_rows(L1));
  if (r < 0) r = -r;
  check(r.get_den() == 1, "lat_index: not a sublattice");
  return r.get_num();
}

// ---------------------------------------------------------------------------
// the hermitian form

inline Quat slot_quat(const BrandtSpace& sp, const std::vector<Rat>& row, int s) {
  Quat q;
  for (int u = 0; u < 4; ++u) {
    Quat e = sp.O.elt(u);
    for (int t = 0; t < 4; ++t) q.c[t] += row[s * 4 + u] * e.c[t];
  }
  return q;
}

inline Quat h_val(const BrandtSpace& sp, const std::vector<Rat>& x, const std::vector<Rat>& y) {
  Quat h;
  for (int s = 0; s < sp.g; ++s) h = h + sp.alg.mul(slot_quat(sp, x, s), conj(slot_quat(sp, y, s)));
  return h;
}

// row vector of omega_u * x (left multiplication, slotwise)
inline std::vector<Rat> left_mul_row(const BrandtSpace& sp, int u, const std::vector<Rat>& x) {
  std::vector<Rat> out(x.size(), Rat(0));
  for (int s = 0; s < sp.g; ++s)
    for (int w = 0; w < 4; ++w) {
      Rat acc = 0;
      for (int v = 0; v < 4; ++v) {
        const Int& t = sp.O.tens[u](v, w);
        if (t != 0) acc += x[s * 4 + v] * Rat(t);
      }
      out[s * 4 + w] = acc;
    }
  return out;
}

inline bool is_integral_lattice(const BrandtSpace& sp, const Lattice& M) {
  QMat R = lat_rows(M);
  for (int i = 0; i < R.m; ++i)
    for (int j = i; j < R.m; ++j)
      if (!sp.O.contains(h_val(sp, R.row(i), R.row(j)))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// dual lattice

inline Lattice dual_lattice(const BrandtSpace& sp, const Lattice& M) {
  // h(x, M) in O iff trd(h(x, m) beta) in Z for all basis m, beta in O^#,
  // and trd(h(x, m) beta) = <x, conj(beta) m> for the Z-form
  // <x, y> = trd(sum_s x_s conj(y_s)).  Hence M* is the <,>-dual of the
  // Z-lattice N = conj(O^#) M (slotwise left multiplication).
  int d4 = sp.dim();
  QMat R = lat_rows(M);
  QMat Nrows(4 * d4, d4);
  for (int i = 0; i < d4; ++i) {
    std::vector<Rat> bi = R.row(i);
    for (int t = 0; t < 4; ++t) {
      Quat bc = conj(Quat(sp.codiff(t, 0), sp.codiff(t, 1), sp.codiff(t, 2), sp.codiff(t, 3)));
      for (int s = 0; s < sp.g; ++s) {
        std::vector<Rat> c = sp.O.coords(sp.alg.mul(bc, slot_quat(sp, bi, s)));
        for (int u = 0; u < 4; ++u) Nrows(i * 4 + t, s * 4 + u) = c[u];
      }
    }
  }
  QMat BN = lat_rows(make_lattice(Nrows));
  QMat G(d4, d4);
  for (int i = 0; i < d4; ++i) {
    std::vector<Rat> ri = BN.row(i);
    for (int j = 0; j < d4; ++j) {
      std::vector<Rat> rj = BN.row(j);
      Rat acc = 0;
      for (int s = 0; s < sp.g; ++s)
        acc += trd(sp.alg.mul(slot_quat(sp, ri, s), conj(slot_quat(sp, rj, s))));
      G(i, j) = acc;
    }
  }
  return make_lattice(inverse(G) * BN);
}

// type n of an integral l-bounded lattice: [M* : M] = l^{4n}
inline int type_of(const BrandtSpace& sp, const Lattice& M, const Lattice& Ms) {
  Int idx = lat_index(Ms, M);
  unsigned v = valuation(idx, sp.ell);
  check(idx == ipow(sp.ell, v), "dual index is not an l-power");
  check(v % 4 == 0, "dual index is not a 4th power of l");
  return static_cast<int>(v / 4);
}
inline int type_of(const BrandtSpace& sp, const Lattice& M) {
  return type_of(sp, M, dual_lattice(sp, M));
}

// ---------------------------------------------------------------------------
// Gram family: G_alpha[i][j] = trd(alpha * h(b_i, b_j)) for alpha = 1,i,j,k.
// A Z-linear map preserving all four is automatically an O-linear hermitian
// isometry (the trace pairing is nondegenerate and h is left-linear).

inline std::array<QMat, 4> gram_family_q(const BrandtSpace& sp, const QMat& rows) {
  int m = rows.m;
  std::array<QMat, 4> G{QMat(m, m), QMat(m, m), QMat(m, m), QMat(m, m)};
  std::array<Quat, 4> alpha{Quat(1, 0, 0, 0), Quat(0, 1, 0, 0), Quat(0, 0, 1, 0),
                            Quat(0, 0, 0, 1)};
  for (int i = 0; i < m; ++i) {
    std::vector<Rat> ri = rows.row(i);
    for (int j = 0; j < m; ++j) {
      Quat h = h_val(sp, ri, rows.row(j));
      for (int a = 0; a < 4; ++a) G[a](i, j) = trd(sp.alg.mul(alpha[a], h));
    }
  }
  return G;
}

inline std::array<IMat, 4> gram_family(const BrandtSpace& sp, const Lattice& M,
                                       const Rat& scale = Rat(1)) {
  std::array<QMat, 4> Gq = gram_family_q(sp, lat_rows(M));
  std::array<IMat, 4> G;
  for (int a = 0; a < 4; ++a) {
    for (Rat& x : Gq[a].a) x *= scale;
    check(is_integral(Gq[a]), "Gram family not integral");
    G[a] = to_int(Gq[a]);
  }
  return G;
}

// ---------------------------------------------------------------------------
// quotient structure for neighbor enumeration between nested lattices
// Inner < Outer with Outer/Inner = F_l^dq; hscale*h is O-valued on Outer

struct ModQuotient {
  Lattice inner, outer;
  QMat Fb, Fb_inv;           // rows of Fb = basis f of Outer; Inner = D * Fb
  std::vector<int> pos;      // indices a with D_a = l
  int dq = 0;                // = pos.size()
  std::vector<std::array<int64_t, 4>> T;  // dq x dq: hscale*h(f_a,f_b) in O mod l
  std::array<I64Mat, 4> act;              // dq x dq: omega_u action on quotient
  I64Mat Vb;                              // Morita basis of e*Q (dq/2 rows)
};

inline ModQuotient make_quotient(const BrandtSpace& sp, const Lattice& inner,
                                 const Lattice& outer, const Int& hscale) {
  int d4 = sp.dim();
  ModQuotient q;
  q.inner = inner;
  q.outer = outer;
  QMat C = lat_rows(inner) * inverse(lat_rows(outer));
  check(is_integral(C), "make_quotient: inner not inside outer");
  Smith S = snf(to_int(C));
  for (int i = 0; i < d4; ++i) {
    check(S.D(i, i) == 1 || S.D(i, i) == sp.ell, "quotient is not an F_l module");
    if (S.D(i, i) == sp.ell) q.pos.push_back(i);
  }
  q.dq = static_cast<int>(q.pos.size());
  q.Fb = inverse(to_rat(S.V)) * lat_rows(outer);
  q.Fb_inv = inverse(q.Fb);

  q.T.assign(static_cast<size_t>(q.dq) * q.dq, {});
  for (int a = 0; a < q.dq; ++a) {
    std::vector<Rat> fa = q.Fb.row(q.pos[a]);
    for (int b = 0; b < q.dq; ++b) {
      Quat h = h_val(sp, fa, q.Fb.row(q.pos[b]));
      h = h * Rat(hscale);
      q.T[static_cast<size_t>(a) * q.dq + b] = ocoords_mod(sp, h);
    }
  }
  for (int u = 0; u < 4; ++u) {
    q.act[u] = I64Mat(q.dq, q.dq);
    for (int a = 0; a < q.dq; ++a) {
      std::vector<Rat> y = left_mul_row(sp, u, q.Fb.row(q.pos[a]));
      // coordinates over Fb
      for (int b = 0; b < q.dq; ++b) {
        Rat c = 0;
        for (int w = 0; w < d4; ++w) c += y[w] * q.Fb_inv(w, q.pos[b]);
        check(c.get_den() == 1, "outer lattice is not an O-module");
        q.act[u](a, b) = static_cast<int64_t>(
            mpz_fdiv_ui(c.get_num().get_mpz_t(), static_cast<unsigned long>(sp.l)));
      }
    }
  }
  // Morita module V = e * Q
  I64Mat E(q.dq, q.dq);
  for (int u = 0; u < 4; ++u) {
    if (sp.idem[u] == 0) continue;
    for (int a = 0; a < q.dq; ++a)
      for (int b = 0; b < q.dq; ++b)
        E(a, b) = mod_norm(E(a, b) + sp.idem[u] * q.act[u](a, b), sp.l);
  }
  rref_mod(E, sp.l);
  check(2 * E.m == q.dq, "Morita module has wrong dimension");
  q.Vb = E;
  return q;
}

// quotient M*/M for an integral l-bounded lattice (type n, dq = 4n)
inline ModQuotient dual_quotient(const BrandtSpace& sp, const Lattice& M) {
  return make_quotient(sp, M, dual_lattice(sp, M), sp.ell);
}

// the O-span of a set of quotient vectors (rows mod l), as an RREF basis
inline I64Mat o_span(const BrandtSpace& sp, const ModQuotient& q, const I64Mat& rows) {
  I64Mat S(4 * rows.m, q.dq);
  for (int u = 0; u < 4; ++u)
    for (int r = 0; r < rows.m; ++r)
      for (int b = 0; b < q.dq; ++b) {
        int64_t acc = 0;
        for (int a = 0; a < q.dq; ++a) acc = mod_norm(acc + rows(r, a) * q.act[u](a, b), sp.l);
        S(u * rows.m + r, b) = acc;
      }
  rref_mod(S, sp.l);
  return S;
}

// is hscale * h integral on (the lift of) the span of U?
inline bool quotient_integral(const BrandtSpace& sp, const ModQuotient& q, const I64Mat& U) {
  for (int x = 0; x < U.m; ++x)
    for (int y = 0; y < U.m; ++y) {
      std::array<int64_t, 4> s{};
      for (int a = 0; a < q.dq; ++a) {
        if (U(x, a) == 0) continue;
        for (int b = 0; b < q.dq; ++b) {
          if (U(y, b) == 0) continue;
          int64_t f = mod_norm(U(x, a) * U(y, b), sp.l);
          if (f == 0) continue;
          const auto& t = q.T[static_cast<size_t>(a) * q.dq + b];
          for (int w = 0; w < 4; ++w) s[w] = mod_norm(s[w] + f * t[w], sp.l);
        }
      }
      if (s != std::array<int64_t, 4>{0, 0, 0, 0}) return false;
    }
  return true;
}

// U-perp inside the quotient w.r.t. the O/lO-valued pairing from T
inline I64Mat quotient_perp(const BrandtSpace& sp, const ModQuotient& q, const I64Mat& U) {
  I64Mat K(4 * U.m, q.dq);
  for (int x = 0; x < U.m; ++x)
    for (int w = 0; w < 4; ++w)
      for (int b = 0; b < q.dq; ++b) {
        int64_t acc = 0;
        for (int a = 0; a < q.dq; ++a)
          acc = mod_norm(acc + U(x, a) * q.T[static_cast<size_t>(a) * q.dq + b][w], sp.l);
        K(x * 4 + w, b) = acc;
      }
  return kernel_mod(K, sp.l);
}

// lattice generated by `outer-scale` lift of quotient rows together with inner
inline Lattice quotient_to_lattice(const BrandtSpace& sp, const ModQuotient& q, const I64Mat& U) {
  int d4 = sp.dim();
  QMat rows(d4 + U.m, d4);
  QMat inner_rows = lat_rows(q.inner);
  for (int i = 0; i < d4; ++i)
    for (int j = 0; j < d4; ++j) rows(i, j) = inner_rows(i, j);
  for (int r = 0; r < U.m; ++r)
    for (int j = 0; j < d4; ++j) {
      Rat acc = 0;
      for (int a = 0; a < q.dq; ++a)
        if (U(r, a) != 0) acc += Rat(Int(static_cast<long>(U(r, a)))) * q.Fb(q.pos[a], j);
      rows(d4 + r, j) = acc;
    }
  return make_lattice(rows);
}

// ---------------------------------------------------------------------------
// neighbors

// integral l-bounded superlattices M' of M with type(M') = s  (s < type(M)).
// Optionally reports the quotient subspace U = M'/M (RREF rows).
inline std::vector<Lattice> superlattices(
    const BrandtSpace& sp, const ModQuotient& dq, int s,
    const std::function<void(const I64Mat&)>& on_subspace = nullptr) {
  int n = dq.dq / 4;
  check(0 <= s && s < n, "superlattice type out of range");
  int k = n - s;  // Morita dimension of the subspace
  std::vector<Lattice> out;
  for_each_subspace(2 * n, k, sp.l, [&](const I64Mat& W) {
    I64Mat rows(k, dq.dq);
    for (int r = 0; r < k; ++r)
      for (int b = 0; b < dq.dq; ++b) {
        int64_t acc = 0;
        for (int a = 0; a < 2 * n; ++a) acc = mod_norm(acc + W(r, a) * dq.Vb(a, b), sp.l);
        rows(r, b) = acc;
      }
    I64Mat U = o_span(sp, dq, rows);
    check(U.m == 2 * k, "O-span has wrong dimension");
    if (!quotient_integral(sp, dq, U)) return;
    if (on_subspace) on_subspace(U);
    out.push_back(quotient_to_lattice(sp, dq, U));
  });
  check(Int(static_cast<long>(out.size())) == count_neighbors(sp.ell, n, s),
        "superlattice count disagrees with the product formula");
  return out;
}

inline std::vector<Lattice> superlattices(const BrandtSpace& sp, const Lattice& M, int s) {
  ModQuotient dq = dual_quotient(sp, M);
  return superlattices(sp, dq, s);
}

// integral l-bounded sublattices M'' of M with type(M'') = s  (s > type(M)):
// subspaces Ubar of M/lM* with O*Ubar = Ubar and Ubar-perp < Ubar
inline std::vector<Lattice> sublattices(const BrandtSpace& sp, const Lattice& M, int s) {
  Lattice Ms = dual_lattice(sp, M);
  int n = type_of(sp, M, Ms);
  check(n < s && s <= sp.g, "sublattice type out of range");
  QMat lms = lat_rows(Ms);
  for (Rat& x : lms.a) x *= Rat(sp.ell);
  ModQuotient q = make_quotient(sp, make_lattice(lms), M, 1);
  check(q.dq == 4 * (sp.g - n), "sublattice quotient has wrong dimension");
  int k = 2 * (sp.g - n) - (s - n);  // Morita dimension
  std::vector<Lattice> out;
  for_each_subspace(2 * (sp.g - n), k, sp.l, [&](const I64Mat& W) {
    I64Mat rows(k, q.dq);
    for (int r = 0; r < k; ++r)
      for (int b = 0; b < q.dq; ++b) {
        int64_t acc = 0;
        for (int a = 0; a < 2 * (sp.g - n); ++a)
          acc = mod_norm(acc + W(r, a) * q.Vb(a, b), sp.l);
        rows(r, b) = acc;
      }
    I64Mat U = o_span(sp, q, rows);
    check(U.m == 2 * k, "O-span has wrong dimension");
    I64Mat P = quotient_perp(sp, q, U);
    if (!span_contains_mod(U, P, sp.l)) return;
    out.push_back(quotient_to_lattice(sp, q, U));
  });
  check(Int(static_cast<long>(out.size())) == count_neighbors(sp.ell, sp.g - n, sp.g - s),
        "sublattice count disagrees with the product formula");
  return out;
}

// ---------------------------------------------------------------------------
// fingerprint: an isometry invariant used to bucket classes cheaply

inline std::string fingerprint(const BrandtSpace& sp, const std::array<IMat, 4>& G, int type) {
  IMat U = lll_gram(G[0]);
  I64Mat G1 = to_i64(U * G[0] * U.transpose());
  int64_t bound = 2 * sp.l + 2;
  std::vector<int64_t> counts(static_cast<size_t>(bound) + 1, 0);
  for (const auto& v : short_vectors(G1, bound)) ++counts[static_cast<size_t>(gram_norm(G1, v))];
  std::ostringstream os;
  os << type << '|' << det(G[0]).get_num().get_str() << '|';
  for (int64_t c : counts) os << c << ',';
  return os.str();
}

}  // namespace brandt
