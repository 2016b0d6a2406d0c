#pragma once
// Definite rational quaternion algebras H = (a,b | Q), a,b < 0: basis 1,i,j,k
// with i^2 = a, j^2 = b, k = ij = -ji. Ramification is certified with Hilbert
// symbols; construct_algebra searches for a presentation with a prescribed
// squarefree reduced discriminant N (odd number of prime factors).

#include "brandt/arith.hpp"
#include "brandt/matrix.hpp"

#include <array>
#include <optional>

namespace brandt {

struct Quat {
  std::array<Rat, 4> c{};  // coordinates over 1, i, j, k

  Quat() = default;
  Quat(Rat x0, Rat x1, Rat x2, Rat x3) : c{std::move(x0), std::move(x1), std::move(x2), std::move(x3)} {}

  static Quat one() { return Quat(1, 0, 0, 0); }

  bool operator==(const Quat& o) const { return c == o.c; }
  Quat operator+(const Quat& o) const {
    Quat r;
    for (int t = 0; t < 4; ++t) r.c[t] = c[t] + o.c[t];
    return r;
  }
  Quat operator-(const Quat& o) const {
    Quat r;
    for (int t = 0; t < 4; ++t) r.c[t] = c[t] - o.c[t];
    return r;
  }
  Quat operator*(const Rat& s) const {
    Quat r;
    for (int t = 0; t < 4; ++t) r.c[t] = c[t] * s;
    return r;
  }
  bool is_zero() const {
    for (const Rat& x : c)
      if (x != 0) return false;
    return true;
  }
};

// standard involution x -> trd(x) - x
inline Quat conj(const Quat& q) { return Quat(q.c[0], -q.c[1], -q.c[2], -q.c[3]); }
inline Rat trd(const Quat& q) { return 2 * q.c[0]; }

struct QuaternionAlgebra {
  Int a, b;  // i^2 = a, j^2 = b, both negative
  Int disc;  // reduced discriminant N

  Quat mul(const Quat& x, const Quat& y) const {
    // multiplication table: ij=k, ji=-k, jk=-b i, kj=b i, ki=-a j, ik=a j, k^2=-ab
    const Rat A(a), B(b);
    Quat r;
    r.c[0] = x.c[0] * y.c[0] + A * x.c[1] * y.c[1] + B * x.c[2] * y.c[2] - A * B * x.c[3] * y.c[3];
    r.c[1] = x.c[0] * y.c[1] + x.c[1] * y.c[0] - B * x.c[2] * y.c[3] + B * x.c[3] * y.c[2];
    r.c[2] = x.c[0] * y.c[2] + x.c[2] * y.c[0] + A * x.c[1] * y.c[3] - A * x.c[3] * y.c[1];
    r.c[3] = x.c[0] * y.c[3] + x.c[3] * y.c[0] + x.c[1] * y.c[2] - x.c[2] * y.c[1];
    return r;
  }

  Rat nrd(const Quat& q) const {
    return q.c[0] * q.c[0] - Rat(a) * q.c[1] * q.c[1] - Rat(b) * q.c[2] * q.c[2] +
           Rat(a * b) * q.c[3] * q.c[3];
  }

  Quat inv(const Quat& q) const {
    Rat n = nrd(q);
    check(n != 0, "inverse of zero quaternion");
    return conj(q) * (Rat(1) / n);
  }

  // 4x4 matrix of left multiplication by q on row vectors (x -> x, coords over 1,i,j,k):
  // row u = coords of q * e_u ... we use the convention v |-> coords(q * quat(v)) as
  // vec * L(q); i.e. L(q)[u][v] = coefficient of e_v in q*e_u.
  QMat left_mult_matrix(const Quat& q) const {
    QMat L(4, 4);
    for (int u = 0; u < 4; ++u) {
      Quat e;
      e.c[u] = 1;
      Quat prod = mul(q, e);
      for (int v = 0; v < 4; ++v) L(u, v) = prod.c[v];
    }
    return L;
  }
};

// ---------------------------------------------------------------------------
// Hilbert symbols

// (a,b)_p for an odd prime p; a,b nonzero integers
inline int hilbert_odd(Int a, Int b, const Int& p) {
  unsigned al = valuation(a, p), be = valuation(b, p);
  Int u = a / ipow(p, al), v = b / ipow(p, be);
  int eps = ((p - 1) / 2 % 2 == 1) ? 1 : 0;  // (p-1)/2 mod 2
  int sign = 1;
  if ((al % 2) && (be % 2) && eps) sign = -sign;
  if (be % 2)
    if (legendre(u, p) < 0) sign = -sign;
  if (al % 2)
    if (legendre(v, p) < 0) sign = -sign;
  return sign;
}

// (a,b)_2; a,b nonzero integers
inline int hilbert_two(Int a, Int b) {
  Int two = 2;
  unsigned al = valuation(a, two), be = valuation(b, two);
  Int u = a / ipow(two, al), v = b / ipow(two, be);
  auto eps = [](const Int& x) { return to_long(((x - 1) / 2) % 2) != 0 ? 1 : 0; };    // (u-1)/2 mod 2
  auto om = [](const Int& x) { return to_long(((x * x - 1) / 8) % 2) != 0 ? 1 : 0; }; // (u^2-1)/8 mod 2
  int e = eps(u) * eps(v) + static_cast<int>(al) * om(v) + static_cast<int>(be) * om(u);
  return (e % 2 == 0) ? 1 : -1;
}

inline int hilbert(const Int& a, const Int& b, const Int& p) {
  return (p == 2) ? hilbert_two(a, b) : hilbert_odd(a, b, p);
}

// finite ramified primes of (a,b | Q); for a,b < 0 the infinite place is always ramified
inline std::vector<Int> ramified_primes(const Int& a, const Int& b) {
  Int prod = 2 * a * b;
  if (prod < 0) prod = -prod;
  std::vector<Int> cand = prime_factors(prod);
  std::vector<Int> ram;
  for (const Int& p : cand)
    if (hilbert(a, b, p) == -1) ram.push_back(p);
  return ram;
}

// Find a definite presentation (a,b) with reduced discriminant exactly N.
// Precondition: N squarefree with an odd number of prime factors (else error).
// Fast path p = 2 -> (-1,-1), p ≡ 3 (mod 4) -> (-1,-p); otherwise search pairs
// by increasing |ab| and certify with Hilbert symbols.
inline QuaternionAlgebra construct_algebra(const Int& N) {
  if (N <= 1 || !is_squarefree(N)) throw invariant_error("discriminant must be squarefree > 1");
  std::vector<Int> ps = prime_factors(N);
  if (ps.size() % 2 == 0)
    throw invariant_error("discriminant must have an odd number of prime factors");

  auto try_pair = [&](const Int& a, const Int& b) -> bool {
    return ramified_primes(a, b) == ps;
  };

  if (N == 2) return QuaternionAlgebra{-1, -1, N};
  if (is_prime(N) && N % 4 == 3) {
    QuaternionAlgebra A{-1, -N, N};
    check(try_pair(A.a, A.b), "preset presentation failed Hilbert certification");
    return A;
  }
  for (Int prod = 1; prod <= 4 * N * N + 64; ++prod) {
    for (Int d = 1; d * d <= prod; ++d) {
      if (prod % d != 0) continue;
      // try (a,b) = (-d, -prod/d); the symbol is symmetric so |a| <= |b| suffices
      Int a = -d, b = -(prod / d);
      if (try_pair(a, b)) return QuaternionAlgebra{a, b, N};
    }
  }
  throw invariant_error("no definite presentation found (search bound exceeded)");
}

}  // namespace brandt
