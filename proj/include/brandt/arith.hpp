#pragma once
// Exact arithmetic ground layer: GMP typedefs and small number-theory helpers.

#include <gmpxx.h>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace brandt {

using Int = mpz_class;
using Rat = mpq_class;

// Internal invariant violations (CLI maps these to exit code 3).
struct invariant_error : std::runtime_error {
  explicit invariant_error(const std::string& msg) : std::runtime_error(msg) {}
};

inline void check(bool cond, const char* msg) {
  if (!cond) throw invariant_error(msg);
}

inline Int ipow(Int base, unsigned e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline long to_long(const Int& x) {
  if (!x.fits_slong_p()) throw invariant_error("integer exceeds long range");
  return x.get_si();
}

inline int64_t to_i64(const Int& x) { return static_cast<int64_t>(to_long(x)); }

// exact square root; throws if x is not a perfect square
inline Int isqrt_exact(const Int& x) {
  if (x < 0) throw invariant_error("isqrt of negative");
  Int r, rem;
  mpz_sqrtrem(r.get_mpz_t(), rem.get_mpz_t(), x.get_mpz_t());
  if (rem != 0) throw invariant_error("not a perfect square");
  return r;
}

// v_p(x) for x != 0
inline unsigned valuation(Int x, const Int& p) {
  if (x == 0) throw invariant_error("valuation of zero");
  unsigned v = 0;
  while (mpz_divisible_p(x.get_mpz_t(), p.get_mpz_t())) {
    x /= p;
    ++v;
  }
  return v;
}

inline bool is_prime(const Int& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;  // exact for our tiny inputs
}

// ascending prime factorization of n > 0; throws if not squarefree when required by caller
inline std::vector<Int> prime_factors(Int n) {
  std::vector<Int> ps;
  if (n <= 0) throw invariant_error("factoring nonpositive integer");
  for (Int p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
      ps.push_back(p);
      while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) n /= p;
    }
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

inline bool is_squarefree(const Int& n) {
  Int m = n;
  for (const Int& p : prime_factors(n))
    if (mpz_divisible_p(m.get_mpz_t(), Int(p * p).get_mpz_t())) return false;
  return true;
}

// Legendre symbol (a|p) for odd prime p
inline int legendre(Int a, const Int& p) {
  a %= p;
  if (a < 0) a += p;
  if (a == 0) return 0;
  return mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
}

// mod-p inverse for small moduli
inline int64_t mod_inv(int64_t a, int64_t p) {
  a %= p;
  if (a < 0) a += p;
  int64_t t = 0, newt = 1, r = p, newr = a;
  while (newr != 0) {
    int64_t q = r / newr;
    t -= q * newt;
    std::swap(t, newt);
    r -= q * newr;
    std::swap(r, newr);
  }
  if (r != 1) throw invariant_error("mod_inv: not invertible");
  return ((t % p) + p) % p;
}

inline int64_t mod_norm(int64_t a, int64_t p) {
  a %= p;
  return a < 0 ? a + p : a;
}

inline std::string rat_str(const Rat& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace brandt
