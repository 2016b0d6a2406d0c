#pragma once
// Exact counting and mass formulas: the neighbor counts N(l)_{r,s}, special
// zeta values via Bernoulli numbers, the Ekedahl / Hashimoto-Ibukiyama mass
// M_g(p) of principally polarized superspecial points, and its extension to
// the mass of simplexes of arbitrary type in the enhanced isogeny complex.

#include "brandt/arith.hpp"
#include "brandt/matrix.hpp"

#include <vector>

namespace brandt {

// number of type-s neighbors of a type-r vertex (independent of the vertex)
inline Int count_neighbors(const Int& ell, int r, int s) {
  check(0 <= s && s <= r, "count_neighbors needs 0 <= s <= r");
  Rat prod = 1;
  for (int k = 0; k <= r - s - 1; ++k)
    prod *= Rat(ipow(ell, 2 * (r - k)) - 1) / Rat(ipow(ell, k + 1) - 1);
  check(prod.get_den() == 1, "neighbor count is not integral");
  return prod.get_num();
}

// the same count by brute force: isotropic dimension-(r-s) subspaces of the
// standard symplectic space F_l^{2r}, independent cross-check of the product
inline Int count_isotropic_bruteforce(int64_t l, int r, int s) {
  check(0 <= s && s <= r, "count_isotropic_bruteforce needs 0 <= s <= r");
  int d = 2 * r, k = r - s;
  // symplectic form <e_i, e_{i+r}> = 1 for i < r
  auto pair = [&](const I64Mat& W, int a, int b) {
    int64_t acc = 0;
    for (int i = 0; i < r; ++i)
      acc += W(a, i) * W(b, i + r) - W(a, i + r) * W(b, i);
    return ((acc % l) + l) % l;
  };
  Int total = 0;
  for_each_subspace(d, k, l, [&](const I64Mat& W) {
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b)
        if (pair(W, a, b) != 0) return;
    ++total;
  });
  return total;
}

inline Int binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  Int b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

// Bernoulli number B_n (B_1 = -1/2 convention; only even n are used here)
inline Rat bernoulli(unsigned n) {
  std::vector<Rat> B(n + 1);
  for (unsigned m = 0; m <= n; ++m) {
    if (m == 0) {
      B[0] = 1;
      continue;
    }
    Rat s = 0;
    for (unsigned j = 0; j < m; ++j) s += Rat(binomial(m + 1, j)) * B[j];
    B[m] = -s / Rat(Int(m + 1));
  }
  return B[n];
}

// zeta(1 - 2k) = -B_{2k} / (2k) for k >= 1
inline Rat zeta_neg(unsigned k) {
  check(k >= 1, "zeta_neg needs k >= 1");
  return -bernoulli(2 * k) / Rat(Int(2 * k));
}

// mass of the principally polarized superspecial locus in dimension g
inline Rat superspecial_mass(int g, const Int& p) {
  Rat m = Rat(1) / Rat(ipow(Int(2), g));
  if ((g * (g + 1) / 2) % 2 == 1) m = -m;
  for (int k = 1; k <= g; ++k) m *= zeta_neg(static_cast<unsigned>(k));
  for (int k = 1; k <= g; ++k) {
    Int t = ipow(p, k);
    m *= Rat(k % 2 == 0 ? Int(t + 1) : Int(t - 1));
  }
  check(m > 0, "superspecial mass must be positive");
  return m;
}

// mass of the simplexes of type (r_0,...,r_k):
//   M_g(p) * N(l)_{g, g-r_0} / N(l)_{r_0, 0} * prod_i N(l)_{r_{i-1}, r_i}
inline Rat simplex_mass(int g, const Int& ell, const Int& p, const std::vector<int>& type) {
  check(!type.empty(), "simplex type must be nonempty");
  for (size_t i = 0; i + 1 < type.size(); ++i)
    check(type[i] > type[i + 1], "simplex type must be strictly decreasing");
  for (int r : type) check(0 <= r && r <= g, "type entry out of range");
  Rat m = superspecial_mass(g, p);
  m *= Rat(count_neighbors(ell, g, g - type[0]));
  m /= Rat(count_neighbors(ell, type[0], 0));
  for (size_t i = 1; i < type.size(); ++i) m *= Rat(count_neighbors(ell, type[i - 1], type[i]));
  return m;
}

}  // namespace brandt
