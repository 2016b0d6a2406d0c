#pragma once
// Short-vector enumeration for positive definite integral Gram matrices
// (Fincke-Pohst). The tree search runs on a floating-point Cholesky
// decomposition with a generous pruning slack; every candidate is verified
// exactly in 64-bit arithmetic before it is reported, so the output is exact
// as long as the slack dominates the rounding error (norms here are small
// integers, so it does by a wide margin).

#include "brandt/matrix.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace brandt {

inline int64_t gram_norm(const I64Mat& G, const std::vector<int64_t>& x) {
  int n = G.m;
  int64_t s = 0;
  for (int i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < n; ++j) s += x[i] * G(i, j) * x[j];
  }
  return s;
}

inline int64_t gram_pair(const I64Mat& G, const std::vector<int64_t>& x,
                         const std::vector<int64_t>& y) {
  int n = G.m;
  int64_t s = 0;
  for (int i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < n; ++j) s += x[i] * G(i, j) * y[j];
  }
  return s;
}

// All x != 0 with x G x^T <= bound (both signs reported).
inline std::vector<std::vector<int64_t>> short_vectors(const I64Mat& G, int64_t bound) {
  const int n = G.m;
  check(n == G.n && n > 0, "short_vectors: square Gram required");
  const double slack = 0.25;

  // Fincke-Pohst quadratic-completion coefficients:
  //   x G x^T = sum_i q[i][i] * (x_i + sum_{j>i} q[i][j] x_j)^2
  std::vector<std::vector<double>> q(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) q[i][j] = static_cast<double>(G(i, j));
  for (int i = 0; i < n; ++i) {
    check(q[i][i] > 0, "short_vectors: Gram not positive definite");
    for (int j = i + 1; j < n; ++j) q[j][i] = q[i][j];      // save raw column
    for (int j = i + 1; j < n; ++j) q[i][j] /= q[i][i];     // divide pivot row
    for (int k = i + 1; k < n; ++k)                          // eliminate
      for (int l = k; l < n; ++l) q[k][l] -= q[k][i] * q[i][l];
  }

  std::vector<int64_t> x(n, 0);
  std::vector<std::vector<int64_t>> out;

  std::function<void(int, double)> rec = [&](int i, double budget) {
    double Ui = 0;
    for (int j = i + 1; j < n; ++j) Ui += q[i][j] * static_cast<double>(x[j]);
    double rad2 = (budget + slack) / q[i][i];
    if (rad2 < 0) return;
    double rad = std::sqrt(rad2);
    int64_t lo = static_cast<int64_t>(std::ceil(-rad - Ui - 1e-9));
    int64_t hi = static_cast<int64_t>(std::floor(rad - Ui + 1e-9));
    for (int64_t xi = lo; xi <= hi; ++xi) {
      x[i] = xi;
      double d = static_cast<double>(xi) + Ui;
      double used = q[i][i] * d * d;
      if (i == 0) {
        int64_t nrm = gram_norm(G, x);
        if (nrm > 0 && nrm <= bound) out.push_back(x);
      } else {
        rec(i - 1, budget - used);
      }
    }
    x[i] = 0;
  };
  rec(n - 1, static_cast<double>(bound));
  return out;
}

}  // namespace brandt
