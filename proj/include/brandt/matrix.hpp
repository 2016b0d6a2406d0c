#pragma once
// Dense exact matrices (GMP integers / rationals / int64) with the normal-form
// toolbox the lattice layer runs on: HNF, SNF with transforms, determinants,
// inverses, and F_p Gaussian elimination.

#include "brandt/arith.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <utility>
#include <vector>

namespace brandt {

template <class T>
struct Mat {
  int m = 0, n = 0;
  std::vector<T> a;

  Mat() = default;
  Mat(int m_, int n_) : m(m_), n(n_), a(static_cast<size_t>(m_) * n_) {}
  Mat(int m_, int n_, std::initializer_list<T> xs) : m(m_), n(n_), a(xs) {
    check(static_cast<int>(a.size()) == m * n, "Mat initializer size mismatch");
  }

  T& operator()(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  const T& operator()(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

  bool operator==(const Mat& o) const { return m == o.m && n == o.n && a == o.a; }

  static Mat identity(int k) {
    Mat r(k, k);
    for (int i = 0; i < k; ++i) r(i, i) = T(1);
    return r;
  }

  Mat transpose() const {
    Mat r(n, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  std::vector<T> row(int i) const {
    return std::vector<T>(a.begin() + static_cast<size_t>(i) * n,
                          a.begin() + static_cast<size_t>(i + 1) * n);
  }

  void swap_rows(int i, int j) {
    if (i == j) return;
    for (int k = 0; k < n; ++k) std::swap((*this)(i, k), (*this)(j, k));
  }
};

using IMat = Mat<Int>;
using QMat = Mat<Rat>;
using I64Mat = Mat<int64_t>;

template <class T>
Mat<T> operator*(const Mat<T>& A, const Mat<T>& B) {
  check(A.n == B.m, "matrix product shape mismatch");
  Mat<T> C(A.m, B.n);
  for (int i = 0; i < A.m; ++i)
    for (int k = 0; k < A.n; ++k) {
      const T& x = A(i, k);
      if (x == T(0)) continue;
      for (int j = 0; j < B.n; ++j) C(i, j) += x * B(k, j);
    }
  return C;
}

template <class T>
Mat<T> operator+(const Mat<T>& A, const Mat<T>& B) {
  check(A.m == B.m && A.n == B.n, "matrix sum shape mismatch");
  Mat<T> C(A.m, A.n);
  for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = A.a[i] + B.a[i];
  return C;
}

inline QMat to_rat(const IMat& A) {
  QMat B(A.m, A.n);
  for (size_t i = 0; i < A.a.size(); ++i) B.a[i] = Rat(A.a[i]);
  return B;
}

inline I64Mat to_i64(const IMat& A) {
  I64Mat B(A.m, A.n);
  for (size_t i = 0; i < A.a.size(); ++i) B.a[i] = to_i64(A.a[i]);
  return B;
}

inline IMat to_int(const I64Mat& A) {
  IMat B(A.m, A.n);
  for (size_t i = 0; i < A.a.size(); ++i) B.a[i] = Int(static_cast<long>(A.a[i]));
  return B;
}

// split a rational matrix as (integer matrix, common denominator)
inline std::pair<IMat, Int> clear_denominators(const QMat& A) {
  Int d = 1;
  for (const Rat& x : A.a) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.get_den().get_mpz_t());
  IMat B(A.m, A.n);
  for (size_t i = 0; i < A.a.size(); ++i) {
    Rat s = A.a[i] * Rat(d);
    s.canonicalize();
    check(s.get_den() == 1, "clear_denominators failed");
    B.a[i] = s.get_num();
  }
  return {B, d};
}

// ---------------------------------------------------------------------------
// rational Gaussian elimination: det / inverse / solve

inline Rat det(QMat A) {
  check(A.m == A.n, "det of non-square");
  Rat d = 1;
  for (int c = 0; c < A.n; ++c) {
    int piv = -1;
    for (int r = c; r < A.m; ++r)
      if (A(r, c) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return Rat(0);
    if (piv != c) {
      A.swap_rows(piv, c);
      d = -d;
    }
    d *= A(c, c);
    Rat inv = Rat(1) / A(c, c);
    for (int r = c + 1; r < A.m; ++r) {
      if (A(r, c) == 0) continue;
      Rat f = A(r, c) * inv;
      for (int k = c; k < A.n; ++k) A(r, k) -= f * A(c, k);
    }
  }
  return d;
}

inline Rat det(const IMat& A) { return det(to_rat(A)); }

inline QMat inverse(QMat A) {
  check(A.m == A.n, "inverse of non-square");
  int n = A.n;
  QMat B = QMat::identity(n);
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (A(r, c) != 0) {
        piv = r;
        break;
      }
    check(piv >= 0, "inverse of singular matrix");
    A.swap_rows(piv, c);
    B.swap_rows(piv, c);
    Rat inv = Rat(1) / A(c, c);
    for (int k = 0; k < n; ++k) {
      A(c, k) *= inv;
      B(c, k) *= inv;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || A(r, c) == 0) continue;
      Rat f = A(r, c);
      for (int k = 0; k < n; ++k) {
        A(r, k) -= f * A(c, k);
        B(r, k) -= f * B(c, k);
      }
    }
  }
  return B;
}

inline bool is_integral(const QMat& A) {
  for (const Rat& x : A.a)
    if (x.get_den() != 1) return false;
  return true;
}

inline IMat to_int(const QMat& A) {
  IMat B(A.m, A.n);
  for (size_t i = 0; i < A.a.size(); ++i) {
    check(A.a[i].get_den() == 1, "to_int on non-integral matrix");
    B.a[i] = A.a[i].get_num();
  }
  return B;
}

// ---------------------------------------------------------------------------
// Hermite normal form (rows = generators). Result is the canonical
// row-echelon basis: pivots positive, entries above a pivot reduced into
// [0, pivot). Zero rows are dropped.

inline IMat hnf(IMat A) {
  int m = A.m, n = A.n;
  int row = 0;
  for (int col = 0; col < n && row < m; ++col) {
    // clear the column below `row` by Euclid
    for (;;) {
      int piv = -1;
      for (int r = row; r < m; ++r)
        if (A(r, col) != 0) {
          if (piv < 0 || abs(A(r, col)) < abs(A(piv, col))) piv = r;
        }
      if (piv < 0) break;
      A.swap_rows(piv, row);
      bool clean = true;
      for (int r = row + 1; r < m; ++r) {
        if (A(r, col) == 0) continue;
        Int q = A(r, col) / A(row, col);  // truncated division is fine: we loop
        if (q != 0)
          for (int k = col; k < n; ++k) A(r, k) -= q * A(row, k);
        if (A(r, col) != 0) clean = false;
      }
      if (clean) break;
    }
    if (A(row, col) == 0) continue;  // column identically zero below
    if (A(row, col) < 0)
      for (int k = col; k < n; ++k) A(row, k) = -A(row, k);
    // reduce entries above the pivot
    for (int r = 0; r < row; ++r) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), A(r, col).get_mpz_t(), A(row, col).get_mpz_t());
      if (q != 0)
        for (int k = col; k < n; ++k) A(r, k) -= q * A(row, k);
    }
    ++row;
  }
  IMat H(row, n);
  for (int i = 0; i < row; ++i)
    for (int j = 0; j < n; ++j) H(i, j) = A(i, j);
  return H;
}

// ---------------------------------------------------------------------------
// Smith normal form with transforms: U * A * V = D, U,V unimodular,
// D diagonal with d_i | d_{i+1}, d_i >= 0.

struct Smith {
  IMat D, U, V;
};

inline Smith snf(IMat A) {
  int m = A.m, n = A.n;
  IMat U = IMat::identity(m), V = IMat::identity(n);
  auto col_op = [&](IMat& M, int c1, int c2, const Int& q) {  // col c2 -= q*col c1
    for (int r = 0; r < M.m; ++r) M(r, c2) -= q * M(r, c1);
  };
  auto swap_cols = [&](IMat& M, int c1, int c2) {
    for (int r = 0; r < M.m; ++r) std::swap(M(r, c1), M(r, c2));
  };
  int k = 0;
  while (k < m && k < n) {
    // find a nonzero pivot in the trailing block
    int pi = -1, pj = -1;
    for (int i = k; i < m && pi < 0; ++i)
      for (int j = k; j < n; ++j)
        if (A(i, j) != 0) {
          pi = i;
          pj = j;
          break;
        }
    if (pi < 0) break;
    A.swap_rows(pi, k);
    U.swap_rows(pi, k);
    swap_cols(A, pj, k);
    swap_cols(V, pj, k);
    // clear row and column k
    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (int i = k + 1; i < m; ++i) {
        if (A(i, k) == 0) continue;
        Int q = A(i, k) / A(k, k);
        if (q != 0) {
          for (int j = 0; j < n; ++j) A(i, j) -= q * A(k, j);
          for (int j = 0; j < m; ++j) U(i, j) -= q * U(k, j);
        }
        if (A(i, k) != 0) {  // remainder smaller: swap up and restart
          A.swap_rows(i, k);
          U.swap_rows(i, k);
          dirty = true;
        }
      }
      for (int j = k + 1; j < n; ++j) {
        if (A(k, j) == 0) continue;
        Int q = A(k, j) / A(k, k);
        if (q != 0) {
          col_op(A, k, j, q);
          col_op(V, k, j, q);
        }
        if (A(k, j) != 0) {
          swap_cols(A, j, k);
          swap_cols(V, j, k);
          dirty = true;
        }
      }
    }
    ++k;
  }
  // enforce divisibility d_i | d_{i+1}
  for (int i = 0; i + 1 < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      if (A(j, j) % A(i, i) == 0) continue;
      // add column j to column i, then re-reduce the 2x2 corner
      for (int r = 0; r < m; ++r) A(r, i) += A(r, j);
      for (int r = 0; r < n; ++r) V(r, i) += V(r, j);
      // now A(j,i) = d_j != 0: redo elimination on rows/cols i..;
      // simplest: recurse on the whole trailing block
      IMat sub(m - i, n - i);
      for (int r = i; r < m; ++r)
        for (int c = i; c < n; ++c) sub(r - i, c - i) = A(r, c);
      Smith s = snf(sub);
      // splice transforms back
      IMat U2 = IMat::identity(m), V2 = IMat::identity(n);
      for (int r = 0; r < m - i; ++r)
        for (int c = 0; c < m - i; ++c) U2(r + i, c + i) = s.U(r, c);
      for (int r = 0; r < n - i; ++r)
        for (int c = 0; c < n - i; ++c) V2(r + i, c + i) = s.V(r, c);
      U = U2 * U;
      V = V * V2;
      for (int r = i; r < m; ++r)
        for (int c = i; c < n; ++c) A(r, c) = s.D(r - i, c - i);
      break;
    }
  }
  for (int i = 0; i < k; ++i)
    if (A(i, i) < 0) {
      for (int j = 0; j < n; ++j) V(j, i) = -V(j, i);
      A(i, i) = -A(i, i);
    }
  return Smith{std::move(A), std::move(U), std::move(V)};
}

// ---------------------------------------------------------------------------
// F_p linear algebra on small dense int64 matrices (p small prime).

// reduced row echelon form in place; returns pivot columns
inline std::vector<int> rref_mod(I64Mat& A, int64_t p) {
  for (int64_t& x : A.a) x = mod_norm(x, p);
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < A.n && row < A.m; ++col) {
    int piv = -1;
    for (int r = row; r < A.m; ++r)
      if (mod_norm(A(r, col), p) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    A.swap_rows(piv, row);
    int64_t inv = mod_inv(A(row, col), p);
    for (int k = 0; k < A.n; ++k) A(row, k) = mod_norm(A(row, k) * inv % p, p);
    for (int r = 0; r < A.m; ++r) {
      if (r == row) continue;
      int64_t f = mod_norm(A(r, col), p);
      if (f == 0) continue;
      for (int k = 0; k < A.n; ++k) A(r, k) = mod_norm(A(r, k) - f * A(row, k) % p, p);
    }
    pivots.push_back(col);
    ++row;
  }
  A.m = row;  // drop zero rows (vector keeps extra storage; fine)
  return pivots;
}

// basis (as rows) of the right kernel {x : A x = 0 mod p}
inline I64Mat kernel_mod(I64Mat A, int64_t p) {
  int n = A.n;
  std::vector<int> piv = rref_mod(A, p);
  std::vector<bool> is_piv(n, false);
  for (int c : piv) is_piv[c] = true;
  I64Mat K(n - static_cast<int>(piv.size()), n);
  int kr = 0;
  for (int c = 0; c < n; ++c) {
    if (is_piv[c]) continue;
    K(kr, c) = 1;
    for (size_t r = 0; r < piv.size(); ++r) K(kr, piv[r]) = mod_norm(-A(static_cast<int>(r), c), p);
    ++kr;
  }
  return K;
}

inline int rank_mod(I64Mat A, int64_t p) {
  return static_cast<int>(rref_mod(A, p).size());
}

// canonical key of the row span of A over F_p (RREF rows, zero rows dropped)
inline std::vector<int64_t> span_key_mod(I64Mat A, int64_t p) {
  rref_mod(A, p);
  std::vector<int64_t> key;
  key.reserve(static_cast<size_t>(A.m) * A.n + 1);
  key.push_back(A.m);
  for (int i = 0; i < A.m; ++i)
    for (int j = 0; j < A.n; ++j) key.push_back(A(i, j));
  return key;
}

// is the row span of B contained in the row span of A (both mod p)?
inline bool span_contains_mod(I64Mat A, const I64Mat& B, int64_t p) {
  int ra = rank_mod(A, p);
  I64Mat stacked(A.m + B.m, A.n);
  for (int i = 0; i < A.m; ++i)
    for (int j = 0; j < A.n; ++j) stacked(i, j) = A(i, j);
  for (int i = 0; i < B.m; ++i)
    for (int j = 0; j < B.n; ++j) stacked(A.m + i, j) = B(i, j);
  return rank_mod(stacked, p) == ra;
}

struct VecHash {
  size_t operator()(const std::vector<int64_t>& v) const {
    size_t h = 1469598103934665603ull;
    for (int64_t x : v) {
      h ^= static_cast<size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

inline Int round_nearest(const Rat& x) {
  Rat y = x + Rat(1, 2);
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), y.get_num().get_mpz_t(), y.get_den().get_mpz_t());
  return q;
}

// exact LLL (delta = 3/4) on a positive definite integral Gram matrix;
// returns a unimodular U with U G U^T reduced.  Bases coming out of HNF can
// be badly skewed, which makes short-vector enumeration explode; reducing
// first keeps the diagonal near the successive minima.
inline IMat lll_gram(const IMat& G0) {
  int n = G0.m;
  IMat G = G0;
  IMat U = IMat::identity(n);
  QMat mu(n, n);
  std::vector<Rat> Bst(n);
  auto gso = [&]() {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < i; ++j) {
        Rat m = Rat(G(i, j));
        for (int k = 0; k < j; ++k) m -= mu(i, k) * mu(j, k) * Bst[k];
        check(Bst[j] != 0, "lll: degenerate Gram matrix");
        mu(i, j) = m / Bst[j];
      }
      Rat b = Rat(G(i, i));
      for (int k = 0; k < i; ++k) b -= mu(i, k) * mu(i, k) * Bst[k];
      check(b > 0, "lll: Gram matrix not positive definite");
      Bst[i] = b;
    }
  };
  gso();
  int k = 1;
  long guard = 0;
  while (k < n) {
    check(++guard < 1000000, "lll: not terminating");
    for (int j = k - 1; j >= 0; --j) {
      Int q = round_nearest(mu(k, j));
      if (q == 0) continue;
      for (int c = 0; c < n; ++c) {
        G(k, c) -= q * G(j, c);
        U(k, c) -= q * U(j, c);
      }
      for (int r = 0; r < n; ++r) G(r, k) -= q * G(r, j);
      gso();
    }
    if (4 * Bst[k] >= (Rat(3) - 4 * mu(k, k - 1) * mu(k, k - 1)) * Bst[k - 1]) {
      ++k;
    } else {
      for (int c = 0; c < n; ++c) {
        std::swap(G(k, c), G(k - 1, c));
        std::swap(U(k, c), U(k - 1, c));
      }
      for (int r = 0; r < n; ++r) std::swap(G(r, k), G(r, k - 1));
      gso();
      k = std::max(k - 1, 1);
    }
  }
  return U;
}

// ---------------------------------------------------------------------------
// subspace enumeration over F_p (RREF representatives)

inline void for_each_subspace(int d, int k, int64_t p,
                              const std::function<void(const I64Mat&)>& f) {
  check(0 <= k && k <= d, "subspace dimension out of range");
  if (k == 0) {
    f(I64Mat(0, d));
    return;
  }
  std::vector<int> piv(k);
  for (int i = 0; i < k; ++i) piv[i] = i;
  for (;;) {
    // free positions: (i, c) with c > piv[i], c not a pivot
    std::vector<bool> is_piv(d, false);
    for (int c : piv) is_piv[c] = true;
    std::vector<std::pair<int, int>> free_pos;
    for (int i = 0; i < k; ++i)
      for (int c = piv[i] + 1; c < d; ++c)
        if (!is_piv[c]) free_pos.push_back({i, c});
    I64Mat W(k, d);
    for (int i = 0; i < k; ++i) W(i, piv[i]) = 1;
    std::vector<int64_t> odo(free_pos.size(), 0);
    for (;;) {
      f(W);
      size_t t = 0;
      while (t < odo.size()) {
        if (++odo[t] < p) {
          W(free_pos[t].first, free_pos[t].second) = odo[t];
          break;
        }
        odo[t] = 0;
        W(free_pos[t].first, free_pos[t].second) = 0;
        ++t;
      }
      if (t == odo.size()) break;
    }
    // next pivot combination
    int i = k - 1;
    while (i >= 0 && piv[i] == d - k + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (int j = i + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
  }
}

}  // namespace brandt
