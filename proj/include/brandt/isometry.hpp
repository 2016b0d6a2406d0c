#pragma once
// Isometries between hermitian O-lattices via their trace Gram family
//   G_alpha[i][j] = trd(alpha * h(b_i, b_j)),  alpha in {1, i, j, k}.
// An integer matrix U with U A_alpha U^T = B_alpha for all alpha transports
// the B-lattice onto the A-lattice as an O-linear hermitian isometry
// (O-linearity is forced by nondegeneracy of h; U is unimodular whenever
// det A_1 = det B_1 != 0).  The search is a Plesken-Souvignier style
// backtracking: rows are chosen among short vectors of A_1 with the right
// norm, pruned by all pair constraints in both orders.

#include "brandt/matrix.hpp"
#include "brandt/shortvec.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace brandt {

inline std::array<I64Mat, 4> fam64(const std::array<IMat, 4>& G) {
  return {to_i64(G[0]), to_i64(G[1]), to_i64(G[2]), to_i64(G[3])};
}

namespace detail {

inline IMat mat_of(const I64Mat& A) {
  IMat B(A.m, A.n);
  for (size_t i = 0; i < A.a.size(); ++i) B.a[i] = Int(static_cast<long>(A.a[i]));
  return B;
}

inline std::array<I64Mat, 4> conjugate_family(const std::array<I64Mat, 4>& A, const IMat& U) {
  IMat Ut = U.transpose();
  std::array<I64Mat, 4> out;
  for (int al = 0; al < 4; ++al) out[al] = to_i64(U * mat_of(A[al]) * Ut);
  return out;
}

// all U with U * A_alpha * U^T = B_alpha over the reduced bases
inline std::vector<I64Mat> isometries_core(const std::array<I64Mat, 4>& A,
                                           const std::array<I64Mat, 4>& B, bool first_only) {
  const int n = A[0].m;
  std::vector<I64Mat> result;

  int64_t maxd = 0;
  for (int r = 0; r < n; ++r) maxd = std::max(maxd, B[0](r, r));
  std::vector<std::vector<int64_t>> vecs = short_vectors(A[0], maxd);
  const int nc = static_cast<int>(vecs.size());

  // P[alpha][c] = A_alpha * v_c^T
  std::array<std::vector<std::vector<int64_t>>, 4> P;
  for (int al = 0; al < 4; ++al) {
    P[al].assign(nc, std::vector<int64_t>(n, 0));
    for (int c = 0; c < nc; ++c)
      for (int i = 0; i < n; ++i) {
        int64_t s = 0;
        for (int j = 0; j < n; ++j) s += A[al](i, j) * vecs[c][j];
        P[al][c][i] = s;
      }
  }
  auto dot = [&](const std::vector<int64_t>& x, const std::vector<int64_t>& y) {
    int64_t s = 0;
    for (int i = 0; i < n; ++i) s += x[i] * y[i];
    return s;
  };

  std::vector<std::vector<int>> cand(n);
  for (int c = 0; c < nc; ++c) {
    int64_t nrm = dot(vecs[c], P[0][c]);
    for (int r = 0; r < n; ++r)
      if (nrm == B[0](r, r)) cand[r].push_back(c);
  }
  for (int r = 0; r < n; ++r)
    if (cand[r].empty()) return result;

  std::vector<int> chosen(n, -1);
  std::vector<I64Mat>& out = result;
  std::function<bool(int)> rec = [&](int r) -> bool {
    if (r == n) {
      I64Mat U(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) U(i, j) = vecs[chosen[i]][j];
      out.push_back(std::move(U));
      return first_only;
    }
    for (int c : cand[r]) {
      bool ok = true;
      for (int s = 0; s < r && ok; ++s) {
        int cs = chosen[s];
        if (dot(vecs[c], P[0][cs]) != B[0](r, s)) {
          ok = false;
          break;
        }
        for (int al = 1; al < 4 && ok; ++al)
          ok = dot(vecs[c], P[al][cs]) == B[al](r, s) && dot(vecs[cs], P[al][c]) == B[al](s, r);
      }
      if (!ok) continue;
      chosen[r] = c;
      if (rec(r + 1)) return true;
    }
    chosen[r] = -1;
    return false;
  };
  rec(0);
  return result;
}

}  // namespace detail

// all U with U * A_alpha * U^T = B_alpha (for all four alpha); rows of U are
// coordinates over the A-basis of the images of the B-basis vectors
inline std::vector<I64Mat> isometries(const std::array<I64Mat, 4>& A,
                                      const std::array<I64Mat, 4>& B, bool first_only) {
  const int n = A[0].m;
  if (B[0].m != n) return {};
  if (det(detail::mat_of(A[0])) != det(detail::mat_of(B[0]))) return {};
  IMat UA = lll_gram(detail::mat_of(A[0]));
  IMat UB = lll_gram(detail::mat_of(B[0]));
  std::array<I64Mat, 4> Ar = detail::conjugate_family(A, UA);
  std::array<I64Mat, 4> Br = detail::conjugate_family(B, UB);
  std::vector<I64Mat> ws = detail::isometries_core(Ar, Br, first_only);
  if (ws.empty()) return ws;
  // W Ar W^T = Br  =>  (UB^-1 W UA) A (UB^-1 W UA)^T = B
  I64Mat UAi = to_i64(UA);
  I64Mat UBinv = to_i64(to_int(inverse(to_rat(UB))));
  std::vector<I64Mat> out;
  out.reserve(ws.size());
  for (const I64Mat& W : ws) out.push_back(UBinv * W * UAi);
  return out;
}

inline std::optional<I64Mat> find_isometry(const std::array<I64Mat, 4>& A,
                                           const std::array<I64Mat, 4>& B) {
  std::vector<I64Mat> v = isometries(A, B, true);
  if (v.empty()) return std::nullopt;
  // spot check the conjugation bookkeeping on the returned witness
  const I64Mat& U = v[0];
  const int n = A[0].m;
  for (int al = 0; al < 4; ++al)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        int64_t s = 0;
        for (int x = 0; x < n; ++x)
          for (int y = 0; y < n; ++y) s += U(i, x) * A[al](x, y) * U(j, y);
        check(s == B[al](i, j), "isometry verification failed");
      }
  return v[0];
}

inline std::vector<I64Mat> automorphisms(const std::array<I64Mat, 4>& A) {
  return isometries(A, A, false);
}

}  // namespace brandt
