// Acceptance suite: one line per criterion, PASS or FAIL, exit status 0 only
// when every criterion passes.  Everything is recomputed from scratch here —
// class censuses, cell complexes, graphs, spectra — and checked against
// reference values for small discriminants plus independent recomputations
// (brute-force subspace counts, closed-form masses, and a quaternion-ideal
// oracle at g = 1 that never touches the hermitian-lattice machinery).
//
// Stretch instances at the end are reported but do not gate the exit status.

#include "brandt/io.hpp"
#include "test_util.hpp"

#include <chrono>
#include <cstdarg>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

using namespace brandt;

namespace {

double elapsed_s() {
  static const auto t0 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void progress(const char* fmt, ...) {
  std::fprintf(stderr, "[%8.1fs] ", elapsed_s());
  va_list ap;
  va_start(ap, fmt);
  std::vfprintf(stderr, fmt, ap);
  va_end(ap);
  std::fprintf(stderr, "\n");
}

struct Criterion {
  std::string headline;
  bool pass = true;
  std::string note;  // first failure detail
};

std::vector<Criterion> crit(10);

void fail(int c, const std::string& why) {
  if (crit[c].pass) crit[c].note = why;
  crit[c].pass = false;
}

void require(int c, bool cond, const std::string& why) {
  if (!cond) fail(c, why);
}

std::string fmt_time(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1fs", t);
  return buf;
}

// class counts by type
std::vector<long> type_counts(const Census& cs) {
  std::vector<long> h;
  for (const auto& ids : cs.ids_by_type) h.push_back(static_cast<long>(ids.size()));
  return h;
}

std::string vec_str(const std::vector<long>& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

// every row of every off-diagonal block sums to the neighbor count of the
// corresponding pair (sublattices for r > s, superlattices for r < s);
// diagonal blocks are empty
bool rowsum_law(const EnhancedGraph& E, int64_t l) {
  int g = E.g;
  for (int r = 0; r <= g; ++r)
    for (int s = 0; s <= g; ++s) {
      const I64Mat& A = E.A[r][s];
      Int want = 0;
      if (r > s)
        want = count_neighbors(Int(static_cast<long>(l)), r, s);
      else if (r < s)
        want = count_neighbors(Int(static_cast<long>(l)), g - r, g - s);
      for (int i = 0; i < A.m; ++i) {
        int64_t sum = 0;
        for (int j = 0; j < A.n; ++j) sum += A(i, j);
        if (Int(static_cast<long>(sum)) != want) return false;
      }
    }
  return true;
}

// orbit counting from dimension-1 cells agrees with the little-graph recipe
bool storm_check(const BrandtComplex& C, const LittleGraph& L) {
  std::vector<std::vector<I64Mat>> big = big_graph_blocks(C, L);
  for (int r = 0; r < L.nbar; ++r)
    for (int s = 0; s < L.nbar; ++s)
      if (!(big[r][s] == L.A[r][s])) return false;
  return true;
}

// graph-level battery: count duality h_r = h_{g-r}, the involution pairing,
// connectivity of the full support and of every pair subgraph, bipartiteness
// of pair subgraphs, connectivity of the little graph
bool graph_battery(const Census& cs, const EnhancedGraph& E, const LittleGraph& L,
                   std::string& why) {
  int g = E.g;
  for (int r = 0; 2 * r <= g; ++r)
    if (cs.ids_by_type[r].size() != cs.ids_by_type[g - r].size()) {
      why = "class count duality broken at type " + std::to_string(r);
      return false;
    }
  for (size_t i = 0; i < cs.classes.size(); ++i) {
    int ii = cs.iota[static_cast<int>(i)];
    if (cs.iota[ii] != static_cast<int>(i) || cs.classes[ii].type != g - cs.classes[i].type) {
      why = "involution is not a type-flipping pairing";
      return false;
    }
  }
  std::vector<int> all(g + 1);
  std::iota(all.begin(), all.end(), 0);
  auto [conn, bip] = graph_verdicts(enhanced_support(E, all));
  (void)bip;
  if (!conn) {
    why = "enhanced graph disconnected";
    return false;
  }
  for (int r = 0; r <= g; ++r)
    for (int s = r + 1; s <= g; ++s) {
      auto [c2, b2] = graph_verdicts(enhanced_support(E, {r, s}));
      if (!c2 || !b2) {
        why = "pair (" + std::to_string(r) + "," + std::to_string(s) + ") not connected+bipartite";
        return false;
      }
    }
  auto [lc, lb] = graph_verdicts(little_support(L));
  (void)lb;
  if (!lc) {
    why = "little graph disconnected";
    return false;
  }
  return true;
}

// semi-simplicial face coherence: faces drop one type, and the face maps
// commute in the standard way
bool face_battery(BrandtComplex& C, std::string& why) {
  for (size_t c = 0; c < C.cells.size(); ++c) {
    const Cell& cell = C.cells[c];
    for (int i = 0; i <= cell.dim && cell.dim >= 1; ++i) {
      int f = face_of_cell(C, static_cast<int>(c), i);
      std::vector<int> want = cell.type;
      want.erase(want.begin() + i);
      if (C.cells[f].type != want) {
        why = "face does not drop the expected type entry";
        return false;
      }
    }
    for (int i = 0; i < cell.dim; ++i)
      for (int j = i + 1; j <= cell.dim && cell.dim >= 2; ++j)
        if (face_of_cell(C, face_of_cell(C, static_cast<int>(c), j), i) !=
            face_of_cell(C, face_of_cell(C, static_cast<int>(c), i), j - 1)) {
          why = "face maps do not commute";
          return false;
        }
  }
  return true;
}

// sum of reciprocal stabilizer orders per type vector equals the closed-form
// simplex mass (prime discriminant only)
bool mass_battery(const BrandtComplex& C, int g, long l, long N, std::string& why) {
  std::map<std::vector<int>, Rat> sums;
  for (const Cell& c : C.cells) sums[c.type] += Rat(1) / Rat(c.weight);
  for (const auto& [t, sum] : sums)
    if (sum != simplex_mass(g, Int(l), Int(N), t)) {
      why = "mass mismatch for a type vector";
      return false;
    }
  // orbit-stabilizer consistency of the stored counts
  for (const Cell& c : C.cells)
    if (c.count * c.weight != C.census.classes[c.root_class].aut_order) {
      why = "orbit-stabilizer identity broken";
      return false;
    }
  return true;
}

I64Mat sorted2(const I64Mat& B, long k0, long k1) {
  // reorder a 2x2 matrix so the class with the smaller key comes first
  if (k0 <= k1) return B;
  I64Mat S(2, 2);
  S(0, 0) = B(1, 1);
  S(0, 1) = B(1, 0);
  S(1, 0) = B(0, 1);
  S(1, 1) = B(0, 0);
  return S;
}

// ---------------------------------------------------------------------------
// independent oracle at g = 1: right ideal classes of a maximal order,
// enumerated with nothing but quaternion arithmetic, HNF bases and short
// vectors.  Produces the class number, the total mass, the unit-group orders
// and the neighbor-count matrix between class representatives.

struct IdealOracle {
  bool ok = false;
  std::string detail;
  int classes = 0;
  Rat mass;
  std::array<long, 2> units{};
  I64Mat brandt;
};

struct Ideal {
  QMat rows;  // 4x4 basis, row = coordinates over 1, i, j, k
  Rat norm;   // reduced norm
};

Quat row_quat(const QMat& A, int r) { return Quat(A(r, 0), A(r, 1), A(r, 2), A(r, 3)); }

QMat basis_from_rows(const QMat& gen) {
  auto [Z, den] = clear_denominators(gen);
  IMat H = hnf(Z);
  check(H.m == 4, "ideal generators span a degenerate lattice");
  QMat B(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) B(i, j) = Rat(H(i, j)) / Rat(den);
  return B;
}

IdealOracle g1_ideal_oracle(long N, long l) {
  IdealOracle R;
  R.brandt = I64Mat(2, 2);
  QuaternionAlgebra H = construct_algebra(Int(N));
  Order O = maximal_order(H);

  // the l+1 subideals of index l^2: preimages of the rank-2 row spaces of
  // I/lI that are stable under right multiplication by the order basis
  auto neighbors = [&](const Ideal& I) -> std::vector<Ideal> {
    QMat Rinv = inverse(I.rows);
    std::array<I64Mat, 4> T;
    for (int t = 0; t < 4; ++t) {
      T[t] = I64Mat(4, 4);
      Quat et = O.elt(t);
      for (int u = 0; u < 4; ++u) {
        Quat y = H.mul(row_quat(I.rows, u), et);
        for (int v = 0; v < 4; ++v) {
          Rat c = 0;
          for (int w = 0; w < 4; ++w) c += y.c[w] * Rinv(w, v);
          check(c.get_den() == 1, "right action of the order is not integral");
          Int m = c.get_num() % l;
          long mv = to_long(m);
          T[t](u, v) = ((mv % l) + l) % l;
        }
      }
    }
    std::vector<Ideal> out;
    for_each_subspace(4, 2, l, [&](const I64Mat& S) {
      for (int t = 0; t < 4; ++t) {
        I64Mat ST(S.m, 4);
        for (int a = 0; a < S.m; ++a)
          for (int v = 0; v < 4; ++v) {
            int64_t acc = 0;
            for (int u = 0; u < 4; ++u) acc += S(a, u) * T[t](u, v);
            ST(a, v) = ((acc % l) + l) % l;
          }
        if (!span_contains_mod(S, ST, l)) return;
      }
      QMat gen(6, 4);
      for (int a = 0; a < 2; ++a)
        for (int v = 0; v < 4; ++v) {
          Rat acc = 0;
          for (int u = 0; u < 4; ++u) acc += Rat(Int(S(a, u))) * I.rows(u, v);
          gen(a, v) = acc;
        }
      for (int u = 0; u < 4; ++u)
        for (int v = 0; v < 4; ++v) gen(2 + u, v) = Rat(Int(l)) * I.rows(u, v);
      out.push_back({basis_from_rows(gen), I.norm * Rat(Int(l))});
    });
    return out;
  };

  auto trace_gram = [&](const Ideal& I) -> I64Mat {
    I64Mat G(4, 4);
    for (int u = 0; u < 4; ++u)
      for (int v = 0; v < 4; ++v) {
        Rat g = trd(H.mul(row_quat(I.rows, u), conj(row_quat(I.rows, v))));
        check(g.get_den() == 1, "trace pairing is not integral on an integral ideal");
        G(u, v) = to_long(g.get_num());
      }
    return G;
  };

  // principal iff some element attains the ideal norm
  auto is_principal = [&](const Ideal& I) -> bool {
    I64Mat G = trace_gram(I);
    Rat target = Rat(2) * I.norm;
    check(target.get_den() == 1, "ideal norm is not integral");
    int64_t b = to_long(target.get_num());
    for (const auto& v : short_vectors(G, b))
      if (gram_norm(G, v) == b) return true;
    return false;
  };

  // left order (1/nrd I) * I * conj(I), for its unit group
  auto left_order_units = [&](const Ideal& I) -> long {
    QMat gen(16, 4);
    int r = 0;
    for (int u = 0; u < 4; ++u)
      for (int v = 0; v < 4; ++v, ++r) {
        Quat p = H.mul(row_quat(I.rows, u), conj(row_quat(I.rows, v)));
        for (int t = 0; t < 4; ++t) gen(r, t) = p.c[t] / I.norm;
      }
    Order Ol = make_order(H, basis_from_rows(gen));
    return static_cast<long>(unit_group(Ol).size());
  };

  Ideal I0{O.basis, Rat(1)};
  long u0 = static_cast<long>(unit_group(O).size());

  std::vector<Ideal> nb0 = neighbors(I0);
  if (static_cast<long>(nb0.size()) != l + 1) {
    R.detail = "expected " + std::to_string(l + 1) + " subideals, found " +
               std::to_string(nb0.size());
    return R;
  }

  int second = -1;
  for (size_t i = 0; i < nb0.size(); ++i)
    if (!is_principal(nb0[i])) {
      second = static_cast<int>(i);
      break;
    }
  if (second < 0) {
    R.detail = "every subideal is principal";
    return R;
  }
  Ideal I1 = nb0[static_cast<size_t>(second)];
  long u1 = left_order_units(I1);

  // mass exhaustion: two classes account for the full Eichler mass, so the
  // class list {principal, [I1]} is complete and "non-principal" pins the
  // class of every neighbor
  R.mass = Rat(1) / Rat(u0) + Rat(1) / Rat(u1);
  if (R.mass != Rat(Int(N) - 1) / Rat(24)) {
    R.detail = "mass gap: more than two classes";
    return R;
  }
  R.classes = 2;
  R.units = {u0, u1};

  for (const Ideal& K : nb0) R.brandt(0, is_principal(K) ? 0 : 1)++;
  std::vector<Ideal> nb1 = neighbors(I1);
  if (static_cast<long>(nb1.size()) != l + 1) {
    R.detail = "wrong subideal count at the second class";
    return R;
  }
  for (const Ideal& K : nb1) R.brandt(1, is_principal(K) ? 0 : 1)++;
  R.ok = true;
  return R;
}

}  // namespace

int main() {
  for (auto& c : crit) c.pass = true;
  std::vector<std::string> stretch;

  // neutral headlines, filled in with measured details as stages finish
  crit[0].headline = "class counts by type within time bounds";
  crit[1].headline = "(2,2,11) bar classes 5 + 8, middle bar 6 ramified + 2 etale";
  crit[2].headline = "neighbor counts at l=2: 3, 15, 15, 135, 315, 63 (formula == brute force)";
  crit[3].headline = "reference adjacency matrices reproduced; row sums obey the counting formula";
  crit[4].headline = "orbit-counted graph equals the weighted little graph";
  crit[5].headline = "(2,2,7) cell census and little-cell splits";
  crit[6].headline = "stabilizer orders and simplex masses match the closed formulas";
  crit[7].headline = "middle-block spectra certified exactly (degrees 40 and 15)";
  crit[8].headline = "structural battery: duality, connectivity, bipartite pairs, face coherence";
  crit[9].headline = "(1,2,11) matches the independent quaternion-ideal oracle";

  // ---------------------------------------------------------------- (2,2,7)
  double t227 = 0;
  try {
    progress("(2,2,7): census");
    BrandtSpace sp = make_space(2, 2, 7);
    auto c0 = std::chrono::steady_clock::now();
    Census cs = vertex_census(sp);
    t227 = std::chrono::duration<double>(std::chrono::steady_clock::now() - c0).count();
    require(0, type_counts(cs) == std::vector<long>({2, 4, 2}),
            "(2,2,7) counts " + vec_str(type_counts(cs)));
    require(0, t227 < 10.0, "(2,2,7) census too slow");

    progress("(2,2,7): full complex");
    BrandtComplex C = build_complex(sp);
    EnhancedGraph E = enhanced_graph(C);
    LittleGraph L = little_graph(E, C.census);

    require(3, rowsum_law(E, 2), "(2,2,7) row sums");
    require(4, storm_check(C, L), "(2,2,7) orbit count vs recipe");

    // cell census by type vector
    std::map<std::vector<int>, int> bytype;
    for (const Cell& c : C.cells) bytype[c.type]++;
    std::map<std::vector<int>, int> want = {{{0}, 2},    {{1}, 4},    {{2}, 2},    {{1, 0}, 7},
                                            {{2, 0}, 9}, {{2, 1}, 7}, {{2, 1, 0}, 16}};
    require(5, bytype == want, "(2,2,7) cell counts by type");

    // little cells: 6 vertices, 14 edges, 12 facets; the (2,0) bar splits
    // into 2 regular + 5 half edges; facets split into 4 regular + 8 half
    LittleCells LC = little_cells(C);
    int dims[3] = {0, 0, 0};
    int bar20 = 0, bar20_half = 0, fac = 0, fac_half = 0;
    for (size_t o = 0; o < LC.rep.size(); ++o) {
      const Cell& c = C.cells[LC.rep[o]];
      dims[c.dim]++;
      if (c.dim == 1 && bar_type(c.type, 2) == std::vector<int>({2, 0}))
        (LC.half[o] ? bar20_half : bar20)++;
      if (c.dim == 2) (LC.half[o] ? fac_half : fac)++;
    }
    require(5, dims[0] == 6 && dims[1] == 14 && dims[2] == 12, "(2,2,7) little cell counts");
    require(5, bar20 == 2 && bar20_half == 5, "(2,2,7) (2,0)-bar split");
    require(5, fac == 4 && fac_half == 8, "(2,2,7) facet split");

    // stabilizer orders of the principal genus and the simplex masses
    std::multiset<long> w0;
    for (int id : C.census.ids_by_type[0]) w0.insert(to_long(C.census.classes[id].aut_order));
    require(6, w0 == std::multiset<long>({32, 48}), "(2,2,7) type-0 stabilizer orders");

    std::map<std::vector<int>, Rat> sums;
    for (const Cell& c : C.cells) sums[c.type] += Rat(1) / Rat(c.weight);
    require(6, sums[{0}] == Rat(5) / Rat(96), "mass of type (0)");
    require(6, sums[{1}] == Rat(25) / Rat(96), "mass of type (1)");
    require(6, sums[{2}] == Rat(5) / Rat(96), "mass of type (2)");
    require(6, sums[{1, 0}] == Rat(25) / Rat(32), "mass of type (1,0)");
    require(6, sums[{2, 1}] == Rat(25) / Rat(32), "mass of type (2,1)");
    require(6, sums[{2, 0}] == Rat(25) / Rat(32), "mass of type (2,0)");
    require(6, sums[{2, 1, 0}] == Rat(75) / Rat(32), "mass of type (2,1,0)");
    require(6, superspecial_mass(2, Int(7)) == Rat(5) / Rat(96), "closed-form mass at (2,7)");
    std::string why;
    require(6, mass_battery(C, 2, 2, 7, why), "(2,2,7) " + why);

    require(8, graph_battery(C.census, E, L, why), "(2,2,7) " + why);
    require(8, face_battery(C, why), "(2,2,7) " + why);
  } catch (const std::exception& e) {
    for (int c : {0, 3, 4, 5, 6, 8}) fail(c, std::string("(2,2,7) exception: ") + e.what());
  }

  // --------------------------------------------------------------- (2,2,11)
  double t2211 = 0;
  try {
    progress("(2,2,11): census");
    BrandtSpace sp = make_space(2, 2, 11);
    auto c0 = std::chrono::steady_clock::now();
    Census cs0 = vertex_census(sp);
    t2211 = std::chrono::duration<double>(std::chrono::steady_clock::now() - c0).count();
    require(0, type_counts(cs0) == std::vector<long>({5, 10, 5}),
            "(2,2,11) counts " + vec_str(type_counts(cs0)));
    require(0, t2211 < 60.0, "(2,2,11) census too slow");

    progress("(2,2,11): full complex");
    BrandtComplex C = build_complex(sp);
    EnhancedGraph E = enhanced_graph(C);
    LittleGraph L = little_graph(E, C.census);

    int ram = 0;
    for (char f : L.middle_ram) ram += f ? 1 : 0;
    require(1, L.reps[0].size() == 5, "hbar_0");
    require(1, L.reps[1].size() == 8, "hbar_1");
    require(1, ram == 6 && static_cast<int>(L.reps[1].size()) - ram == 2, "ramified/etale split");

    I64Mat printed = from_rows({{0, 0, 0, 0, 0, 2, 4, 1, 0, 0, 0, 4, 4, 0, 0, 3, 4, 4, 4, 0},
                                {0, 0, 0, 0, 0, 0, 9, 0, 0, 0, 0, 0, 0, 6, 0, 9, 3, 3, 0, 0},
                                {0, 0, 0, 0, 0, 0, 3, 0, 6, 0, 0, 0, 0, 0, 6, 3, 1, 3, 0, 8},
                                {0, 0, 0, 0, 0, 3, 0, 0, 0, 2, 6, 0, 0, 1, 3, 3, 0, 0, 6, 6},
                                {0, 0, 0, 0, 0, 0, 0, 0, 6, 0, 6, 0, 3, 0, 0, 0, 0, 4, 3, 8},
                                {1, 0, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 2, 0},
                                {1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 0, 0},
                                {3, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 3, 0, 0, 0, 0},
                                {0, 0, 1, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 2},
                                {0, 0, 0, 3, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 3, 0},
                                {0, 0, 0, 1, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 2},
                                {3, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 2, 0, 1, 0},
                                {1, 0, 0, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 2, 1, 0},
                                {0, 2, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 3, 0, 0, 0, 0},
                                {0, 0, 2, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 2},
                                {3, 4, 4, 4, 0, 2, 4, 1, 0, 0, 0, 0, 0, 4, 4, 0, 0, 0, 0, 0},
                                {9, 3, 3, 0, 0, 0, 9, 0, 0, 0, 0, 6, 0, 0, 0, 0, 0, 0, 0, 0},
                                {3, 1, 3, 0, 8, 0, 3, 0, 6, 0, 0, 0, 6, 0, 0, 0, 0, 0, 0, 0},
                                {3, 0, 0, 6, 6, 3, 0, 0, 0, 2, 6, 1, 3, 0, 0, 0, 0, 0, 0, 0},
                                {0, 0, 4, 3, 8, 0, 0, 0, 6, 0, 6, 0, 0, 0, 3, 0, 0, 0, 0, 0}});
    require(3, block_perm_match(assemble_blocks(E.A), printed, {5, 10, 5}),
            "(2,2,11) enhanced adjacency");

    I64Mat printed_little = from_rows({{3, 4, 4, 4, 0, 2, 4, 1, 0, 0, 0, 4, 4},
                                       {9, 3, 3, 0, 0, 0, 9, 0, 0, 0, 0, 6, 0},
                                       {3, 1, 3, 0, 8, 0, 3, 0, 6, 0, 0, 0, 6},
                                       {3, 0, 0, 6, 6, 3, 0, 0, 0, 2, 6, 1, 3},
                                       {0, 0, 4, 3, 8, 0, 0, 0, 6, 0, 6, 0, 3},
                                       {2, 0, 0, 4, 0, 0, 0, 0, 0, 0, 0, 0, 0},
                                       {2, 2, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
                                       {6, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
                                       {0, 0, 2, 0, 4, 0, 0, 0, 0, 0, 0, 0, 0},
                                       {0, 0, 0, 6, 0, 0, 0, 0, 0, 0, 0, 0, 0},
                                       {0, 0, 0, 2, 4, 0, 0, 0, 0, 0, 0, 0, 0},
                                       {3, 2, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0},
                                       {1, 0, 2, 1, 2, 0, 0, 0, 0, 0, 0, 0, 0}});
    require(3, block_perm_match(assemble_blocks(L.A), printed_little, {5, 8}),
            "(2,2,11) little adjacency");
    require(3, rowsum_law(E, 2), "(2,2,11) row sums");

    require(4, storm_check(C, L), "(2,2,11) orbit count vs recipe");
    std::string why;
    require(6, mass_battery(C, 2, 2, 11, why), "(2,2,11) " + why);
    require(8, graph_battery(C.census, E, L, why), "(2,2,11) " + why);
    require(8, face_battery(C, why), "(2,2,11) " + why);
  } catch (const std::exception& e) {
    for (int c : {0, 1, 3, 4, 6, 8}) fail(c, std::string("(2,2,11) exception: ") + e.what());
  }

  // ---------------------------------------------------------------- (3,2,3)
  double t323 = 0;
  try {
    progress("(3,2,3): census");
    BrandtSpace sp = make_space(3, 2, 3);
    auto c0 = std::chrono::steady_clock::now();
    Census cs0 = vertex_census(sp);
    t323 = std::chrono::duration<double>(std::chrono::steady_clock::now() - c0).count();
    require(0, type_counts(cs0) == std::vector<long>({2, 3, 3, 2}),
            "(3,2,3) counts " + vec_str(type_counts(cs0)));
    require(0, t323 < 1800.0, "(3,2,3) census too slow");

    progress("(3,2,3): full complex");
    BrandtComplex C = build_complex(sp);
    EnhancedGraph E = enhanced_graph(C);
    LittleGraph L = little_graph(E, C.census);

    I64Mat printed = from_rows({{0, 0, 9, 27, 27, 45, 81, 189, 81, 54},
                                {0, 0, 0, 0, 63, 0, 63, 252, 63, 72},
                                {3, 0, 0, 0, 0, 6, 9, 0, 15, 0},
                                {3, 0, 0, 0, 0, 3, 3, 9, 9, 6},
                                {1, 2, 0, 0, 0, 0, 3, 12, 7, 8},
                                {15, 0, 6, 9, 0, 0, 0, 0, 3, 0},
                                {9, 6, 3, 3, 9, 0, 0, 0, 3, 0},
                                {7, 8, 0, 3, 12, 0, 0, 0, 1, 2},
                                {81, 54, 45, 81, 189, 9, 27, 27, 0, 0},
                                {63, 72, 0, 63, 252, 0, 0, 63, 0, 0}});
    require(3, block_perm_match(assemble_blocks(E.A), printed, {2, 3, 3, 2}),
            "(3,2,3) enhanced adjacency");
    I64Mat printed_little = from_rows({{81, 54, 54, 108, 216},
                                       {63, 72, 0, 63, 315},
                                       {18, 0, 6, 9, 0},
                                       {12, 6, 3, 3, 9},
                                       {8, 10, 0, 3, 12}});
    require(3, block_perm_match(assemble_blocks(L.A), printed_little, {2, 3}),
            "(3,2,3) little adjacency");
    require(3, rowsum_law(E, 2), "(3,2,3) row sums");

    require(4, storm_check(C, L), "(3,2,3) orbit count vs recipe");
    std::string why;
    require(6, mass_battery(C, 3, 2, 3, why), "(3,2,3) " + why);
    require(8, graph_battery(C.census, E, L, why), "(3,2,3) " + why);
    require(8, face_battery(C, why), "(3,2,3) " + why);

    // middle block of the little graph: 15-regular on three classes
    I64Mat lit = from_rows({{6, 9, 0}, {3, 3, 9}, {0, 3, 12}});
    require(7, block_perm_match(L.A[1][1], lit, {3}), "(3,2,3) middle block");
    RamanujanReport rep = ramanujan_test(L.A[1][1]);
    require(7, rep.k == 15, "(3,2,3) regularity");
    require(7, rep.all_real, "(3,2,3) spectrum not certified real");
    require(7, !rep.ramanujan, "(3,2,3) block wrongly certified Ramanujan");
    Poly want = poly_mul(Poly{Rat(-15), Rat(1)}, Poly{Rat(-18), Rat(-6), Rat(1)});
    require(7, rep.spec.charpoly == want, "(3,2,3) characteristic polynomial");
    require(7, rep.spec.roots.size() == 3, "(3,2,3) root count");
    if (rep.spec.roots.size() == 3) {
      const RootInfo& a = rep.spec.roots[0];  // 3 - 3*sqrt(3)
      const RootInfo& b = rep.spec.roots[1];  // 3 + 3*sqrt(3)
      const RootInfo& c = rep.spec.roots[2];  // 15
      require(7, c.exact && c.value == Rat(15), "(3,2,3) Perron root");
      require(7, !a.exact && a.lo >= Rat(-22) / Rat(10) && a.hi <= Rat(-219) / Rat(100),
              "(3,2,3) low root isolation");
      require(7, !b.exact && b.lo >= Rat(819) / Rat(100) && b.hi <= Rat(82) / Rat(10),
              "(3,2,3) high root isolation");
    }
  } catch (const std::exception& e) {
    for (int c : {0, 3, 4, 6, 7, 8}) fail(c, std::string("(3,2,3) exception: ") + e.what());
  }

  // ---------------------------------------------------------------- (3,3,2)
  try {
    progress("(3,3,2): census (this is the long stage)");
    BrandtSpace sp = make_space(3, 3, 2);
    Census cs = vertex_census(sp);
    require(7, type_counts(cs) == std::vector<long>({1, 3, 3, 1}),
            "(3,3,2) counts " + vec_str(type_counts(cs)));

    progress("(3,3,2): enhanced graph");
    EnhancedGraph E = enhanced_graph(sp, cs);
    LittleGraph L = little_graph(E, cs);
    require(3, rowsum_law(E, 3), "(3,3,2) row sums");

    I64Mat lit = from_rows({{8, 32, 0}, {4, 4, 32}, {0, 12, 28}});
    require(7, block_perm_match(L.A[1][1], lit, {3}), "(3,3,2) middle block");
    RamanujanReport rep = ramanujan_test(L.A[1][1]);
    require(7, rep.k == 40, "(3,3,2) regularity");
    require(7, rep.all_real && rep.ramanujan, "(3,3,2) Ramanujan verdict");
    Poly want = poly_from_roots({Rat(40), Rat(12), Rat(-12)});
    require(7, rep.spec.charpoly == want, "(3,3,2) characteristic polynomial");
    require(7, rep.spec.roots.size() == 3, "(3,3,2) root count");
    if (rep.spec.roots.size() == 3) {
      require(7,
              rep.spec.roots[0].exact && rep.spec.roots[0].value == Rat(-12) &&
                  rep.spec.roots[1].exact && rep.spec.roots[1].value == Rat(12) &&
                  rep.spec.roots[2].exact && rep.spec.roots[2].value == Rat(40),
              "(3,3,2) exact eigenvalues");
    }

    std::string why;
    require(8, graph_battery(cs, E, L, why), "(3,3,2) " + why);
  } catch (const std::exception& e) {
    for (int c : {3, 7, 8}) fail(c, std::string("(3,3,2) exception: ") + e.what());
  }

  // ---------------------------------------------------------------- (1,2,11)
  try {
    progress("(1,2,11): complex and ideal oracle");
    BrandtSpace sp = make_space(1, 2, 11);
    BrandtComplex C = build_complex(sp);
    EnhancedGraph E = enhanced_graph(C);
    LittleGraph L = little_graph(E, C.census);

    require(3, rowsum_law(E, 2), "(1,2,11) row sums");
    std::string why;
    require(6, mass_battery(C, 1, 2, 11, why), "(1,2,11) " + why);
    require(8, graph_battery(C.census, E, L, why), "(1,2,11) " + why);
    require(8, face_battery(C, why), "(1,2,11) " + why);

    require(9, type_counts(C.census) == std::vector<long>({2, 2}), "class numbers");
    std::vector<long> w;
    for (int id : L.reps[0]) w.push_back(to_long(C.census.classes[id].aut_order));
    std::multiset<long> wset(w.begin(), w.end());
    require(9, wset == std::multiset<long>({4, 6}), "stabilizer orders");
    Rat m0 = 0;
    for (int id : C.census.ids_by_type[0]) m0 += Rat(1) / Rat(C.census.classes[id].aut_order);
    require(9, m0 == Rat(5) / Rat(12), "Eichler mass 5/12");

    std::vector<std::vector<I64Mat>> big = big_graph_blocks(C, L);
    require(9, big[0][0] == L.A[0][0], "orbit count vs recipe at g=1");
    for (int i = 0; i < 2; ++i)
      require(9, big[0][0](i, 0) + big[0][0](i, 1) == 3, "3-regular rows");
    I64Mat pipeline = sorted2(big[0][0], w[0], w[1]);
    require(9, pipeline == from_rows({{1, 2}, {3, 0}}), "Brandt matrix values");

    IdealOracle oracle = g1_ideal_oracle(11, 2);
    require(9, oracle.ok, "oracle: " + oracle.detail);
    if (oracle.ok) {
      require(9, oracle.classes == 2, "oracle class number");
      require(9, oracle.mass == Rat(5) / Rat(12), "oracle mass");
      require(9, std::multiset<long>({oracle.units[0], oracle.units[1]}) ==
                     std::multiset<long>({4, 6}),
              "oracle unit orders");
      I64Mat ob = sorted2(oracle.brandt, oracle.units[0], oracle.units[1]);
      require(9, ob == pipeline, "oracle Brandt matrix agrees with the lattice pipeline");
      for (int i = 0; i < 2; ++i)
        require(9, ob(i, 0) + ob(i, 1) == 3, "oracle 3-regular rows");
    }
  } catch (const std::exception& e) {
    for (int c : {3, 6, 8, 9}) fail(c, std::string("(1,2,11) exception: ") + e.what());
  }

  // ------------------------------------------------------- counting formulas
  try {
    progress("neighbor-count table at l=2");
    struct Row {
      int r, s;
      long v;
    };
    for (const Row& row : {Row{1, 0, 3}, Row{2, 0, 15}, Row{2, 1, 15}, Row{3, 0, 135},
                           Row{3, 1, 315}, Row{3, 2, 63}}) {
      require(2, count_neighbors(Int(2), row.r, row.s) == Int(row.v),
              "product formula at (" + std::to_string(row.r) + "," + std::to_string(row.s) + ")");
      require(2, count_isotropic_bruteforce(2, row.r, row.s) == Int(row.v),
              "brute force at (" + std::to_string(row.r) + "," + std::to_string(row.s) + ")");
    }
  } catch (const std::exception& e) {
    fail(2, std::string("exception: ") + e.what());
  }

  crit[0].headline = "class counts: (2,2,7)=(2,4,2) in " + fmt_time(t227) +
                     " [<10s]; (2,2,11)=(5,10,5) in " + fmt_time(t2211) +
                     " [<60s]; (3,2,3)=(2,3,3,2) in " + fmt_time(t323) + " [<1800s]";

  // ------------------------------------------------------- stretch instances
  {
    JobSpec bad;
    bad.g = 2;
    bad.ell = Int(2);
    bad.disc = Int(30);
    auto err = validate_job(bad);
    stretch.push_back(std::string("stretch (2,2,30): ") + (err ? "PASS" : "FAIL") +
                      " — rejected (the prime must not divide the discriminant)");
  }
  struct StretchJob {
    int g, l, N;
  };
  std::vector<StretchJob> jobs = {{2, 2, 23}, {1, 2, 105}};
  // (2,7,30) — the smallest valid prime for N = 30 is l = 7 — has a type-1
  // genus of mass ~227, i.e. several hundred classes; its census alone needs
  // well over 6 GB and hours of CPU.  Attempt it only on request.
  if (std::getenv("BRANDT_ACCEPT_BIG") != nullptr)
    jobs.push_back({2, 7, 30});
  else
    stretch.push_back(
        "stretch (2,7,30): SKIPPED — type-1 genus mass ~227 (hundreds of classes); "
        "needs more memory than small containers provide; set BRANDT_ACCEPT_BIG=1 to attempt");
  for (const StretchJob& job : jobs) {
    std::string tag = "stretch (" + std::to_string(job.g) + "," + std::to_string(job.l) + "," +
                      std::to_string(job.N) + ")";
    try {
      progress("%s: full verification", tag.c_str());
      auto c0 = std::chrono::steady_clock::now();
      JobSpec js;
      js.g = job.g;
      js.ell = Int(job.l);
      js.disc = Int(job.N);
      js.max_dim = -1;
      auto res = verify_instance(js);
      double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - c0).count();
      int good = 0;
      std::string first;
      for (const auto& [name, ok] : res) {
        good += ok ? 1 : 0;
        if (!ok && first.empty()) first = name;
      }
      bool all = good == static_cast<int>(res.size());
      stretch.push_back(tag + ": " + (all ? "PASS" : "FAIL") + " — " + std::to_string(good) +
                        "/" + std::to_string(res.size()) + " checks in " + fmt_time(dt) +
                        (all ? "" : " (first failure: " + first + ")"));
    } catch (const std::exception& e) {
      stretch.push_back(tag + ": FAIL — exception: " + std::string(e.what()));
    }
  }

  // ------------------------------------------------------------------ report
  int passed = 0;
  for (size_t i = 0; i < crit.size(); ++i) {
    bool p = crit[i].pass;
    passed += p ? 1 : 0;
    std::printf("criterion %2zu: %s — %s%s\n", i + 1, p ? "PASS" : "FAIL",
                crit[i].headline.c_str(), p ? "" : (" [" + crit[i].note + "]").c_str());
  }
  for (const std::string& s : stretch) std::printf("%s\n", s.c_str());
  std::printf("acceptance: %d/10 criteria passed\n", passed);
  return passed == 10 ? 0 : 1;
}
