#pragma once
// The weighted simplicial (Delta-)complex attached to (g, l, O):
//   * vertices: isometry classes of integral l-bounded O-lattices in H^g,
//     found by closing the standard lattice O^g under super/sub-neighbors;
//   * k-cells: isometry classes of chains M_0 < M_1 < ... < M_k of proper
//     inclusions (types strictly decrease along a chain), realized as
//     Aut(M_0)-orbits of flags of subspaces in Q = M_0*/M_0;
//   * weights: w(cell) = order of the chain stabilizer inside Aut(M_0);
//   * involution: iota sends M to its scaled dual (M*, l h), reversing
//     chains; it is computed by transporting the dual chain into the
//     coordinates of the census representative of its minimal member.

#include "brandt/hermitian.hpp"
#include "brandt/isometry.hpp"

#include <deque>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace brandt {

struct VertexClass {
  Lattice rep;
  int type = 0;
  std::string fp;
  std::array<I64Mat, 4> gram;
  std::vector<I64Mat> auts;  // computed on demand (ensure_auts)
  Int aut_order = 0;         // 0 until computed
};

struct Census {
  int g = 0;
  std::vector<VertexClass> classes;
  std::unordered_map<std::string, std::vector<int>> by_fp;
  std::unordered_map<std::string, int> class_of_lattice;
  std::vector<int> iota;                    // class-level involution
  std::vector<std::vector<int>> ids_by_type;
};

inline int classify(const BrandtSpace& sp, Census& cs, const Lattice& L, bool allow_new = true) {
  std::string key = lattice_key(L);
  auto it = cs.class_of_lattice.find(key);
  if (it != cs.class_of_lattice.end()) return it->second;
  Lattice Ld = dual_lattice(sp, L);
  int t = type_of(sp, L, Ld);
  std::array<IMat, 4> gq = gram_family(sp, L);
  std::string fp = fingerprint(sp, gq, t);
  std::array<I64Mat, 4> fam = fam64(gq);
  for (int cand : cs.by_fp[fp]) {
    if (cs.classes[cand].type != t) continue;
    if (find_isometry(cs.classes[cand].gram, fam)) {
      cs.class_of_lattice.emplace(std::move(key), cand);
      return cand;
    }
  }
  check(allow_new, "classification failed: lattice outside the census");
  VertexClass vc;
  vc.rep = L;
  vc.type = t;
  vc.fp = fp;
  vc.gram = fam;
  int id = static_cast<int>(cs.classes.size());
  cs.classes.push_back(std::move(vc));
  cs.by_fp[fp].push_back(id);
  cs.class_of_lattice.emplace(std::move(key), id);
  return id;
}

// Automorphism groups are expensive for highly symmetric classes, so they are
// filled in only when weights or orbits are actually required.
inline void ensure_auts(Census& cs, int id) {
  VertexClass& vc = cs.classes[id];
  if (!vc.auts.empty()) return;
  vc.auts = automorphisms(vc.gram);
  vc.aut_order = Int(static_cast<long>(vc.auts.size()));
}

inline Census vertex_census(const BrandtSpace& sp) {
  Census cs;
  cs.g = sp.g;
  std::deque<int> todo;
  todo.push_back(classify(sp, cs, standard_lattice(sp)));
  while (!todo.empty()) {
    int c = todo.front();
    todo.pop_front();
    Lattice R = cs.classes[c].rep;  // copy: classes may grow below
    int n = cs.classes[c].type;
    auto handle = [&](const Lattice& L) {
      size_t before = cs.classes.size();
      int j = classify(sp, cs, L);
      if (cs.classes.size() > before) todo.push_back(j);
    };
    for (int s = 0; s < n; ++s)
      for (const Lattice& L : superlattices(sp, R, s)) handle(L);
    for (int s = n + 1; s <= sp.g; ++s)
      for (const Lattice& L : sublattices(sp, R, s)) handle(L);
  }
  // class-level involution: [M] -> [(M*, l h)]
  int nc = static_cast<int>(cs.classes.size());
  cs.iota.assign(nc, -1);
  for (int i = 0; i < nc; ++i) {
#ifdef BRANDT_TRACE
    fprintf(stderr, "[trace] iota for class %d\n", i);
#endif
    Lattice Ms = dual_lattice(sp, cs.classes[i].rep);
    std::array<IMat, 4> gs;
    {
      std::array<QMat, 4> gq = gram_family_q(sp, lat_rows(Ms));
      for (int a = 0; a < 4; ++a) {
        for (Rat& x : gq[a].a) x *= Rat(sp.ell);
        check(is_integral(gq[a]), "scaled dual Gram not integral");
        gs[a] = to_int(gq[a]);
      }
    }
    int t = sp.g - cs.classes[i].type;
    std::string fp = fingerprint(sp, gs, t);
    std::array<I64Mat, 4> fam = fam64(gs);
    for (int cand : cs.by_fp[fp]) {
      if (cs.classes[cand].type != t) continue;
      if (find_isometry(cs.classes[cand].gram, fam)) {
        cs.iota[i] = cand;
        break;
      }
    }
    check(cs.iota[i] >= 0, "involution image not found in census");
  }
  for (int i = 0; i < nc; ++i) {
    check(cs.iota[cs.iota[i]] == i, "involution is not an involution");
    check(cs.classes[cs.iota[i]].type == sp.g - cs.classes[i].type, "involution type mismatch");
  }
  cs.ids_by_type.assign(sp.g + 1, {});
  for (int i = 0; i < nc; ++i) cs.ids_by_type[cs.classes[i].type].push_back(i);
  return cs;
}

// ---------------------------------------------------------------------------
// cells

struct Cell {
  int id = 0;
  int dim = 0;
  std::vector<int> type;   // (r_0 > r_1 > ... > r_k)
  std::vector<int> verts;  // census class ids of the members
  Int weight;              // stabilizer order
  Int count;               // orbit size (= chains with this class rooted at rep)
  bool half = false;
  bool orientation_reversing = false;
  int root_class = 0;
};

struct BrandtComplex {
  BrandtSpace sp;
  Census census;
  int max_dim = 0;
  std::vector<Cell> cells;
  std::vector<std::vector<Lattice>> cell_members;  // representative chains
  std::vector<int> iota_cell;
  // per root class: every enumerated chain key -> cell id
  std::vector<std::unordered_map<std::string, int>> chain_cell;
  std::map<int, ModQuotient> dq_cache;
};

inline std::string key_str(const std::vector<int64_t>& v) {
  std::ostringstream os;
  for (int64_t x : v) os << x << ',';
  return os.str();
}

inline const ModQuotient& get_dq(BrandtComplex& C, int class_id) {
  auto it = C.dq_cache.find(class_id);
  if (it != C.dq_cache.end()) return it->second;
  return C.dq_cache.emplace(class_id, dual_quotient(C.sp, C.census.classes[class_id].rep))
      .first->second;
}

namespace detail {

// action of an isometry U of the root R (rows = coords over the R basis) on
// the quotient Q(R) = R*/R, as a dq x dq matrix mod l acting on row vectors
inline I64Mat quotient_action(const BrandtSpace& sp, const ModQuotient& dq, const IMat& Li,
                              const Int& dL, const IMat& Ri, const Int& dR, const I64Mat& U) {
  // P = (1/dL dR) * Li U Ri restricted to pos x pos
  int d4 = Li.n;
  int m = dq.dq;
  IMat Ui(d4, d4);
  for (int i = 0; i < d4; ++i)
    for (int j = 0; j < d4; ++j) Ui(i, j) = Int(static_cast<long>(U(i, j)));
  Int denom = dL * dR;
  I64Mat P(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      Int acc = 0;
      for (int x = 0; x < d4; ++x)
        for (int y = 0; y < d4; ++y) acc += Li(dq.pos[a], x) * Ui(x, y) * Ri(y, dq.pos[b]);
      check(acc % denom == 0, "quotient action is not integral");
      acc /= denom;
      P(a, b) = static_cast<int64_t>(
          mpz_fdiv_ui(acc.get_mpz_t(), static_cast<unsigned long>(sp.l)));
    }
  return P;
}

}  // namespace detail

// the Q(root)-subspace key of a superlattice given by rows in root coords
inline std::vector<int64_t> superlattice_span_key(const BrandtSpace& sp, const ModQuotient& dq,
                                                  const Lattice& root, const QMat& rows_root_coords) {
  QMat W = rows_root_coords * lat_rows(root) * dq.Fb_inv;
  check(is_integral(W), "superlattice not inside the dual");
  I64Mat S(W.m, dq.dq);
  for (int r = 0; r < W.m; ++r)
    for (int a = 0; a < dq.dq; ++a)
      S(r, a) = static_cast<int64_t>(
          mpz_fdiv_ui(W(r, dq.pos[a]).get_num().get_mpz_t(), static_cast<unsigned long>(sp.l)));
  return span_key_mod(S, sp.l);
}

inline BrandtComplex build_complex(const BrandtSpace& sp, int max_dim = -1) {
  BrandtComplex C{sp, vertex_census(sp), 0, {}, {}, {}, {}, {}};
  if (max_dim < 0 || max_dim > sp.g) max_dim = sp.g;
  C.max_dim = max_dim;
  Census& cs = C.census;
  int nc = static_cast<int>(cs.classes.size());
  C.chain_cell.resize(nc);
  for (int c = 0; c < nc; ++c) ensure_auts(cs, c);

  // 0-cells first: cell id of class c is c
  for (int c = 0; c < nc; ++c) {
    Cell cell;
    cell.id = c;
    cell.dim = 0;
    cell.type = {cs.classes[c].type};
    cell.verts = {c};
    cell.weight = cs.classes[c].aut_order;
    cell.count = 1;
    cell.root_class = c;
    C.cells.push_back(cell);
    C.cell_members.push_back({cs.classes[c].rep});
  }

  for (int c = 0; c < nc && max_dim >= 1; ++c) {
    int r0 = cs.classes[c].type;
    if (r0 == 0) continue;
#ifdef BRANDT_TRACE
    fprintf(stderr, "[trace] chains rooted at class %d (type %d)\n", c, r0);
#endif
    Lattice R = cs.classes[c].rep;
    const ModQuotient& dq = get_dq(C, c);

    // neighbor subspaces (with lattices) per target type
    std::vector<std::vector<I64Mat>> subs(r0);
    std::vector<std::vector<std::string>> subkeys(r0);
    std::vector<std::vector<Lattice>> sublats(r0);
    for (int s = 0; s < r0; ++s) {
      sublats[s] = superlattices(sp, dq, s, [&](const I64Mat& U) {
        subs[s].push_back(U);
        subkeys[s].push_back(key_str(span_key_mod(U, sp.l)));
      });
    }

    // chains: flags of nested subspaces, as (type, index) levels
    struct ChainRec {
      std::vector<std::pair<int, int>> levels;
      std::string key;
    };
    std::vector<ChainRec> chains;
    std::function<void(ChainRec&)> extend = [&](ChainRec& cur) {
      chains.push_back(cur);
      if (static_cast<int>(cur.levels.size()) >= max_dim) return;
      int last_s = cur.levels.back().first;
      const I64Mat& lastU = subs[last_s][cur.levels.back().second];
      for (int s = last_s - 1; s >= 0; --s)
        for (size_t t = 0; t < subs[s].size(); ++t) {
          if (!span_contains_mod(subs[s][t], lastU, sp.l)) continue;
          ChainRec nxt = cur;
          nxt.levels.push_back({s, static_cast<int>(t)});
          nxt.key += subkeys[s][t] + '#';
          extend(nxt);
        }
    };
    for (int s = r0 - 1; s >= 0; --s)
      for (size_t t = 0; t < subs[s].size(); ++t) {
        ChainRec start{{{s, static_cast<int>(t)}}, subkeys[s][t] + '#'};
        extend(start);
      }

    std::unordered_map<std::string, int> cmap;
    for (size_t i = 0; i < chains.size(); ++i) {
      auto r = cmap.emplace(chains[i].key, static_cast<int>(i));
      check(r.second, "duplicate chain key");
    }

    // automorphism action on Q(R)
    auto [Li, dL] = clear_denominators(dq.Fb * inverse(lat_rows(R)));
    auto [Ri, dR] = clear_denominators(lat_rows(R) * dq.Fb_inv);
    std::vector<I64Mat> actions;
    actions.reserve(cs.classes[c].auts.size());
    for (const I64Mat& U : cs.classes[c].auts)
      actions.push_back(detail::quotient_action(sp, dq, Li, dL, Ri, dR, U));

    std::vector<char> processed(chains.size(), 0);
    for (size_t i = 0; i < chains.size(); ++i) {
      if (processed[i]) continue;
      std::unordered_set<std::string> orbit;
      for (const I64Mat& P : actions) {
        std::string key;
        for (auto [s, t] : chains[i].levels) {
          const I64Mat& U = subs[s][t];
          I64Mat img(U.m, dq.dq);
          for (int r = 0; r < U.m; ++r)
            for (int b = 0; b < dq.dq; ++b) {
              int64_t acc = 0;
              for (int a = 0; a < dq.dq; ++a) acc += U(r, a) * P(a, b);
              img(r, b) = mod_norm(acc, sp.l);
            }
          key += key_str(span_key_mod(img, sp.l)) + '#';
        }
        auto it = cmap.find(key);
        check(it != cmap.end(), "automorphism image of a chain not found");
        processed[it->second] = 1;
        orbit.insert(std::move(key));
      }
      Int orb(static_cast<long>(orbit.size()));
      check(cs.classes[c].aut_order % orb == 0, "orbit size does not divide the group order");

      Cell cell;
      cell.id = static_cast<int>(C.cells.size());
      cell.dim = static_cast<int>(chains[i].levels.size());
      cell.type = {r0};
      cell.verts = {c};
      std::vector<Lattice> members = {R};
      for (auto [s, t] : chains[i].levels) {
        cell.type.push_back(s);
        const Lattice& L2 = sublats[s][t];
        cell.verts.push_back(classify(sp, cs, L2, false));
        members.push_back(L2);
      }
      cell.weight = cs.classes[c].aut_order / orb;
      cell.count = orb;
      cell.orientation_reversing = (cell.dim % 4 == 1 || cell.dim % 4 == 2);
      cell.root_class = c;
      for (const std::string& k : orbit) C.chain_cell[c][k] = cell.id;
      C.cells.push_back(cell);
      C.cell_members.push_back(std::move(members));
    }
  }

  // involution on cells
  C.iota_cell.assign(C.cells.size(), -1);
  for (int c = 0; c < nc; ++c) C.iota_cell[c] = cs.iota[c];
  for (size_t e = nc; e < C.cells.size(); ++e) {
#ifdef BRANDT_TRACE
    fprintf(stderr, "[trace] iota for cell %zu\n", e);
#endif
    const Cell& cell = C.cells[e];
    const std::vector<Lattice>& members = C.cell_members[e];
    int k = cell.dim;
    const Lattice& Mk = members.back();
    Lattice Mks = dual_lattice(sp, Mk);
    int cprime = cs.iota[cell.verts.back()];
    std::array<I64Mat, 4> target;
    {
      std::array<QMat, 4> gq = gram_family_q(sp, lat_rows(Mks));
      std::array<IMat, 4> gi;
      for (int a = 0; a < 4; ++a) {
        for (Rat& x : gq[a].a) x *= Rat(sp.ell);
        check(is_integral(gq[a]), "scaled dual Gram not integral");
        gi[a] = to_int(gq[a]);
      }
      target = fam64(gi);
    }
    auto psi = find_isometry(cs.classes[cprime].gram, target);
    check(psi.has_value(), "no transport isometry for the dual chain");
    QMat Upsi = to_rat(to_int(*psi));
    const ModQuotient& dqp = get_dq(C, cprime);
    QMat Mks_inv = inverse(lat_rows(Mks));
    std::string key;
    for (int i = k - 1; i >= 0; --i) {
      Lattice Mis = dual_lattice(sp, members[i]);
      QMat Z = (lat_rows(Mis) * Mks_inv) * Upsi;  // rows in rep(cprime) coords
      key += key_str(superlattice_span_key(sp, dqp, cs.classes[cprime].rep, Z)) + '#';
    }
    auto it = C.chain_cell[cprime].find(key);
    check(it != C.chain_cell[cprime].end(), "dual chain not found among enumerated chains");
    C.iota_cell[e] = it->second;
  }
  for (size_t e = 0; e < C.cells.size(); ++e) {
    int f = C.iota_cell[e];
    check(C.iota_cell[f] == static_cast<int>(e), "cell involution is not an involution");
    check(C.cells[f].weight == C.cells[e].weight, "involution does not preserve weights");
    const auto& t1 = C.cells[e].type;
    const auto& t2 = C.cells[f].type;
    check(t1.size() == t2.size(), "involution dimension mismatch");
    for (size_t i = 0; i < t1.size(); ++i)
      check(t2[i] == sp.g - t1[t1.size() - 1 - i], "involution type mismatch");
    C.cells[e].half = (f == static_cast<int>(e));
  }
  return C;
}

// cell id of an arbitrary chain of properly nested integral l-bounded
// lattices (members listed ascending)
inline int cell_of_chain(BrandtComplex& C, const std::vector<Lattice>& chain) {
  const BrandtSpace& sp = C.sp;
  Census& cs = C.census;
  check(!chain.empty(), "empty chain");
  int c = classify(sp, cs, chain[0], false);
  if (chain.size() == 1) return c;
  std::array<I64Mat, 4> fam = fam64(gram_family(sp, chain[0]));
  auto psi = find_isometry(cs.classes[c].gram, fam);
  check(psi.has_value(), "no transport isometry for the chain root");
  QMat Upsi = to_rat(to_int(*psi));
  const ModQuotient& dq = get_dq(C, c);
  QMat M0_inv = inverse(lat_rows(chain[0]));
  std::string key;
  for (size_t i = 1; i < chain.size(); ++i) {
    QMat Z = (lat_rows(chain[i]) * M0_inv) * Upsi;
    key += key_str(superlattice_span_key(sp, dq, cs.classes[c].rep, Z)) + '#';
  }
  auto it = C.chain_cell[c].find(key);
  check(it != C.chain_cell[c].end(), "chain not found among enumerated chains");
  return it->second;
}

// the i-th face of a cell: drop the i-th member of the representative chain
inline int face_of_cell(BrandtComplex& C, int cell_id, int i) {
  const Cell& cell = C.cells[cell_id];
  check(cell.dim >= 1, "faces of a vertex");
  check(0 <= i && i <= cell.dim, "face index out of range");
  std::vector<Lattice> chain = C.cell_members[cell_id];
  chain.erase(chain.begin() + i);
  return cell_of_chain(C, chain);
}

// cells of the little complex: iota-orbits of cells, fixed ones are half
struct LittleCells {
  std::vector<int> rep;    // enhanced cell id, one per orbit
  std::vector<char> half;  // orbit is fixed by the involution
};

inline LittleCells little_cells(const BrandtComplex& C) {
  LittleCells L;
  for (size_t c = 0; c < C.cells.size(); ++c) {
    int ic = C.iota_cell[c];
    if (ic < static_cast<int>(c)) continue;
    L.rep.push_back(static_cast<int>(c));
    L.half.push_back(ic == static_cast<int>(c));
  }
  return L;
}

// canonical label of an iota-orbit of type vectors: the smaller of the type
// vector and its hatted reverse
inline std::vector<int> bar_type(const std::vector<int>& t, int g) {
  std::vector<int> h(t.size());
  for (size_t i = 0; i < t.size(); ++i) h[i] = g - t[t.size() - 1 - i];
  return std::min(t, h);
}

}  // namespace brandt
