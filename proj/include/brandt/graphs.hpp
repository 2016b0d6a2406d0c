#pragma once
// Adjacency matrices of the enhanced, little, and big [l]-isogeny graphs.
//
// Enhanced graph: vertices are the census classes, split by type.  The
// weighted adjacency is a block matrix A = [A_{r,s}] with
//   * A_{r,s}[i][j] for r > s: the number of type-s superlattices of the
//     i-th type-r representative lying in the j-th type-s class
//     (equivalently sum over edge classes e of w(v_i)/w(e)),
//   * A_{r,s} = A_{r^,s^} relabelled through the involution for r < s,
//   * A_{r,r} = 0.
// Little graph: vertices are involution orbits of classes, indexed by bar
// types 0.. floor(g/2); blocks come from the quotient recipe (generic bar
// types sum the two dual blocks; the self-dual middle type doubles rows at
// ramified vertices and merges the two sheets at etale ones).

#include "brandt/complex.hpp"

#include <vector>

namespace brandt {

struct EnhancedGraph {
  int g = 0;
  std::vector<std::vector<int>> ids;       // per type: class ids (census order)
  std::vector<std::vector<I64Mat>> A;      // (g+1) x (g+1) blocks
};

struct LittleGraph {
  int g = 0;
  int nbar = 0;                            // number of bar types, floor(g/2)+1
  std::vector<std::vector<int>> reps;      // per bar type: representative class ids
  std::vector<char> middle_ram;            // for the middle bar type (g even): ramified flags
  std::vector<std::vector<I64Mat>> A;      // nbar x nbar blocks
};

namespace detail {

// position of each class id inside its type list
inline std::vector<int> type_positions(const Census& cs) {
  std::vector<int> pos(cs.classes.size(), -1);
  for (const auto& lst : cs.ids_by_type)
    for (size_t k = 0; k < lst.size(); ++k) pos[lst[k]] = static_cast<int>(k);
  return pos;
}

}  // namespace detail

inline EnhancedGraph enhanced_graph(const BrandtSpace& sp, Census& cs) {
  int g = sp.g;
  EnhancedGraph E;
  E.g = g;
  E.ids = cs.ids_by_type;
  std::vector<int> pos = detail::type_positions(cs);
  E.A.assign(g + 1, std::vector<I64Mat>(g + 1));
  for (int r = 0; r <= g; ++r)
    for (int s = 0; s <= g; ++s)
      E.A[r][s] = I64Mat(static_cast<int>(E.ids[r].size()), static_cast<int>(E.ids[s].size()));
  // direct superlattice counting for r > s
  for (int r = 1; r <= g; ++r)
    for (size_t i = 0; i < E.ids[r].size(); ++i) {
      Lattice R = cs.classes[E.ids[r][i]].rep;
      for (int s = 0; s < r; ++s) {
        I64Mat& blk = E.A[r][s];
        for (const Lattice& L : superlattices(sp, R, s)) {
          int j = classify(sp, cs, L, false);
          check(cs.classes[j].type == s, "superlattice landed in the wrong type");
          blk(static_cast<int>(i), pos[j]) += 1;
        }
        int64_t total = 0;
        for (size_t j = 0; j < E.ids[s].size(); ++j) total += blk(static_cast<int>(i), static_cast<int>(j));
        check(Int(static_cast<long>(total)) == count_neighbors(sp.ell, r, s),
              "enhanced row sum disagrees with the product formula");
      }
    }
  // duality for r < s
  for (int r = 0; r <= g; ++r)
    for (int s = r + 1; s <= g; ++s) {
      int rh = g - r, sh = g - s;
      for (size_t i = 0; i < E.ids[r].size(); ++i)
        for (size_t j = 0; j < E.ids[s].size(); ++j)
          E.A[r][s](static_cast<int>(i), static_cast<int>(j)) =
              E.A[rh][sh](pos[cs.iota[E.ids[r][i]]], pos[cs.iota[E.ids[s][j]]]);
    }
  return E;
}

inline EnhancedGraph enhanced_graph(BrandtComplex& C) { return enhanced_graph(C.sp, C.census); }

// weight reciprocity: A_{r,s}[i][j] w_j = A_{s,r}[j][i] w_i
inline void check_weight_reciprocity(const EnhancedGraph& E, Census& cs) {
  int g = E.g;
  for (size_t c = 0; c < cs.classes.size(); ++c) ensure_auts(cs, static_cast<int>(c));
  for (int r = 0; r <= g; ++r)
    for (int s = 0; s <= g; ++s)
      for (size_t i = 0; i < E.ids[r].size(); ++i)
        for (size_t j = 0; j < E.ids[s].size(); ++j) {
          Int lhs = Int(static_cast<long>(E.A[r][s](static_cast<int>(i), static_cast<int>(j)))) *
                    cs.classes[E.ids[s][j]].aut_order;
          Int rhs = Int(static_cast<long>(E.A[s][r](static_cast<int>(j), static_cast<int>(i)))) *
                    cs.classes[E.ids[r][i]].aut_order;
          check(lhs == rhs, "weight reciprocity fails");
        }
}

inline LittleGraph little_graph(const EnhancedGraph& E, const Census& cs) {
  int g = E.g;
  LittleGraph L;
  L.g = g;
  L.nbar = g / 2 + 1;
  std::vector<int> pos = detail::type_positions(cs);
  L.reps.assign(L.nbar, {});
  for (int r = 0; r < L.nbar; ++r) {
    if (2 * r != g) {
      L.reps[r] = E.ids[r];
    } else {
      for (int id : E.ids[r]) {
        if (cs.iota[id] == id) {
          L.reps[r].push_back(id);
          L.middle_ram.push_back(1);
        } else if (id < cs.iota[id]) {
          L.reps[r].push_back(id);
          L.middle_ram.push_back(0);
        }
      }
    }
  }
  L.A.assign(L.nbar, std::vector<I64Mat>(L.nbar));
  for (int r = 0; r < L.nbar; ++r)
    for (int s = 0; s < L.nbar; ++s) {
      int hr = static_cast<int>(L.reps[r].size());
      int hs = static_cast<int>(L.reps[s].size());
      I64Mat blk(hr, hs);
      bool rmid = (2 * r == g), smid = (2 * s == g);
      if (rmid && smid) {
        // middle x middle: zero
      } else if (!rmid && !smid) {
        if (r == s) {
          // A_{rbar,rbar} = A_{r,r^}, columns matched through iota
          for (int i = 0; i < hr; ++i)
            for (int j = 0; j < hs; ++j)
              blk(i, j) = E.A[r][g - r](i, pos[cs.iota[L.reps[s][j]]]);
        } else {
          for (int i = 0; i < hr; ++i)
            for (int j = 0; j < hs; ++j)
              blk(i, j) = E.A[r][s](i, j) + E.A[r][g - s](i, pos[cs.iota[L.reps[s][j]]]);
        }
      } else if (rmid) {
        // rows at the middle type: ramified rows double, etale rows merge
        for (int i = 0; i < hr; ++i) {
          int c = L.reps[r][i];
          for (int j = 0; j < hs; ++j) {
            if (L.middle_ram[i])
              blk(i, j) = 2 * E.A[r][s](pos[c], j);
            else
              blk(i, j) = E.A[r][s](pos[c], j) + E.A[r][s](pos[cs.iota[c]], j);
          }
        }
      } else {
        // columns at the middle type: ramified columns stay, etale columns merge
        for (int j = 0; j < hs; ++j) {
          int c = L.reps[s][j];
          for (int i = 0; i < hr; ++i) {
            if (L.middle_ram[j])
              blk(i, j) = E.A[r][s](i, pos[c]);
            else
              blk(i, j) = E.A[r][s](i, pos[c]) + E.A[r][s](i, pos[cs.iota[c]]);
          }
        }
      }
      L.A[r][s] = blk;
    }
  return L;
}

// assemble a block matrix into one square matrix (blocks in listed order)
inline I64Mat assemble_blocks(const std::vector<std::vector<I64Mat>>& A) {
  int nb = static_cast<int>(A.size());
  int total = 0;
  std::vector<int> off(nb, 0);
  for (int r = 0; r < nb; ++r) {
    off[r] = total;
    total += A[r][r].m;
  }
  I64Mat M(total, total);
  for (int r = 0; r < nb; ++r)
    for (int s = 0; s < nb; ++s)
      for (int i = 0; i < A[r][s].m; ++i)
        for (int j = 0; j < A[r][s].n; ++j) M(off[r] + i, off[s] + j) = A[r][s](i, j);
  return M;
}

// Direct adjacency of the big graph, from the 1-cell orbit data: the entry at
// (orbit i, orbit j) counts equivalence classes of isogenies from either
// sheet of i into the class set of j.  Sources contribute one term per sheet
// (so a self-dual source row doubles), while target sheets falling in the
// same class merge.  Must equal the little-graph recipe entrywise.
inline std::vector<std::vector<I64Mat>> big_graph_blocks(const BrandtComplex& C,
                                                         const LittleGraph& L) {
  const Census& cs = C.census;
  int nc = static_cast<int>(cs.classes.size());
  std::vector<std::vector<int64_t>> route(nc, std::vector<int64_t>(nc, 0));
  for (const Cell& cell : C.cells)
    if (cell.dim == 1) route[cell.verts[0]][cell.verts[1]] += to_long(cell.count);
  std::vector<std::vector<I64Mat>> A(L.nbar, std::vector<I64Mat>(L.nbar));
  for (int rb = 0; rb < L.nbar; ++rb)
    for (int sb = 0; sb < L.nbar; ++sb) {
      I64Mat blk(static_cast<int>(L.reps[rb].size()), static_cast<int>(L.reps[sb].size()));
      for (size_t i = 0; i < L.reps[rb].size(); ++i) {
        int src[2] = {L.reps[rb][i], cs.iota[L.reps[rb][i]]};
        for (size_t j = 0; j < L.reps[sb].size(); ++j) {
          int t0 = L.reps[sb][j], t1 = cs.iota[t0];
          for (int u : src) {
            int64_t v = route[u][t0];
            if (t1 != t0) v += route[u][t1];
            blk(static_cast<int>(i), static_cast<int>(j)) += v;
          }
        }
      }
      A[rb][sb] = blk;
    }
  return A;
}

// generic verdicts on an undirected support graph given as 0/1 adjacency
// (self-loops count as odd cycles): (connected, bipartite)
inline std::pair<bool, bool> graph_verdicts(const std::vector<std::vector<char>>& adj) {
  int n = static_cast<int>(adj.size());
  if (n == 0) return {true, true};
  std::vector<int> color(n, -1);
  std::vector<int> stack{0};
  color[0] = 0;
  int seen = 1;
  bool bip = true;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v = 0; v < n; ++v) {
      if (!adj[u][v]) continue;
      if (color[v] == -1) {
        color[v] = 1 - color[u];
        ++seen;
        stack.push_back(v);
      } else if (color[v] == color[u]) {
        bip = false;
      }
    }
  }
  return {seen == n, bip};
}

// support of the enhanced graph restricted to a set of types
inline std::vector<std::vector<char>> enhanced_support(const EnhancedGraph& E,
                                                       const std::vector<int>& types) {
  std::vector<std::pair<int, int>> verts;
  for (int t : types)
    for (size_t i = 0; i < E.ids[t].size(); ++i) verts.push_back({t, static_cast<int>(i)});
  int n = static_cast<int>(verts.size());
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      auto [r, i] = verts[a];
      auto [s, j] = verts[b];
      if (E.A[r][s](i, j) > 0 || E.A[s][r](j, i) > 0) adj[a][b] = adj[b][a] = 1;
    }
  return adj;
}

inline std::vector<std::vector<char>> little_support(const LittleGraph& L) {
  std::vector<std::pair<int, int>> verts;
  for (int t = 0; t < L.nbar; ++t)
    for (size_t i = 0; i < L.reps[t].size(); ++i) verts.push_back({t, static_cast<int>(i)});
  int n = static_cast<int>(verts.size());
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      auto [r, i] = verts[a];
      auto [s, j] = verts[b];
      if (L.A[r][s](i, j) > 0 || L.A[s][r](j, i) > 0) adj[a][b] = adj[b][a] = 1;
    }
  return adj;
}

// the cell-route weighted adjacency: sum over 1-cell classes e rooted at the
// i-th type-r class with second member in the j-th type-s class of
// w(v_i)/w(e); must agree with direct counting
inline I64Mat cell_route_block(const BrandtComplex& C, int r, int s) {
  const Census& cs = C.census;
  std::vector<int> pos = detail::type_positions(cs);
  I64Mat blk(static_cast<int>(cs.ids_by_type[r].size()),
             static_cast<int>(cs.ids_by_type[s].size()));
  for (const Cell& cell : C.cells) {
    if (cell.dim != 1 || cell.type[0] != r || cell.type[1] != s) continue;
    blk(pos[cell.verts[0]], pos[cell.verts[1]]) += to_long(cell.count);
  }
  return blk;
}

}  // namespace brandt
