#pragma once

#include <functional>
#include <memory>
#include <set>
#include <vector>

#include "bnh/chain_map.hpp"
#include "bnh/complex.hpp"

// Gaussian elimination of unit differential entries.  The cube basis already
// carries the {1, X} delooping, so simplification is pure cancellation: pick
// an entry equal to 1 (the only unit of F2[H]), cancel its generator pair,
// apply the standard correction d' = d + (column of s)(row of t), repeat.
// The homotopy equivalence (f to the reduced complex, g back) is accumulated
// on request so cobordism maps can be conjugated through the reduction.

namespace bnh {

struct Reduction {
  std::shared_ptr<const GradedComplex> reduced;
  ChainMap to_reduced;    // f: original -> reduced
  ChainMap from_reduced;  // g: reduced -> original
};

namespace detail {

struct SparseSlotMatrix {
  // rows[r]: col -> poly; col_rows[c]: rows with a nonzero entry
  std::vector<std::map<int, Poly>> rows;
  std::vector<std::set<int>> col_rows;

  void init(const PolyMatrix& m) {
    rows.assign(m.rows(), {});
    col_rows.assign(m.cols(), {});
    for (int i = 0; i < m.rows(); ++i) {
      for (const auto& [j, v] : m.row(i)) {
        rows[i][j] = v;
        col_rows[j].insert(i);
      }
    }
  }

  const Poly& at(int i, int j) const {
    static const Poly kZero;
    auto it = rows[i].find(j);
    return it == rows[i].end() ? kZero : it->second;
  }

  void add_to(int i, int j, const Poly& v) {
    if (v.is_zero()) return;
    auto it = rows[i].find(j);
    if (it == rows[i].end()) {
      rows[i].emplace(j, v);
      col_rows[j].insert(i);
    } else {
      it->second += v;
      if (it->second.is_zero()) {
        rows[i].erase(it);
        col_rows[j].erase(i);
      }
    }
  }

  void clear_row(int i) {
    for (const auto& [j, v] : rows[i]) col_rows[j].erase(i);
    rows[i].clear();
  }

  void clear_col(int j) {
    for (int i : col_rows[j]) rows[i].erase(j);
    col_rows[j].clear();
  }
};

}  // namespace detail

/// Pivot filter: which unit entries may be canceled.  Receives the slot's
/// absolute homological degree and the generator pair.
using PivotFilter =
    std::function<bool(int h, const Generator& src, const Generator& tgt)>;

inline Reduction reduce_with_matching(const GradedComplex& input, const PivotFilter& allowed,
                                      bool want_maps) {
  int slots = input.slots();
  std::vector<detail::SparseSlotMatrix> d(slots);
  for (int i = 0; i < slots; ++i) d[i].init(input.diff[i]);

  std::vector<std::vector<bool>> alive(slots);
  for (int i = 0; i < slots; ++i) alive[i].assign(input.gens[i].size(), true);

  // f rows / g columns over the original basis, only alive indices meaningful
  std::vector<std::vector<std::map<int, Poly>>> f_row(slots), g_col(slots);
  if (want_maps) {
    for (int i = 0; i < slots; ++i) {
      f_row[i].resize(input.gens[i].size());
      g_col[i].resize(input.gens[i].size());
      for (size_t a = 0; a < input.gens[i].size(); ++a) {
        f_row[i][a][static_cast<int>(a)] = Poly::one();
        g_col[i][a][static_cast<int>(a)] = Poly::one();
      }
    }
  }

  auto cancel = [&](int i, int t, int s) {
    // pivot d[i](t, s) == 1: s in slot i, t in slot i+1
    std::vector<std::pair<int, Poly>> col_s, row_t;
    for (int b : d[i].col_rows[s])
      if (b != t) col_s.push_back({b, d[i].at(b, s)});
    for (const auto& [a, v] : d[i].rows[t])
      if (a != s) row_t.push_back({a, v});

    if (want_maps) {
      // f at slot i+1: row_b += d[b][s] * row_t
      for (const auto& [b, vbs] : col_s) {
        for (const auto& [orig, coeff] : f_row[i + 1][t]) {
          auto& cell = f_row[i + 1][b][orig];
          cell += vbs * coeff;
          if (cell.is_zero()) f_row[i + 1][b].erase(orig);
        }
      }
      // g at slot i: col_a += col_s * d[t][a]
      for (const auto& [a, vta] : row_t) {
        for (const auto& [orig, coeff] : g_col[i][s]) {
          auto& cell = g_col[i][a][orig];
          cell += coeff * vta;
          if (cell.is_zero()) g_col[i][a].erase(orig);
        }
      }
      f_row[i][s].clear();
      f_row[i + 1][t].clear();
      g_col[i][s].clear();
      g_col[i + 1][t].clear();
    }

    // d' = d + col_s (x) row_t on slot i
    for (const auto& [b, vbs] : col_s)
      for (const auto& [a, vta] : row_t) d[i].add_to(b, a, vbs * vta);

    d[i].clear_row(t);
    d[i].clear_col(s);
    if (i > 0) d[i - 1].clear_row(s);
    if (i + 1 < slots) d[i + 1].clear_col(t);
    alive[i][s] = false;
    alive[i + 1][t] = false;
  };

  // greedy sweep in h-order until no unit entries remain
  bool progress = true;
  while (progress) {
    progress = false;
    for (int i = 0; i + 1 < slots; ++i) {
      bool found = true;
      while (found) {
        found = false;
        for (int t = 0; t < static_cast<int>(d[i].rows.size()) && !found; ++t) {
          for (const auto& [s, v] : d[i].rows[t]) {
            if (v.is_unit() &&
                (!allowed || allowed(input.h_min + i, input.gens[i][s], input.gens[i + 1][t]))) {
              cancel(i, t, s);
              found = true;
              progress = true;
              break;
            }
          }
        }
      }
    }
  }

  // compact
  auto out = std::make_shared<GradedComplex>();
  out->theory = input.theory;
  out->h_min = input.h_min;
  out->resolutions = input.resolutions;
  out->gens.assign(slots, {});
  std::vector<std::vector<int>> new_index(slots);
  for (int i = 0; i < slots; ++i) {
    new_index[i].assign(input.gens[i].size(), -1);
    for (size_t a = 0; a < input.gens[i].size(); ++a) {
      if (alive[i][a]) {
        new_index[i][a] = static_cast<int>(out->gens[i].size());
        out->gens[i].push_back(input.gens[i][a]);
      }
    }
  }
  out->diff.assign(slots, PolyMatrix());
  for (int i = 0; i < slots; ++i) {
    int rows = (i + 1 < slots) ? static_cast<int>(out->gens[i + 1].size()) : 0;
    PolyMatrix m(rows, static_cast<int>(out->gens[i].size()));
    if (i + 1 < slots) {
      for (int t = 0; t < static_cast<int>(d[i].rows.size()); ++t) {
        if (!alive[i + 1][t]) continue;
        for (const auto& [s, v] : d[i].rows[t]) m.set(new_index[i + 1][t], new_index[i][s], v);
      }
    }
    out->diff[i] = std::move(m);
  }

  Reduction red;
  red.reduced = out;
  if (want_maps) {
    auto orig = std::make_shared<GradedComplex>(input);
    ChainMap f, g;
    f.src = orig;
    f.tgt = out;
    g.src = out;
    g.tgt = orig;
    for (int i = 0; i < slots; ++i) {
      int h = input.h_min + i;
      PolyMatrix fm(static_cast<int>(out->gens[i].size()),
                    static_cast<int>(input.gens[i].size()));
      PolyMatrix gm(static_cast<int>(input.gens[i].size()),
                    static_cast<int>(out->gens[i].size()));
      for (size_t a = 0; a < input.gens[i].size(); ++a) {
        if (!alive[i][a]) continue;
        int na = new_index[i][a];
        for (const auto& [orig_col, v] : f_row[i][a]) fm.set(na, orig_col, v);
        for (const auto& [orig_row, v] : g_col[i][a]) gm.set(orig_row, na, v);
      }
      if (!fm.is_zero()) f.blocks[h] = std::move(fm);
      if (!gm.is_zero()) g.blocks[h] = std::move(gm);
    }
    red.to_reduced = std::move(f);
    red.from_reduced = std::move(g);
  }
  return red;
}

inline Reduction simplify_with_maps(const GradedComplex& input, bool want_maps = true) {
  return reduce_with_matching(input, nullptr, want_maps);
}

inline GradedComplex simplify(const GradedComplex& input) {
  return *simplify_with_maps(input, false).reduced;
}

/// True when no differential entry is a unit.
inline bool fully_reduced(const GradedComplex& c) {
  for (const auto& m : c.diff) {
    for (int i = 0; i < m.rows(); ++i)
      for (const auto& [j, v] : m.row(i))
        if (v.is_unit()) return false;
  }
  return true;
}

}  // namespace bnh
