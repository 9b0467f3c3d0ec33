#pragma once

#include <sstream>

#include "bnh/complex.hpp"
#include "bnh/homology.hpp"
#include "bnh/simplify.hpp"

// Reduced Bar-Natan complexes at a basepoint.  The reducing map f_x dots the
// basepoint circle, so its image is the span of generators whose basepoint
// circle carries X; that span is a subcomplex whenever e2 = 0, and the
// x-flavor is exactly this subcomplex.  The 1-flavor is the quotient by it,
// realized on the label-1 generators with the projected differential.

namespace bnh {

enum class ReducedFlavor { X, One };

namespace detail {

inline bool basepoint_label_is_x(const GradedComplex& c, int slot, const Generator& g) {
  const auto& table = *c.resolutions;
  int bp = *table.diagram.basepoint;
  int circle = table.at(g.state).circle_of_edge.at(bp);
  (void)slot;
  return (g.labels >> circle) & 1u;
}

}  // namespace detail

inline GradedComplex reduced_complex_of(const GradedComplex& full, ReducedFlavor flavor) {
  if (!full.resolutions || !full.resolutions->diagram.basepoint)
    throw DiagramError(DiagramErrorKind::MissingBasepoint,
                       "reduced complex requires a basepointed diagram");
  if (!full.theory.e2.is_zero())
    throw std::invalid_argument("reduced complex needs e2 = 0");

  bool keep_x = (flavor == ReducedFlavor::X);
  GradedComplex out;
  out.theory = full.theory;
  out.h_min = full.h_min;
  out.resolutions = full.resolutions;
  out.gens.assign(full.slots(), {});
  std::vector<std::vector<int>> keep_index(full.slots());
  for (int i = 0; i < full.slots(); ++i) {
    keep_index[i].assign(full.gens[i].size(), -1);
    for (size_t a = 0; a < full.gens[i].size(); ++a) {
      if (detail::basepoint_label_is_x(full, i, full.gens[i][a]) == keep_x) {
        keep_index[i][a] = static_cast<int>(out.gens[i].size());
        out.gens[i].push_back(full.gens[i][a]);
      }
    }
  }
  out.diff.assign(full.slots(), PolyMatrix());
  for (int i = 0; i < full.slots(); ++i) {
    int rows = (i + 1 < full.slots()) ? static_cast<int>(out.gens[i + 1].size()) : 0;
    PolyMatrix m(rows, static_cast<int>(out.gens[i].size()));
    if (i + 1 < full.slots()) {
      for (int r = 0; r < full.diff[i].rows(); ++r) {
        if (keep_index[i + 1][r] < 0) continue;
        for (const auto& [col, v] : full.diff[i].row(r)) {
          if (keep_index[i][col] < 0) continue;  // quotient projection
          m.set(keep_index[i + 1][r], keep_index[i][col], v);
        }
      }
    }
    out.diff[i] = std::move(m);
  }
  // the x-flavor must be honestly closed under the differential
  if (keep_x) {
    for (int i = 0; i + 1 < full.slots(); ++i) {
      for (int r = 0; r < full.diff[i].rows(); ++r) {
        for (const auto& [col, v] : full.diff[i].row(r)) {
          if (keep_index[i][col] >= 0 && keep_index[i + 1][r] < 0)
            throw std::runtime_error("reduced complex: image subcomplex not closed");
        }
      }
    }
  }
  return out;
}

inline GradedComplex reduced_complex(const Diagram& d, ReducedFlavor flavor,
                                     const FrobeniusTheory& theory,
                                     const BuildLimits& limits = {}) {
  return reduced_complex_of(build_complex(d, theory, limits), flavor);
}

/// The chain map f_x: dot the basepoint circle at every generator.
inline ChainMap basepoint_dot_map(std::shared_ptr<const GradedComplex> c) {
  if (!c->resolutions || !c->resolutions->diagram.basepoint)
    throw DiagramError(DiagramErrorKind::MissingBasepoint, "dot map requires a basepoint");
  const auto& table = *c->resolutions;
  int bp = *table.diagram.basepoint;
  ChainMap f;
  f.src = f.tgt = c;
  f.dq = 2;
  for (int i = 0; i < c->slots(); ++i) {
    int h = c->h_min + i;
    int n = static_cast<int>(c->gens[i].size());
    PolyMatrix m(n, n);
    for (int a = 0; a < n; ++a) {
      const Generator& g = c->gens[i][a];
      int circle = table.at(g.state).circle_of_edge.at(bp);
      AlgElt img = c->theory.dot((g.labels >> circle) & 1u);
      if (!img.c0.is_zero()) {
        Generator t = g;
        t.labels = g.labels & ~(1u << circle);
        auto it = std::lower_bound(c->gens[i].begin(), c->gens[i].end(), t);
        m.add_to(static_cast<int>(it - c->gens[i].begin()), a, img.c0);
      }
      if (!img.c1.is_zero()) {
        Generator t = g;
        t.labels = g.labels | (1u << circle);
        auto it = std::lower_bound(c->gens[i].begin(), c->gens[i].end(), t);
        m.add_to(static_cast<int>(it - c->gens[i].begin()), a, img.c1);
      }
    }
    if (!m.is_zero()) f.blocks[h] = std::move(m);
  }
  return f;
}

// ---------------------------------------------------------------------------
// Splitting verification (unreduced = x-flavor (+) 1-flavor, and the two
// reduced homologies agree up to the q-shift by 2).

struct SplittingReport {
  GradedModule unreduced, red_x, red_one;
  bool direct_sum_matches = false;
  bool shift_matches = false;
  std::string detail;

  bool pass() const { return direct_sum_matches && shift_matches; }
};

inline SplittingReport verify_splitting(const Diagram& d,
                                        const FrobeniusTheory& theory,
                                        const BuildLimits& limits = {}) {
  Diagram based = d;
  if (!based.basepoint) based.basepoint = based.components.at(0).at(0);
  auto full = build_complex(based, theory, limits);

  SplittingReport rep;
  rep.unreduced = homology(simplify(full));
  rep.red_x = homology(simplify(reduced_complex_of(full, ReducedFlavor::X)));
  rep.red_one = homology(simplify(reduced_complex_of(full, ReducedFlavor::One)));

  // direct sum per bidegree
  GradedModule sum;
  for (const auto& [hq, dec] : rep.red_x.table) {
    auto& cell = sum.table[hq];
    cell.free_rank += dec.free_rank;
    cell.torsion.insert(cell.torsion.end(), dec.torsion.begin(), dec.torsion.end());
  }
  for (const auto& [hq, dec] : rep.red_one.table) {
    auto& cell = sum.table[hq];
    cell.free_rank += dec.free_rank;
    cell.torsion.insert(cell.torsion.end(), dec.torsion.begin(), dec.torsion.end());
  }
  for (auto& [hq, cell] : sum.table) std::sort(cell.torsion.begin(), cell.torsion.end());
  rep.direct_sum_matches = sum.same_table(rep.unreduced);

  // red_x at (h, q) = red_one at (h, q - 2)
  GradedModule shifted;
  for (const auto& [hq, dec] : rep.red_one.table)
    shifted.table[{hq.first, hq.second + 2}] = dec;
  rep.shift_matches = shifted.same_table(rep.red_x);

  std::ostringstream msg;
  msg << (rep.direct_sum_matches ? "sum ok" : "sum MISMATCH") << "; "
      << (rep.shift_matches ? "shift ok" : "shift MISMATCH");
  rep.detail = msg.str();
  return rep;
}

}  // namespace bnh
