#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "bnh/diagram.hpp"
#include "bnh/frobenius.hpp"
#include "bnh/matrix.hpp"

// The bigraded chain complex of a link diagram: one vertex per complete
// smoothing, a free module A^{(x) circles} per vertex with the {1, X} basis
// spelled out (so the complex is born delooped), and edge maps m / comul.
//
// Gradings: a generator at state v with label set L has
//     h = |v| - n_minus
//     q = 2*#X(L) - |v| - circles(v) - n_plus + 2*n_minus .
// With q(H) = +2 this makes the differential q-degree 0 and puts the unknot
// generators at q = -1 and q = +1.

namespace bnh {

struct Generator {
  uint32_t state = 0;
  uint32_t labels = 0;  // bit per circle of the resolution, 1 = X
  int h = 0;
  int q = 0;

  friend bool operator<(const Generator& a, const Generator& b) {
    if (a.state != b.state) return a.state < b.state;
    return a.labels < b.labels;
  }
  friend bool operator==(const Generator& a, const Generator& b) {
    return a.state == b.state && a.labels == b.labels;
  }
};

struct ResolutionTable {
  Diagram diagram;
  std::vector<StateCircles> states;  // indexed by state bitmask

  const StateCircles& at(uint32_t s) const { return states[s]; }
};

struct GradedComplex {
  FrobeniusTheory theory;
  int h_min = 0;
  std::vector<std::vector<Generator>> gens;  // per h slot
  std::vector<PolyMatrix> diff;              // diff[i]: slot i -> slot i+1
  std::shared_ptr<const ResolutionTable> resolutions;  // may be null

  int slots() const { return static_cast<int>(gens.size()); }
  int h_max() const { return h_min + slots() - 1; }

  int slot_of(int h) const { return h - h_min; }
  bool has_slot(int h) const { return h >= h_min && h <= h_max(); }
  int size_at(int h) const {
    return has_slot(h) ? static_cast<int>(gens[slot_of(h)].size()) : 0;
  }

  /// Differential leaving degree h (rows indexed by degree h+1).
  PolyMatrix d_out(int h) const {
    if (!has_slot(h)) return PolyMatrix(size_at(h + 1), 0);
    int i = slot_of(h);
    if (i + 1 >= slots()) return PolyMatrix(0, size_at(h));
    return diff[i];
  }

  size_t total_generators() const {
    size_t n = 0;
    for (const auto& g : gens) n += g.size();
    return n;
  }

  /// Index of (state, labels) within a slot; -1 when absent.
  int index_of(int slot, uint32_t state, uint32_t labels) const {
    Generator probe{state, labels, 0, 0};
    const auto& v = gens[slot];
    auto it = std::lower_bound(v.begin(), v.end(), probe);
    if (it == v.end() || !(*it == probe)) return -1;
    return static_cast<int>(it - v.begin());
  }
};

struct BuildLimits {
  int max_crossings = 14;
  size_t max_generators = 1u << 22;
};

inline GradedComplex build_complex(const Diagram& d, const FrobeniusTheory& theory,
                                   const BuildLimits& limits = {}) {
  int n = static_cast<int>(d.crossings.size());
  if (n > limits.max_crossings)
    throw DiagramError(DiagramErrorKind::TooLarge,
                       "diagram exceeds the crossing bound (" + std::to_string(n) + " > " +
                           std::to_string(limits.max_crossings) + ")");

  auto table = std::make_shared<ResolutionTable>();
  table->diagram = d;
  table->states.reserve(size_t{1} << n);
  size_t total = 0;
  for (uint32_t s = 0; s < (1u << n); ++s) {
    table->states.push_back(resolve(d, s));
    total += size_t{1} << table->states.back().count();
    if (total > limits.max_generators)
      throw DiagramError(DiagramErrorKind::TooLarge, "state-sum exceeds the generator bound");
  }

  GradedComplex c;
  c.theory = theory;
  c.resolutions = table;
  c.h_min = -d.n_minus();
  c.gens.assign(n + 1, {});
  int q_shift = -d.n_plus() + 2 * d.n_minus();

  for (uint32_t s = 0; s < (1u << n); ++s) {
    const auto& sc = table->states[s];
    int weight = __builtin_popcount(s);
    int circles = sc.count();
    for (uint32_t labels = 0; labels < (1u << circles); ++labels) {
      Generator g;
      g.state = s;
      g.labels = labels;
      g.h = weight - d.n_minus();
      g.q = 2 * __builtin_popcount(labels) - weight - circles + q_shift;
      c.gens[weight].push_back(g);
    }
  }
  for (auto& slot : c.gens) std::sort(slot.begin(), slot.end());

  // index of each generator within its slot
  auto index_of = [&](int slot, uint32_t state, uint32_t labels) {
    Generator probe{state, labels, 0, 0};
    auto& v = c.gens[slot];
    auto it = std::lower_bound(v.begin(), v.end(), probe);
    return static_cast<int>(it - v.begin());
  };

  c.diff.assign(n + 1, PolyMatrix());
  for (int i = 0; i < n; ++i)
    c.diff[i] = PolyMatrix(static_cast<int>(c.gens[i + 1].size()),
                           static_cast<int>(c.gens[i].size()));
  c.diff[n] = PolyMatrix(0, static_cast<int>(c.gens[n].size()));

  for (int i = 0; i < n; ++i) {
    for (size_t col = 0; col < c.gens[i].size(); ++col) {
      const Generator& g = c.gens[i][col];
      const auto& src = table->states[g.state];
      for (int k = 0; k < n; ++k) {
        if ((g.state >> k) & 1u) continue;
        uint32_t s2 = g.state | (1u << k);
        const auto& tgt = table->states[s2];
        int slot2 = i + 1;

        const auto& cr = d.crossings[k];
        int ca = src.circle_of_edge.at(cr.e[0]);
        int cc = src.circle_of_edge.at(cr.e[2]);

        // map unaffected circles by a representative edge
        auto target_label_base = [&](int skip_a, int skip_b) {
          uint32_t tl = 0;
          for (int z = 0; z < tgt.count(); ++z) {
            if (z == skip_a || z == skip_b) continue;
            int rep = tgt.circles[z][0].first;
            int src_circle = src.circle_of_edge.at(rep);
            if ((g.labels >> src_circle) & 1u) tl |= (1u << z);
          }
          return tl;
        };

        if (ca != cc) {
          // merge
          int cz = tgt.circle_of_edge.at(cr.e[0]);
          AlgElt prod = theory.multiply((g.labels >> ca) & 1u, (g.labels >> cc) & 1u);
          uint32_t base = target_label_base(cz, -1);
          if (!prod.c0.is_zero())
            c.diff[i].add_to(index_of(slot2, s2, base), static_cast<int>(col), prod.c0);
          if (!prod.c1.is_zero())
            c.diff[i].add_to(index_of(slot2, s2, base | (1u << cz)), static_cast<int>(col),
                             prod.c1);
        } else {
          // split: the 1-smoothing joins a~d and b~c
          int z1 = tgt.circle_of_edge.at(cr.e[0]);
          int z2 = tgt.circle_of_edge.at(cr.e[1]);
          auto cm = theory.comultiply((g.labels >> ca) & 1u);
          uint32_t base = target_label_base(z1, z2);
          for (int l1 = 0; l1 < 2; ++l1) {
            for (int l2 = 0; l2 < 2; ++l2) {
              const Poly& coeff = cm[l1][l2];
              if (coeff.is_zero()) continue;
              uint32_t tl = base;
              if (l1) tl |= (1u << z1);
              if (l2) tl |= (1u << z2);
              c.diff[i].add_to(index_of(slot2, s2, tl), static_cast<int>(col), coeff);
            }
          }
        }
      }
    }
  }
  return c;
}

/// d o d = 0 sanity check.
inline bool differential_squares_to_zero(const GradedComplex& c) {
  for (int i = 0; i + 1 < c.slots(); ++i) {
    if (!(c.diff[i + 1] * c.diff[i]).is_zero()) return false;
  }
  return true;
}

/// Entry-level q-homogeneity: every nonzero differential entry from q_s to
/// q_t is the monomial H^{(q_s - q_t)/2}.
inline bool differential_is_homogeneous(const GradedComplex& c) {
  for (int i = 0; i + 1 < c.slots(); ++i) {
    for (int row = 0; row < c.diff[i].rows(); ++row) {
      for (const auto& [col, v] : c.diff[i].row(row)) {
        int qs = c.gens[i][col].q;
        int qt = c.gens[i + 1][row].q;
        if ((qs - qt) % 2 != 0) return false;
        int k = (qs - qt) / 2;
        if (!(v == Poly::h_power(k) && k >= 0)) return false;
      }
    }
  }
  return true;
}

}  // namespace bnh
