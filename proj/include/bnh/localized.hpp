#pragma once

#include <map>
#include <memory>
#include <set>
#include <vector>

#include "bnh/chain_map.hpp"
#include "bnh/complex.hpp"
#include "bnh/f2.hpp"
#include "bnh/movie.hpp"
#include "bnh/planar.hpp"

// The localized theory at H = 1 and its canonical generators.
//
// Setting H = 1 collapses the coefficient ring to F2 and the q-grading to a
// filtration; the homology is an F2 vector space of dimension 2^{#components}
// with a basis of canonical classes indexed by orientations.  A circle of the
// oriented resolution is labeled a = X+1 or b = X by the parity of its
// nesting depth plus its handedness: counterclockwise circles at even depth
// receive a.  Orientation reversal swaps a and b.

namespace bnh {

struct Orientation {
  uint32_t bits = 0;  // bit k set: component k reversed

  bool reversed(int comp) const { return (bits >> comp) & 1u; }
};

// ---------------------------------------------------------------------------
// H = 1 specialization.

struct LocalizedComplex {
  std::shared_ptr<const GradedComplex> bn;
  std::vector<F2Matrix> diff;  // per slot, evaluated at H = 1

  int slots() const { return bn->slots(); }
};

inline F2Matrix eval_at_one(const PolyMatrix& m) {
  F2Matrix f(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (const auto& [j, v] : m.row(i)) f.set(i, j, v.eval_at_one());
  return f;
}

inline LocalizedComplex localize(std::shared_ptr<const GradedComplex> cx) {
  LocalizedComplex lc;
  lc.bn = cx;
  lc.diff.reserve(cx->slots());
  for (int i = 0; i < cx->slots(); ++i) lc.diff.push_back(eval_at_one(cx->diff[i]));
  return lc;
}

/// F2 homology dimension at degree h.
inline int localized_dim(const LocalizedComplex& lc, int h) {
  if (!lc.bn->has_slot(h)) return 0;
  int i = lc.bn->slot_of(h);
  int n = static_cast<int>(lc.bn->gens[i].size());
  int rank_out = (i + 1 < lc.slots()) ? lc.diff[i].rank() : 0;
  int rank_in = (i > 0) ? lc.diff[i - 1].rank() : 0;
  return n - rank_out - rank_in;
}

inline int localized_total_dim(const LocalizedComplex& lc) {
  int total = 0;
  for (int h = lc.bn->h_min; h <= lc.bn->h_max(); ++h) total += localized_dim(lc, h);
  return total;
}

// ---------------------------------------------------------------------------
// Canonical generators.

/// The oriented-resolution state for orientation o: a crossing is smoothed by
/// 0 exactly when its sign, read in the o-reoriented diagram, is positive.
inline uint32_t oriented_state(const Diagram& d, const Orientation& o) {
  uint32_t state = 0;
  for (size_t k = 0; k < d.crossings.size(); ++k) {
    const Crossing& c = d.crossings[k];
    int cu = d.component_of_edge(c.e[0]);
    int co = d.component_of_edge(c.over_in());
    bool flip = o.reversed(cu) != o.reversed(co);
    bool positive = (c.sign() > 0) != flip;
    if (!positive) state |= (1u << k);
  }
  return state;
}

/// Labels of the oriented-resolution circles: 0 = a, 1 = b.
struct OrientedResolution {
  uint32_t state = 0;
  StateCircles sc;
  std::vector<int> label;  // per circle
};

inline OrientedResolution oriented_resolution_labels(const Diagram& d,
                                                     const Orientation& o) {
  OrientedResolution out;
  out.state = oriented_state(d, o);
  out.sc = resolve(d, out.state);
  FaceStructure fs = face_structure(d);
  RegionData rd = regions(fs, out.state);
  CircleGeometry geom = circle_geometry(fs, rd, out.sc);

  out.label.resize(out.sc.count());
  for (int i = 0; i < out.sc.count(); ++i) {
    // the stored traversal runs along the o-orientation or against it,
    // coherently on an oriented-resolution circle
    int along = -1;
    for (const auto& [e, fwd] : out.sc.circles[i]) {
      int comp = d.component_of_edge(e);
      int a = (fwd != o.reversed(comp)) ? 1 : 0;
      if (along < 0)
        along = a;
      else if (along != a)
        throw std::runtime_error("oriented resolution: incoherent circle");
    }
    bool ccw_o = along ? geom.ccw[i] : !geom.ccw[i];
    out.label[i] = ((geom.depth[i] + (ccw_o ? 0 : 1)) % 2 == 0) ? kLabelOne /*a*/
                                                                : kLabelX /*b*/;
  }

  // every resolved site joins circles of opposite labels (the cycle condition)
  for (size_t k = 0; k < d.crossings.size(); ++k) {
    const Crossing& c = d.crossings[k];
    int c1 = out.sc.circle_of_edge.at(c.e[0]);
    int c2 = out.sc.circle_of_edge.at(c.e[2]);
    if (c1 == c2) throw std::runtime_error("oriented resolution: split site");
    if (out.label[c1] == out.label[c2])
      throw std::runtime_error("oriented resolution: site labels agree");
  }
  return out;
}

struct CanonicalClass {
  Orientation o;
  uint32_t state = 0;
  int h = 0;
  std::vector<int> label;  // 0 = a, 1 = b per circle
  F2Vector chain;          // over the cube generators at degree h
};

/// The canonical cycle of an orientation: label circles a/b, expand
/// a = X + 1 over the {1, X} generator basis (b-circles contribute X only).
inline CanonicalClass canonical_generator(const GradedComplex& cx, const Orientation& o) {
  const Diagram& d = cx.resolutions->diagram;
  OrientedResolution ores = oriented_resolution_labels(d, o);

  CanonicalClass cls;
  cls.o = o;
  cls.state = ores.state;
  cls.label = ores.label;
  cls.h = __builtin_popcount(ores.state) - d.n_minus();
  int slot = cx.slot_of(cls.h);
  cls.chain = F2Vector(cx.size_at(cls.h));

  int circles = ores.sc.count();
  uint32_t b_mask = 0;
  std::vector<int> a_circles;
  for (int i = 0; i < circles; ++i) {
    if (ores.label[i] == kLabelX)
      b_mask |= (1u << i);
    else
      a_circles.push_back(i);
  }
  for (uint32_t sub = 0; sub < (1u << a_circles.size()); ++sub) {
    uint32_t labels = b_mask;
    for (size_t j = 0; j < a_circles.size(); ++j)
      if ((sub >> j) & 1u) labels |= (1u << a_circles[j]);
    int idx = cx.index_of(slot, ores.state, labels);
    if (idx < 0) throw std::runtime_error("canonical_generator: missing generator");
    cls.chain.set(idx, true);
  }
  return cls;
}

inline std::vector<CanonicalClass> canonical_basis(const GradedComplex& cx) {
  int m = cx.resolutions->diagram.num_components();
  std::vector<CanonicalClass> out;
  for (uint32_t bits = 0; bits < (1u << m); ++bits)
    out.push_back(canonical_generator(cx, Orientation{bits}));
  return out;
}

/// Check that a chain is a cycle of the localized complex.
inline bool localized_cycle(const LocalizedComplex& lc, int h, const F2Vector& v) {
  if (!lc.bn->has_slot(h)) return v.is_zero();
  int i = lc.bn->slot_of(h);
  if (i + 1 >= lc.slots()) return true;
  return lc.diff[i].apply(v).is_zero();
}

/// Express a localized cycle at degree h in the canonical basis modulo
/// boundaries; returns the orientation set, or nullopt when the class is not
/// in the canonical span.
inline std::optional<std::set<uint32_t>> express_in_canonical(
    const LocalizedComplex& lc, const std::vector<CanonicalClass>& basis, int h,
    const F2Vector& v) {
  int n = lc.bn->size_at(h);
  std::vector<const CanonicalClass*> same_h;
  for (const auto& c : basis)
    if (c.h == h) same_h.push_back(&c);
  int i = lc.bn->slot_of(h);
  const F2Matrix* into = (h > lc.bn->h_min && i > 0) ? &lc.diff[i - 1] : nullptr;
  int b_cols = into ? into->cols() : 0;

  // solve [S | B] x = v
  F2Matrix sys(n, static_cast<int>(same_h.size()) + b_cols);
  for (size_t a = 0; a < same_h.size(); ++a)
    for (int r = 0; r < n; ++r) sys.set(r, static_cast<int>(a), same_h[a]->chain.get(r));
  for (int c = 0; c < b_cols; ++c)
    for (int r = 0; r < n; ++r) sys.set(r, static_cast<int>(same_h.size()) + c, into->get(r, c));
  auto sol = sys.solve(v);
  if (!sol) return std::nullopt;
  std::set<uint32_t> out;
  for (size_t a = 0; a < same_h.size(); ++a)
    if (sol->get(static_cast<int>(a))) out.insert(same_h[a]->o.bits);
  return out;
}

// ---------------------------------------------------------------------------
// Canonical image of a movie: chain route and combinatorial route.

/// Chain route: push the canonical class through the movie transport at
/// H = 1 and express the image in the end frame's canonical basis.
inline std::set<uint32_t> canonical_image_chain(const MovieMapResult& res,
                                                const Orientation& o) {
  const GradedComplex& start_full = *res.start_reduction.to_reduced.src;
  const GradedComplex& end_full = *res.end_reduction.from_reduced.tgt;
  CanonicalClass cls = canonical_generator(start_full, o);

  auto apply_f2 = [](const ChainMap& f, int h, const F2Vector& v) {
    return eval_at_one(f.block(h)).apply(v);
  };
  F2Vector red = apply_f2(res.start_reduction.to_reduced, cls.h, cls.chain);
  F2Vector red_end = apply_f2(res.map, cls.h, red);
  F2Vector full_end = apply_f2(res.end_reduction.from_reduced, cls.h, red_end);

  auto lc_end = localize(res.end_reduction.from_reduced.tgt);
  if (!localized_cycle(lc_end, cls.h, full_end))
    throw std::runtime_error("canonical image: image is not a cycle");
  auto basis = canonical_basis(end_full);
  auto expressed = express_in_canonical(lc_end, basis, cls.h, full_end);
  if (!expressed)
    throw std::runtime_error("canonical image: image not in the canonical span");
  return *expressed;
}

namespace detail {

// orientation bits transported to the after frame through shared edges; the
// pinch circlet inherits its parent's bit
inline uint32_t transport_bits(const Diagram& before, const Diagram& after,
                               uint32_t bits, int circlet_edge, int circlet_parent) {
  uint32_t out = 0;
  for (int j = 0; j < after.num_components(); ++j) {
    int bit = -1;
    for (int e : after.components[j]) {
      if (e == circlet_edge) {
        bit = (bits >> circlet_parent) & 1u;
        break;
      }
      bool found = false;
      for (int k = 0; k < before.num_components() && !found; ++k)
        for (int oe : before.components[k])
          if (oe == e) {
            bit = (bits >> k) & 1u;
            found = true;
            break;
          }
      if (found) break;
    }
    if (bit < 0) throw std::runtime_error("transport_bits: unmatched component");
    if (bit) out |= (1u << j);
  }
  return out;
}

inline void toggle(std::set<uint32_t>& s, uint32_t v) {
  auto it = s.find(v);
  if (it == s.end())
    s.insert(v);
  else
    s.erase(it);  // F2 cancellation
}

}  // namespace detail

/// Combinatorial route: compose the compatible-orientation relations of the
/// elementary moves.  Multiplicities are taken mod 2, matching the F2 sum on
/// the chain side.
inline std::set<uint32_t> compatible_orientations(const Movie& movie,
                                                  const Orientation& o) {
  Diagram cur = movie.start;
  std::set<uint32_t> current = {o.bits};

  for (const auto& m : movie.moves) {
    Diagram next = apply_move(cur, m);
    std::set<uint32_t> out;
    for (uint32_t bits : current) {
      switch (m.kind) {
        case Move::Kind::Birth: {
          int loop_edge = cur.max_edge() + 1;
          int j0 = next.component_of_edge(loop_edge);
          uint32_t low = bits & ((1u << j0) - 1);
          uint32_t high = bits >> j0;
          for (uint32_t nb : {0u, 1u})
            detail::toggle(out, low | (nb << j0) | (high << (j0 + 1)));
          break;
        }
        case Move::Kind::Death: {
          int edge = detail::resolve_location(cur, m.a, m.a_is_component);
          int k = cur.component_of_edge(edge);
          uint32_t low = bits & ((1u << k) - 1);
          uint32_t high = bits >> (k + 1);
          detail::toggle(out, low | (high << k));
          break;
        }
        case Move::Kind::Dot: {
          int edge = detail::resolve_location(cur, m.a, m.a_is_component);
          auto ores = oriented_resolution_labels(cur, Orientation{bits});
          int circle = ores.sc.circle_of_edge.at(edge);
          if (ores.label[circle] == kLabelX) detail::toggle(out, bits);
          break;
        }
        case Move::Kind::Saddle: {
          int ea = detail::resolve_location(cur, m.a, m.a_is_component);
          int eb = detail::resolve_location(cur, m.b, m.b_is_component);
          auto ores = oriented_resolution_labels(cur, Orientation{bits});
          int c1 = ores.sc.circle_of_edge.at(ea);
          int c2 = ores.sc.circle_of_edge.at(eb);
          int circlet_edge = -1, circlet_parent = -1;
          if (c1 == c2) {
            circlet_edge = cur.max_edge() + 1;  // pinch creates a loop
            circlet_parent = cur.component_of_edge(ea);
          } else if (ores.label[c1] != ores.label[c2]) {
            break;  // orientation-incompatible: the merge vanishes
          }
          detail::toggle(out,
                         detail::transport_bits(cur, next, bits, circlet_edge,
                                                circlet_parent));
          break;
        }
        default: {
          // Reidemeister moves: components correspond through shared edges
          detail::toggle(out, detail::transport_bits(cur, next, bits, -1, -1));
          break;
        }
      }
    }
    current = std::move(out);
    cur = next;
  }
  return current;
}

// ---------------------------------------------------------------------------
// Coloring decomposition at the link level (X = B^4).

struct ColoringRow {
  uint32_t coloring = 0;  // bit per component: 1 = colored 1
  std::vector<int> sublink_one, sublink_zero;
  int lk_one = 0, lk_zero = 0;
  // predicted contribution per factor: bidegree (-lk, lk)
};

inline std::vector<ColoringRow> coloring_decomposition(const Diagram& d) {
  int m = d.num_components();
  std::vector<ColoringRow> rows;
  for (uint32_t c = 0; c < (1u << m); ++c) {
    ColoringRow row;
    row.coloring = c;
    for (int k = 0; k < m; ++k) {
      if ((c >> k) & 1u)
        row.sublink_one.push_back(k);
      else
        row.sublink_zero.push_back(k);
    }
    row.lk_one = sublink_linking(d, row.sublink_one);
    row.lk_zero = sublink_linking(d, row.sublink_zero);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace bnh
