#pragma once

#include <memory>

#include "bnh/complex.hpp"
#include "bnh/moves.hpp"
#include "bnh/simplify.hpp"

// Chain maps for Reidemeister moves, constructed by the delooping transport:
// the cube of the bigger diagram is reduced along the standard acyclic
// matching at the new crossings, which lands on the nose on the cube of the
// smaller diagram; the elimination's homotopy equivalence then supplies both
// directions of the move map.  Everything is asserted at runtime: survivors,
// gradings, and the transported differential must all match the small cube.

namespace bnh {

struct RMoveTransport {
  std::shared_ptr<const GradedComplex> small_cx, big_cx;
  ChainMap insert_map;  // C(small) -> C(big)
  ChainMap remove_map;  // C(big) -> C(small)
};

namespace detail {

// Bijection between the reduced big complex and the small cube.  Survivor
// states of the big cube carry fixed bits at `new_bits` and one dropped
// circle (the kink or bigon circle); everything else matches by shared edges.
struct SurvivorSpec {
  std::vector<int> new_bits;      // crossing indices added in the big diagram
  uint32_t survivor_pattern = 0;  // required values of those bits
  int marker_edge = -1;           // edge on the dropped circle (-1: none)
  int survivor_label = 0;         // required label on the dropped circle
};

inline uint32_t compress_state(uint32_t state, const std::vector<int>& drop_bits) {
  uint32_t out = 0;
  int pos = 0;
  std::vector<bool> dropped(32, false);
  for (int b : drop_bits) dropped[b] = true;
  for (int b = 0; b < 32; ++b) {
    if (dropped[b]) continue;
    if ((state >> b) & 1u) out |= (1u << pos);
    ++pos;
  }
  return out;
}

inline bool is_survivor(const GradedComplex& big, const SurvivorSpec& spec,
                        const Generator& g) {
  for (size_t i = 0; i < spec.new_bits.size(); ++i) {
    if (((g.state >> spec.new_bits[i]) & 1u) !=
        ((spec.survivor_pattern >> i) & 1u))
      return false;
  }
  if (spec.marker_edge >= 0) {
    int circle = big.resolutions->at(g.state).circle_of_edge.at(spec.marker_edge);
    if (static_cast<int>((g.labels >> circle) & 1u) != spec.survivor_label) return false;
  }
  return true;
}

// Permutation chain map small -> reduced(big) and its inverse, with full
// consistency asserts.
inline std::pair<ChainMap, ChainMap> survivor_iso(
    std::shared_ptr<const GradedComplex> small_cx,
    std::shared_ptr<const GradedComplex> red, const GradedComplex& big,
    const SurvivorSpec& spec) {
  if (small_cx->total_generators() != red->total_generators())
    throw std::runtime_error("rmove transport: survivor count mismatch");
  const auto& small_res = *small_cx->resolutions;
  ChainMap iso, iso_inv;
  iso.src = small_cx;
  iso.tgt = red;
  iso_inv.src = red;
  iso_inv.tgt = small_cx;

  // map each reduced generator to its small counterpart
  std::vector<std::vector<int>> to_small(red->slots());
  for (int i = 0; i < red->slots(); ++i) {
    to_small[i].assign(red->gens[i].size(), -1);
    for (size_t a = 0; a < red->gens[i].size(); ++a) {
      const Generator& g = red->gens[i][a];
      if (!is_survivor(big, spec, g))
        throw std::runtime_error("rmove transport: non-survivor remains after reduction");
      uint32_t sstate = compress_state(g.state, spec.new_bits);
      const auto& bsc = big.resolutions->at(g.state);
      const auto& ssc = small_res.at(sstate);
      int drop_circle = spec.marker_edge >= 0
                            ? bsc.circle_of_edge.at(spec.marker_edge)
                            : -1;
      uint32_t slabels = 0;
      std::set<int> used;
      for (int z = 0; z < ssc.count(); ++z) {
        int rep = ssc.circles[z][0].first;  // small edges persist in the big diagram
        int bz = bsc.circle_of_edge.at(rep);
        if (bz == drop_circle || !used.insert(bz).second)
          throw std::runtime_error("rmove transport: circle matching collision");
        if ((g.labels >> bz) & 1u) slabels |= (1u << z);
      }
      int slot = small_cx->slot_of(red->h_min + i);
      int idx = small_cx->index_of(slot, sstate, slabels);
      if (idx < 0) throw std::runtime_error("rmove transport: missing small generator");
      const Generator& sg = small_cx->gens[slot][idx];
      if (sg.h != g.h || sg.q != g.q)
        throw std::runtime_error("rmove transport: grading mismatch");
      to_small[i][a] = idx;
    }
  }

  for (int i = 0; i < red->slots(); ++i) {
    int h = red->h_min + i;
    int n = static_cast<int>(red->gens[i].size());
    PolyMatrix fwd(n, n), back(n, n);
    for (int a = 0; a < n; ++a) {
      fwd.set(a, to_small[i][a], Poly::one());
      back.set(to_small[i][a], a, Poly::one());
    }
    if (n) {
      iso.blocks[h] = fwd;
      iso_inv.blocks[h] = back;
    }
  }

  // transported differential must equal the small cube's differential
  for (int h = red->h_min; h < red->h_max(); ++h) {
    PolyMatrix lhs = iso_inv.block(h + 1) * red->d_out(h);
    PolyMatrix rhs = small_cx->d_out(h) * iso_inv.block(h);
    if (lhs != rhs)
      throw std::runtime_error("rmove transport: differential mismatch after reduction");
  }
  return {iso, iso_inv};
}

inline RMoveTransport make_transport(std::shared_ptr<const GradedComplex> small_cx,
                                     std::shared_ptr<const GradedComplex> big_cx,
                                     const SurvivorSpec& spec, const PivotFilter& filter) {
  Reduction red = reduce_with_matching(*big_cx, filter, true);
  auto [iso, iso_inv] = survivor_iso(small_cx, red.reduced, *big_cx, spec);
  // stitch the reduction maps onto the shared big complex
  red.from_reduced.tgt = big_cx;
  red.to_reduced.src = big_cx;
  RMoveTransport t;
  t.small_cx = small_cx;
  t.big_cx = big_cx;
  t.insert_map = compose(red.from_reduced, iso);
  t.remove_map = compose(iso_inv, red.to_reduced);
  return t;
}

}  // namespace detail

/// Transport for an R1 kink: `big` is `small` with a kink at crossing k.
inline RMoveTransport r1_transport(std::shared_ptr<const GradedComplex> small_cx,
                                   std::shared_ptr<const GradedComplex> big_cx, int k) {
  const Diagram& big = big_cx->resolutions->diagram;
  const Crossing& c = big.crossings[k];
  bool positive = c.sign() > 0;
  // the kink loop arc: exit of one passage feeding the entry of the other
  int loop_arc = (c.e[2] == c.over_in()) ? c.e[2] : c.e[0];

  detail::SurvivorSpec spec;
  spec.new_bits = {k};
  spec.survivor_pattern = positive ? 0u : 1u;
  spec.marker_edge = loop_arc;
  spec.survivor_label = positive ? kLabelX : kLabelOne;

  const GradedComplex& bc = *big_cx;
  PivotFilter filter = [&bc, spec, k](int, const Generator& src, const Generator& tgt) {
    if ((src.state ^ tgt.state) != (1u << k)) return false;
    return !detail::is_survivor(bc, spec, src) && !detail::is_survivor(bc, spec, tgt);
  };
  return detail::make_transport(small_cx, big_cx, spec, filter);
}

/// Transport for an R2 bigon: `big` is `small` with the canceling pair
/// (k1, k2); the bigon arcs are detected from the shared edges.
inline RMoveTransport r2_transport(std::shared_ptr<const GradedComplex> small_cx,
                                   std::shared_ptr<const GradedComplex> big_cx, int k1,
                                   int k2, int over_arc = -1, int under_arc = -1) {
  const Diagram& big = big_cx->resolutions->diagram;
  if (over_arc < 0 || under_arc < 0) {
    auto candidates = r2_bigon_candidates(big, k1, k2);
    if (candidates.empty())
      throw DiagramError(DiagramErrorKind::InvalidLocation, "not an r2 pair");
    over_arc = candidates.back().first;
    under_arc = candidates.back().second;
  }

  // bigon state: the mixed resolution isolating {over_arc, under_arc}
  auto isolates_bigon = [&](uint32_t state) {
    const auto& sc = big_cx->resolutions->at(state);
    int ci = sc.circle_of_edge.at(over_arc);
    if (sc.circle_of_edge.at(under_arc) != ci) return false;
    std::set<int> edges;
    for (const auto& [e, fwd] : sc.circles[ci]) edges.insert(e);
    return edges == std::set<int>{over_arc, under_arc};
  };
  uint32_t mid10 = (1u << k1);
  uint32_t mid01 = (1u << k2);
  uint32_t bigon_mask;
  if (isolates_bigon(mid10))
    bigon_mask = mid10;
  else if (isolates_bigon(mid01))
    bigon_mask = mid01;
  else
    throw std::runtime_error("r2 transport: bigon state not found");
  uint32_t keep_mask = (mid10 | mid01) ^ bigon_mask;

  detail::SurvivorSpec spec;
  spec.new_bits = {k1, k2};
  spec.survivor_pattern = 0;
  for (size_t i = 0; i < spec.new_bits.size(); ++i)
    if (keep_mask & (1u << spec.new_bits[i])) spec.survivor_pattern |= (1u << i);
  spec.marker_edge = -1;  // survivors keep all circles

  const GradedComplex& bc = *big_cx;
  int ka = k1, kb = k2;
  PivotFilter filter = [&bc, spec, ka, kb, bigon_mask, over_arc](
                           int, const Generator& src, const Generator& tgt) {
    uint32_t diff = src.state ^ tgt.state;
    if (diff != (1u << ka) && diff != (1u << kb)) return false;
    if (detail::is_survivor(bc, spec, src) || detail::is_survivor(bc, spec, tgt))
      return false;
    auto bigon_label = [&](const Generator& g) {
      int circle = bc.resolutions->at(g.state).circle_of_edge.at(over_arc);
      return static_cast<int>((g.labels >> circle) & 1u);
    };
    uint32_t pair_bits = (1u << ka) | (1u << kb);
    if ((tgt.state & pair_bits) == bigon_mask && bigon_label(tgt) != kLabelX) return false;
    if ((src.state & pair_bits) == bigon_mask && bigon_label(src) != kLabelOne) return false;
    return true;
  };
  return detail::make_transport(small_cx, big_cx, spec, filter);
}

}  // namespace bnh
