#pragma once

#include <map>

#include "bnh/diagram.hpp"
#include "bnh/moves.hpp"

// Framed cables.  The declared framing is realized by inserting kinks until
// the blackboard framing (writhe) matches, and the diagram is then replaced
// by w = a + b parallel copies: a with the original orientation, b reversed.
// Every crossing becomes a w x w grid of crossings; copies are numbered from
// the left of the companion's direction.

namespace bnh {

namespace detail {

struct CableLabels {
  // copy labels of companion edges
  std::map<std::pair<int, int>, int> edge_copy;  // (edge, copy 1..w) -> label
  // internal grid segments per crossing: (crossing, band 0=under/1=over,
  // track, step 1..w-1) -> label
  std::map<std::tuple<int, int, int, int>, int> seg;
};

}  // namespace detail

/// The (a, b)-cable of a framed one-component diagram.
inline Diagram cable(const Diagram& knot, int parallel, int reversed) {
  if (knot.num_components() != 1)
    throw DiagramError(DiagramErrorKind::InvalidLocation,
                       "cable expects a one-component diagram");
  int w = parallel + reversed;
  if (w == 0) return Diagram{};

  // realize the declared framing by kinks
  Diagram d = knot;
  int twist = d.framing[0] - d.writhe();
  for (int i = 0; i < std::abs(twist); ++i) {
    int e = d.components[0][0];
    d = insert_kink(d, e, twist > 0).after;
  }

  detail::CableLabels lab;
  int next = 1;
  for (int e : d.edges())
    for (int c = 1; c <= w; ++c) lab.edge_copy[{e, c}] = next++;
  int n = static_cast<int>(d.crossings.size());
  for (int k = 0; k < n; ++k)
    for (int band = 0; band < 2; ++band)
      for (int track = 1; track <= w; ++track)
        for (int step = 1; step < w; ++step)
          lab.seg[{k, band, track, step}] = next++;

  auto is_reversed_copy = [&](int c) { return c > parallel; };

  // under band of crossing k, track i: segment after `step` cells from the
  // south (step 0 = entering copy of the a-edge, step w = the c-edge copy)
  auto useg = [&](int k, int i, int step) {
    if (step == 0) return lab.edge_copy.at({d.crossings[k].e[0], i});
    if (step == w) return lab.edge_copy.at({d.crossings[k].e[2], i});
    return lab.seg.at({k, 0, i, step});
  };
  // over band, track j (1 = leftmost of the over strand's direction),
  // segment after `step` cells along the flow
  auto oseg = [&](int k, int j, int step) {
    const Crossing& c = d.crossings[k];
    if (step == 0) return lab.edge_copy.at({c.over_in(), j});
    if (step == w) return lab.edge_copy.at({c.over_out(), j});
    return lab.seg.at({k, 1, j, step});
  };

  Diagram out;
  for (int k = 0; k < n; ++k) {
    const Crossing& c = d.crossings[k];
    bool east_flow = c.over_in_at_d;  // over strand runs west -> east
    for (int i = 1; i <= w; ++i) {    // under track (x position)
      for (int j = 1; j <= w; ++j) {  // over copy
        // y level of over copy j, counted from the south
        int y = east_flow ? (w + 1 - j) : j;
        // under segments at this cell
        int south = useg(k, i, y - 1);
        int north = useg(k, i, y);
        // over passage index: cells crossed before this one
        int pass = east_flow ? (i - 1) : (w - i);
        int in_side = oseg(k, j, pass);
        int out_side = oseg(k, j, pass + 1);
        int west = east_flow ? in_side : out_side;
        int east = east_flow ? out_side : in_side;

        bool under_rev = is_reversed_copy(i);
        bool over_rev = is_reversed_copy(j);
        // over strand's actual inflow side
        bool over_in_west = (east_flow != over_rev);

        Crossing sc;
        if (!under_rev) {
          // under-in at the south: CCW (S, E, N, W)
          sc.e = {south, east, north, west};
          sc.over_in_at_d = over_in_west;  // d slot is W
        } else {
          // under-in at the north: CCW (N, W, S, E)
          sc.e = {north, west, south, east};
          sc.over_in_at_d = !over_in_west;  // d slot is E
        }
        out.crossings.push_back(sc);
      }
    }
  }

  // components: trace plus loop copies of crossingless companions
  out.components = detail::trace_components(out.crossings);
  std::set<int> traced;
  for (const auto& comp : out.components)
    for (int e : comp) traced.insert(e);
  for (int e : d.edges()) {
    for (int c = 1; c <= w; ++c) {
      int l = lab.edge_copy.at({e, c});
      if (!traced.count(l)) out.components.push_back({l});
    }
  }
  out.framing.assign(out.components.size(), 0);
  out.loop_cw.assign(out.components.size(), false);
  for (size_t kk = 0; kk < out.components.size(); ++kk) {
    if (out.components[kk].size() == 1 && !traced.count(out.components[kk][0])) {
      // loop copy: reversed copies run clockwise
      for (const auto& [key, l] : lab.edge_copy)
        if (l == out.components[kk][0])
          out.loop_cw[kk] = is_reversed_copy(key.second) != knot.loop_cw[0];
    }
  }
  detail::sort_components(out);
  validate(out);
  return out;
}

}  // namespace bnh
