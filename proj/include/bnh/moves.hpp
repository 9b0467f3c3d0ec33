#pragma once

#include <optional>

#include "bnh/diagram.hpp"
#include "bnh/planar.hpp"

// Diagram surgeries for the elementary movie moves.  Edge labels are stable:
// surgeries subdivide or fuse arcs but never rename an edge that survives,
// so resolution circles can be matched across a move by any shared edge.

namespace bnh {

struct SurgeryResult {
  Diagram after;
  int new_crossing = -1;       // kink / first r2 crossing
  int new_crossing2 = -1;      // second r2 crossing
  int loop_edge = -1;          // kink loop arc / self-saddle circlet
  int continuation_edge = -1;  // relabeled far half of a subdivided edge
  int over_arc = -1, under_arc = -1;  // bigon arcs of an r2 pair
};

namespace detail {

inline int fresh_edge(const Diagram& d) { return d.max_edge() + 1; }

// Replace edge `e` by `to` at its head occurrence; no-op for loop edges.
inline void relabel_head(Diagram& d, int e, int to) {
  auto ends = edge_ends(d);
  auto it = ends.head.find(e);
  if (it == ends.head.end()) return;
  d.crossings[it->second.crossing].e[it->second.slot] = to;
}

inline void add_loop_component(Diagram& d, int edge, int framing = 0, bool cw = false) {
  d.components.push_back({edge});
  d.framing.push_back(framing);
  d.loop_cw.push_back(cw);
}

inline void sort_components(Diagram& d) {
  std::vector<size_t> order(d.components.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return d.components[a][0] < d.components[b][0];
  });
  std::vector<std::vector<int>> comps;
  std::vector<int> framing;
  std::vector<bool> cw;
  for (size_t i : order) {
    comps.push_back(d.components[i]);
    framing.push_back(d.framing[i]);
    cw.push_back(d.loop_cw[i]);
  }
  d.components = std::move(comps);
  d.framing = std::move(framing);
  d.loop_cw = std::move(cw);
}

// Rebuild components after crossings changed, carrying loop components and
// framings over from the previous diagram where possible.
inline void retrace_components(Diagram& d, const Diagram& before) {
  auto traced = trace_components(d.crossings);
  std::set<int> traced_edges;
  for (const auto& comp : traced)
    for (int e : comp) traced_edges.insert(e);
  for (const auto& comp : before.components) {
    // a crossingless loop survives if its edge is still absent from crossings
    if (comp.size() == 1 && !traced_edges.count(comp[0])) traced.push_back(comp);
  }
  std::vector<int> framing(traced.size(), 0);
  std::vector<bool> cw(traced.size(), false);
  for (size_t k = 0; k < traced.size(); ++k) {
    std::set<int> olds;
    for (int e : traced[k]) {
      for (size_t j = 0; j < before.components.size(); ++j)
        for (int oe : before.components[j])
          if (oe == e) olds.insert(static_cast<int>(j));
    }
    for (int j : olds) framing[k] += before.framing[j];
    if (olds.size() == 1 && traced[k].size() == 1 &&
        before.components[*olds.begin()].size() == 1)
      cw[k] = before.loop_cw[*olds.begin()];
  }
  d.components = std::move(traced);
  d.framing = std::move(framing);
  d.loop_cw = std::move(cw);
  sort_components(d);
  if (d.basepoint) {
    bool found = false;
    for (const auto& comp : d.components)
      for (int e : comp) found |= (e == *d.basepoint);
    if (!found) d.basepoint.reset();
  }
}

}  // namespace detail


// Propagate the planar anchor: keep the outer face attached to a directed
// edge that survives the surgery untouched.
inline void transport_outer_hint(const Diagram& before, Diagram& after,
                                 const std::set<int>& avoid) {
  after.outer_hint.reset();
  FaceStructure fs = face_structure(before);
  std::set<int> after_crossing_edges;
  for (const auto& c : after.crossings)
    after_crossing_edges.insert(c.e.begin(), c.e.end());
  std::vector<DirectedEdge> candidates;
  for (int f : fs.outer_face_of_piece)
    for (const auto& de : fs.faces[f]) candidates.push_back(de);
  std::sort(candidates.begin(), candidates.end());
  for (const auto& de : candidates) {
    if (!after_crossing_edges.count(de.edge) || avoid.count(de.edge)) continue;
    after.outer_hint = {de.edge, de.forward};
    return;
  }
  // every outer-side edge touches the surgery locus: anchor to a surviving
  // one anyway (the region left of it stays unbounded on its far stretch)
  for (const auto& de : candidates) {
    if (!after_crossing_edges.count(de.edge)) continue;
    after.outer_hint = {de.edge, de.forward};
    return;
  }
}

/// Birth of a crossingless counterclockwise circle.
inline SurgeryResult birth(const Diagram& d) {
  SurgeryResult r;
  r.after = d;
  r.loop_edge = detail::fresh_edge(d);
  detail::add_loop_component(r.after, r.loop_edge);
  validate(r.after);
  return r;
}

/// Death of the crossingless circle containing `edge`.
inline SurgeryResult death(const Diagram& d, int edge) {
  int k = d.component_of_edge(edge);
  if (!d.is_loop_component(k))
    throw DiagramError(DiagramErrorKind::InvalidLocation,
                       "death requires a crossingless circle");
  SurgeryResult r;
  r.after = d;
  r.after.components.erase(r.after.components.begin() + k);
  r.after.framing.erase(r.after.framing.begin() + k);
  r.after.loop_cw.erase(r.after.loop_cw.begin() + k);
  if (r.after.basepoint && *r.after.basepoint == edge) r.after.basepoint.reset();
  validate(r.after);
  return r;
}

/// Orientation compatibility of the oriented saddle between distinct edges s
/// and t: some common region lies on the same side of both directed arcs.
inline bool saddle_compatible(const Diagram& d, int s, int t) {
  if (s == t) return true;  // pinching one arc always orients
  FaceStructure fs = face_structure(d);
  std::set<int> outers(fs.outer_face_of_piece.begin(), fs.outer_face_of_piece.end());
  auto region = [&](int face) { return outers.count(face) ? -1 : face; };
  int sl = region(fs.face_of.at({s, true}));
  int sr = region(fs.face_of.at({s, false}));
  int tl = region(fs.face_of.at({t, true}));
  int tr = region(fs.face_of.at({t, false}));
  bool some_common = false;
  for (int r : {sl, sr}) {
    if (r != tl && r != tr) continue;
    some_common = true;
    bool s_left = (r == sl), t_left = (r == tl);
    if (s_left == t_left) return true;
  }
  if (!some_common)
    throw DiagramError(DiagramErrorKind::InvalidLocation,
                       "saddle arcs do not cobound a region");
  return false;
}

/// Oriented saddle joining edges s and t (cut both, cross-connect), or the
/// pinch saddle splitting a circlet off a single edge when s == t.
inline SurgeryResult saddle(const Diagram& d, int s, int t) {
  SurgeryResult r;
  r.after = d;
  if (s == t) {
    r.loop_edge = detail::fresh_edge(d);
    detail::add_loop_component(r.after, r.loop_edge);
    detail::sort_components(r.after);
    validate(r.after);
    return r;
  }
  if (!saddle_compatible(d, s, t))
    throw DiagramError(DiagramErrorKind::InvalidLocation,
                       "saddle is not orientation-compatible");
  auto ends = detail::edge_ends(d);
  bool s_loop = !ends.head.count(s), t_loop = !ends.head.count(t);
  if (!s_loop && !t_loop) {
    auto hs = ends.head.at(s), ht = ends.head.at(t);
    r.after.crossings[hs.crossing].e[hs.slot] = t;
    r.after.crossings[ht.crossing].e[ht.slot] = s;
    detail::retrace_components(r.after, d);
  } else if (s_loop != t_loop) {
    // splice the loop into the strand: the strand's head is taken over by
    // the loop arc
    int strand = s_loop ? t : s;
    int loop = s_loop ? s : t;
    auto hs = ends.head.at(strand);
    r.after.crossings[hs.crossing].e[hs.slot] = loop;
    detail::retrace_components(r.after, d);
  } else {
    // two crossingless loops fuse into one
    int keep = std::min(s, t), drop = std::max(s, t);
    std::vector<std::vector<int>> comps;
    std::vector<int> framing;
    std::vector<bool> cw;
    int fsum = 0;
    for (size_t k = 0; k < d.components.size(); ++k) {
      int e = d.components[k][0];
      if (d.components[k].size() == 1 && (e == keep || e == drop)) {
        fsum += d.framing[k];
        continue;
      }
      comps.push_back(d.components[k]);
      framing.push_back(d.framing[k]);
      cw.push_back(d.loop_cw[k]);
    }
    r.after.components = std::move(comps);
    r.after.framing = std::move(framing);
    r.after.loop_cw = std::move(cw);
    detail::add_loop_component(r.after, keep, fsum);
    detail::sort_components(r.after);
    r.continuation_edge = keep;
  }
  transport_outer_hint(d, r.after, {s, t});
  validate(r.after);
  return r;
}

/// Insert an R1 kink on edge e.
inline SurgeryResult insert_kink(const Diagram& d, int e, bool positive) {
  SurgeryResult r;
  r.after = d;
  int loop = detail::fresh_edge(d);
  auto ends = detail::edge_ends(d);
  bool is_loop_edge = !ends.head.count(e);

  Crossing c;
  if (is_loop_edge) {
    c.e = positive ? std::array<int, 4>{e, e, loop, loop}
                   : std::array<int, 4>{e, loop, loop, e};
  } else {
    int cont = loop + 1;
    detail::relabel_head(r.after, e, cont);
    c.e = positive ? std::array<int, 4>{e, cont, loop, loop}
                   : std::array<int, 4>{e, loop, loop, cont};
    r.continuation_edge = cont;
  }
  c.over_in_at_d = positive;
  r.loop_edge = loop;
  r.after.crossings.push_back(c);
  r.new_crossing = static_cast<int>(r.after.crossings.size()) - 1;
  detail::retrace_components(r.after, d);
  transport_outer_hint(d, r.after, {e});
  validate(r.after);
  return r;
}

/// Remove the R1 kink at crossing k.  The strand path is traced through the
/// crossing locally, so loop-under and loop-over kinks are both handled.
inline SurgeryResult remove_kink(const Diagram& d, int k) {
  if (k < 0 || k >= static_cast<int>(d.crossings.size()))
    throw DiagramError(DiagramErrorKind::InvalidLocation, "no such crossing");
  const Crossing& c = d.crossings[k];
  bool has_repeat = false;
  for (int s = 0; s < 4; ++s)
    for (int s2 = s + 1; s2 < 4; ++s2) has_repeat |= (c.e[s] == c.e[s2]);
  if (!has_repeat)
    throw DiagramError(DiagramErrorKind::InvalidLocation, "crossing is not a kink");

  // the kink has two passages, under e[0]->e[2] and over; the middle arc
  // runs from one passage's exit to the other's entry
  bool under_feeds_over = (c.e[2] == c.over_in());
  bool over_feeds_under = (c.over_out() == c.e[0]);

  SurgeryResult r;
  r.after = d;
  r.after.crossings.erase(r.after.crossings.begin() + k);

  if (under_feeds_over && over_feeds_under) {
    // standalone kink: keep the under-in arc (the transport drops the other)
    int keep = c.e[0];
    detail::retrace_components(r.after, d);
    detail::add_loop_component(r.after, keep);
    detail::sort_components(r.after);
    r.loop_edge = keep;
    validate(r.after);
    return r;
  }
  int entry, exit;
  if (under_feeds_over) {
    entry = c.e[0];
    exit = c.over_out();
    r.loop_edge = c.e[2];
  } else if (over_feeds_under) {
    entry = c.over_in();
    exit = c.e[2];
    r.loop_edge = c.e[0];
  } else {
    throw DiagramError(DiagramErrorKind::InvalidLocation, "crossing is not a kink");
  }
  if (exit != entry) {
    detail::relabel_head(r.after, exit, entry);
    r.continuation_edge = entry;
  }
  detail::retrace_components(r.after, d);
  bool present = false;
  for (const auto& comp : r.after.components)
    for (int e2 : comp) present |= (e2 == entry);
  if (!present) {
    detail::add_loop_component(r.after, entry);
    detail::sort_components(r.after);
  }
  transport_outer_hint(d, r.after, {c.e[0], c.e[1], c.e[2], c.e[3]});
  validate(r.after);
  return r;
}

/// R2 push of edge x over edge y; appends one positive and one negative
/// crossing, subdividing x into (x, e1[, e2]) and y into (y, f1[, f2]).
inline SurgeryResult r2_push(const Diagram& d, int x, int y) {
  if (x == y)
    throw DiagramError(DiagramErrorKind::InvalidLocation, "r2 needs two distinct arcs");
  SurgeryResult r;
  r.after = d;
  int e1 = detail::fresh_edge(d), f1 = e1 + 1, e2 = f1 + 1, f2 = e2 + 1;
  auto ends = detail::edge_ends(d);
  bool x_loop = !ends.head.count(x), y_loop = !ends.head.count(y);
  int x_far = x_loop ? x : e2;
  int y_far = y_loop ? y : f2;
  if (!x_loop) detail::relabel_head(r.after, x, e2);
  if (!y_loop) detail::relabel_head(r.after, y, f2);

  Crossing c1;  // positive: over strand enters at d
  c1.e = {y, e1, f1, x};
  c1.over_in_at_d = true;
  Crossing c2;  // negative partner
  c2.e = {f1, e1, y_far, x_far};
  c2.over_in_at_d = false;
  r.after.crossings.push_back(c1);
  r.after.crossings.push_back(c2);
  r.new_crossing = static_cast<int>(r.after.crossings.size()) - 2;
  r.new_crossing2 = r.new_crossing + 1;
  r.over_arc = e1;
  r.under_arc = f1;
  detail::retrace_components(r.after, d);
  transport_outer_hint(d, r.after, {x, y, e1, f1, e2, f2});
  validate(r.after);
  if (!planar_euler_ok(r.after))
    throw DiagramError(DiagramErrorKind::InvalidLocation, "r2 arcs are not adjacent");
  return r;
}


/// Candidate bigon arcs for an R2 pair: shared over/under edges such that
/// some mixed resolution of (k1, k2) isolates exactly {over, under} as a
/// two-edge circle.  Deterministic lexicographic order.
inline std::vector<std::pair<int, int>> r2_bigon_candidates(const Diagram& d, int k1,
                                                            int k2) {
  const Crossing& a = d.crossings[k1];
  const Crossing& b = d.crossings[k2];
  std::set<int> shared_over, shared_under;
  for (int s : {1, 3})
    for (int s2 : {1, 3})
      if (a.e[s] == b.e[s2]) shared_over.insert(a.e[s]);
  for (int s : {0, 2})
    for (int s2 : {0, 2})
      if (a.e[s] == b.e[s2]) shared_under.insert(a.e[s]);
  std::vector<std::pair<int, int>> out;
  for (int o : shared_over) {
    for (int u : shared_under) {
      if (o == u) continue;
      for (uint32_t mid : {uint32_t{1} << k1, uint32_t{1} << k2}) {
        StateCircles sc = resolve(d, mid);
        if (!sc.circle_of_edge.count(o) || !sc.circle_of_edge.count(u)) continue;
        int ci = sc.circle_of_edge.at(o);
        if (sc.circle_of_edge.at(u) != ci) continue;
        std::set<int> edges;
        for (const auto& [e, fwd] : sc.circles[ci]) edges.insert(e);
        if (edges == std::set<int>{o, u}) {
          out.push_back({o, u});
          break;
        }
      }
    }
  }
  return out;
}

/// Remove a canceling R2 pair (crossings k1, k2 cobounding a bigon).
inline SurgeryResult r2_remove(const Diagram& d, int k1, int k2) {
  if (k1 == k2 || k1 < 0 || k2 < 0 || k1 >= static_cast<int>(d.crossings.size()) ||
      k2 >= static_cast<int>(d.crossings.size()))
    throw DiagramError(DiagramErrorKind::InvalidLocation, "bad crossing pair");
  const Crossing& a = d.crossings[k1];
  const Crossing& b = d.crossings[k2];
  if (a.sign() == b.sign())
    throw DiagramError(DiagramErrorKind::InvalidLocation, "pair has equal signs");
  auto candidates = r2_bigon_candidates(d, k1, k2);
  if (candidates.empty())
    throw DiagramError(DiagramErrorKind::InvalidLocation,
                       "crossings do not cobound a bigon");
  int over_arc = candidates.back().first, under_arc = candidates.back().second;

  const Crossing& first_under = (a.e[2] == under_arc) ? a : b;
  const Crossing& second_under = (a.e[2] == under_arc) ? b : a;
  if (first_under.e[2] != under_arc || second_under.e[0] != under_arc)
    throw DiagramError(DiagramErrorKind::InvalidLocation,
                       "crossings do not cobound a bigon");
  int under_near = first_under.e[0];
  int under_far = second_under.e[2];
  const Crossing& first_over = (a.over_out() == over_arc) ? a : b;
  const Crossing& second_over = (a.over_out() == over_arc) ? b : a;
  if (first_over.over_out() != over_arc || second_over.over_in() != over_arc)
    throw DiagramError(DiagramErrorKind::InvalidLocation,
                       "crossings do not cobound a bigon");
  int over_near = first_over.over_in();
  int over_far = second_over.over_out();

  SurgeryResult r;
  r.after = d;
  std::vector<Crossing> kept;
  for (int k = 0; k < static_cast<int>(d.crossings.size()); ++k)
    if (k != k1 && k != k2) kept.push_back(r.after.crossings[k]);
  r.after.crossings = std::move(kept);

  auto fuse = [&](int near, int far) {
    if (near != far) detail::relabel_head(r.after, far, near);
    return near;
  };
  int fused_under = fuse(under_near, under_far);
  int fused_over = fuse(over_near, over_far);
  r.over_arc = over_arc;
  r.under_arc = under_arc;
  detail::retrace_components(r.after, d);
  for (int e : {fused_under, fused_over}) {
    bool present = false;
    for (const auto& comp : r.after.components)
      for (int e2 : comp) present |= (e2 == e);
    if (!present) detail::add_loop_component(r.after, e);
  }
  detail::sort_components(r.after);
  {
    std::set<int> avoid;
    for (int sl = 0; sl < 4; ++sl) {
      avoid.insert(a.e[sl]);
      avoid.insert(b.e[sl]);
    }
    transport_outer_hint(d, r.after, avoid);
  }
  validate(r.after);
  return r;
}

}  // namespace bnh
