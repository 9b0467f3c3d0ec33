#pragma once

#include <functional>
#include <map>
#include <set>
#include <vector>

#include "bnh/diagram.hpp"

// Planar structure recovered from the PD rotation system: faces of the
// diagram, regions of a resolved diagram (faces merged through smoothing
// channels), and per-circle geometry (left/right regions, nesting depth,
// handedness).  Faces are traced with the region on the LEFT of each
// directed boundary edge.
//
// PD data lives on the sphere; the outer face of each connected piece is
// chosen deterministically (largest boundary, ties to the smallest edge) and
// split pieces are treated as drawn side by side.  Crossingless loops get a
// synthetic inner face each, counterclockwise by default.

namespace bnh {

struct DirectedEdge {
  int edge;
  bool forward;  // along the edge's own orientation

  friend bool operator<(const DirectedEdge& a, const DirectedEdge& b) {
    if (a.edge != b.edge) return a.edge < b.edge;
    return a.forward < b.forward;
  }
  friend bool operator==(const DirectedEdge& a, const DirectedEdge& b) {
    return a.edge == b.edge && a.forward == b.forward;
  }
};

struct FaceStructure {
  const Diagram* diagram = nullptr;
  std::map<DirectedEdge, int> face_of;          // face on the left
  std::vector<std::vector<DirectedEdge>> faces; // boundary cycles
  int outer_node = -1;  // synthetic region node standing for the plane's outside
  std::vector<int> outer_face_of_piece;         // face ids merged into the outside
  std::map<int, detail::Occurrence> head, tail;  // edge end occurrences
  int num_faces() const { return static_cast<int>(faces.size()); }
};

namespace detail {

// occurrence lookup: (crossing, slot) of head/tail of each edge
struct EdgeEnds {
  // head = slot where the edge is incoming; tail = where it leaves
  std::map<int, Occurrence> head, tail;
};

inline bool slot_is_in(const Crossing& c, int s) {
  if (s == 0) return true;
  if (s == 2) return false;
  if (s == 1) return !c.over_in_at_d;
  return c.over_in_at_d;
}

inline EdgeEnds edge_ends(const Diagram& d) {
  EdgeEnds ends;
  for (size_t k = 0; k < d.crossings.size(); ++k) {
    for (int s = 0; s < 4; ++s) {
      int e = d.crossings[k].e[s];
      if (slot_is_in(d.crossings[k], s))
        ends.head[e] = {static_cast<int>(k), s};
      else
        ends.tail[e] = {static_cast<int>(k), s};
    }
  }
  return ends;
}

}  // namespace detail

inline FaceStructure face_structure(const Diagram& d) {
  FaceStructure fs;
  fs.diagram = &d;
  auto ends = detail::edge_ends(d);
  fs.head = ends.head;
  fs.tail = ends.tail;

  // next directed edge in the face: arrive at slot s, leave via slot s-1
  auto successor = [&](const DirectedEdge& de) {
    const auto& arrive = de.forward ? ends.head.at(de.edge) : ends.tail.at(de.edge);
    int s2 = (arrive.slot + 3) % 4;
    int e2 = d.crossings[arrive.crossing].e[s2];
    // leaving away from this crossing: forward iff this occurrence is e2's tail
    bool fwd = ends.tail.count(e2) && ends.tail.at(e2).crossing == arrive.crossing &&
               ends.tail.at(e2).slot == s2;
    return DirectedEdge{e2, fwd};
  };

  std::set<DirectedEdge> seen;
  for (const auto& c : d.crossings) {
    for (int s = 0; s < 4; ++s) {
      for (bool fwd : {false, true}) {
        DirectedEdge start{c.e[s], fwd};
        if (seen.count(start)) continue;
        // only trace edges that actually have crossing ends
        if (!ends.head.count(start.edge)) continue;
        int id = fs.num_faces();
        std::vector<DirectedEdge> cycle;
        DirectedEdge cur = start;
        do {
          cycle.push_back(cur);
          seen.insert(cur);
          fs.face_of[cur] = id;
          cur = successor(cur);
        } while (!(cur == start));
        fs.faces.push_back(std::move(cycle));
      }
    }
  }

  // loops: inner face per loop; outer side handled via the outer node
  for (int k = 0; k < d.num_components(); ++k) {
    if (!d.is_loop_component(k)) continue;
    int e = d.components[k][0];
    // inner face is on the left of the counterclockwise traversal
    DirectedEdge inner_side{e, !d.loop_cw[k]};
    DirectedEdge outer_side{e, d.loop_cw[k]};
    fs.face_of[inner_side] = fs.num_faces();
    fs.faces.push_back({inner_side});
    fs.face_of[outer_side] = fs.num_faces();
    fs.faces.push_back({outer_side});
    fs.outer_face_of_piece.push_back(fs.face_of[outer_side]);
  }

  // outer face per crossing-piece: largest boundary, smallest edge tie-break
  std::map<int, int> piece_of_crossing;  // union-find over crossings via edges
  {
    std::map<int, std::vector<int>> crossings_of_edge;
    for (size_t k = 0; k < d.crossings.size(); ++k)
      for (int s = 0; s < 4; ++s)
        crossings_of_edge[d.crossings[k].e[s]].push_back(static_cast<int>(k));
    std::vector<int> parent(d.crossings.size());
    for (size_t k = 0; k < parent.size(); ++k) parent[k] = static_cast<int>(k);
    std::function<int(int)> find = [&](int x) {
      return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (const auto& [e, ks] : crossings_of_edge)
      for (size_t i = 1; i < ks.size(); ++i) parent[find(ks[0])] = find(ks[i]);
    for (size_t k = 0; k < parent.size(); ++k) piece_of_crossing[static_cast<int>(k)] = find(static_cast<int>(k));
  }
  std::set<int> piece_roots;
  for (const auto& [k, r] : piece_of_crossing) piece_roots.insert(r);
  // the outer hint overrides the heuristic for its piece
  int hint_face = -1, hint_root = -1;
  if (d.outer_hint) {
    DirectedEdge de{d.outer_hint->first, d.outer_hint->second};
    auto it = fs.face_of.find(de);
    if (it != fs.face_of.end() && ends.head.count(de.edge)) {
      hint_face = it->second;
      hint_root = piece_of_crossing.at(ends.head.at(de.edge).crossing);
    }
  }
  for (int root : piece_roots) {
    if (root == hint_root) {
      fs.outer_face_of_piece.push_back(hint_face);
      continue;
    }
    int best = -1;
    size_t best_size = 0;
    int best_min_edge = 0;
    for (int f = 0; f < fs.num_faces(); ++f) {
      if (fs.faces[f].empty()) continue;
      // face belongs to this piece if its first edge's head crossing does
      int e0 = fs.faces[f][0].edge;
      if (!ends.head.count(e0)) continue;
      if (piece_of_crossing.at(ends.head.at(e0).crossing) != root) continue;
      int min_edge = e0;
      for (const auto& de : fs.faces[f]) min_edge = std::min(min_edge, de.edge);
      if (fs.faces[f].size() > best_size ||
          (fs.faces[f].size() == best_size && min_edge < best_min_edge)) {
        best = f;
        best_size = fs.faces[f].size();
        best_min_edge = min_edge;
      }
    }
    if (best >= 0) fs.outer_face_of_piece.push_back(best);
  }
  fs.outer_node = fs.num_faces();  // virtual node; regions() merges the outers into it
  return fs;
}

/// Euler check V - E + F = 2 for every connected piece with crossings.
inline bool planar_euler_ok(const Diagram& d) {
  FaceStructure fs = face_structure(d);
  // count per piece: crossings, edges, faces
  auto ends = detail::edge_ends(d);
  std::map<int, int> piece_of;  // crossing -> root (recomputed as above)
  {
    std::map<int, std::vector<int>> coe;
    for (size_t k = 0; k < d.crossings.size(); ++k)
      for (int s = 0; s < 4; ++s) coe[d.crossings[k].e[s]].push_back(static_cast<int>(k));
    std::vector<int> parent(d.crossings.size());
    for (size_t k = 0; k < parent.size(); ++k) parent[k] = static_cast<int>(k);
    std::function<int(int)> find = [&](int x) {
      return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (const auto& [e, ks] : coe)
      for (size_t i = 1; i < ks.size(); ++i) parent[find(ks[0])] = find(ks[i]);
    for (size_t k = 0; k < d.crossings.size(); ++k)
      piece_of[static_cast<int>(k)] = find(static_cast<int>(k));
  }
  std::map<int, std::array<int, 3>> counts;  // root -> (V, E, F)
  for (const auto& [k, r] : piece_of) counts[r][0] += 1;
  for (const auto& [e, occ] : ends.head) {
    counts[piece_of.at(occ.crossing)][1] += 1;
  }
  for (int f = 0; f < fs.num_faces(); ++f) {
    if (fs.faces[f].empty()) continue;
    int e0 = fs.faces[f][0].edge;
    if (!ends.head.count(e0)) continue;  // loop pseudo-faces
    counts[piece_of.at(ends.head.at(e0).crossing)][2] += 1;
  }
  for (const auto& [root, vef] : counts) {
    if (vef[0] - vef[1] + vef[2] != 2) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Regions of a resolved diagram.

struct RegionData {
  std::vector<int> region_of_face;  // face id (or outer_node) -> region id
  int outer_region = -1;
  int num_regions = 0;

  int region(int face) const { return region_of_face[face]; }
};

/// Face of the corner between slots s and s+1 at crossing k: the face on the
/// left of the directed edge arriving at slot s+1.
inline int corner_face(const FaceStructure& fs, const Diagram& d, int k, int s) {
  int slot_in = (s + 1) % 4;
  int e = d.crossings[k].e[slot_in];
  bool arriving_forward = fs.head.count(e) && fs.head.at(e).crossing == k &&
                          fs.head.at(e).slot == slot_in;
  return fs.face_of.at(DirectedEdge{e, arriving_forward});
}

inline RegionData regions(const FaceStructure& fs, uint32_t state) {
  const Diagram& d = *fs.diagram;
  int n = fs.num_faces() + 1;  // + outer node
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  auto unite = [&](int a, int b) { parent[find(a)] = find(b); };

  for (size_t k = 0; k < d.crossings.size(); ++k) {
    bool one = (state >> k) & 1u;
    // 0-smoothing joins arcs a~b, c~d: the channel merges corners (1,2), (3,0)
    // 1-smoothing joins a~d, b~c: the channel merges corners (0,1), (2,3)
    int kk = static_cast<int>(k);
    if (!one)
      unite(corner_face(fs, d, kk, 1), corner_face(fs, d, kk, 3));
    else
      unite(corner_face(fs, d, kk, 0), corner_face(fs, d, kk, 2));
  }
  for (int f : fs.outer_face_of_piece) unite(f, fs.outer_node);

  RegionData rd;
  rd.region_of_face.assign(n, -1);
  std::map<int, int> remap;
  for (int i = 0; i < n; ++i) {
    int r = find(i);
    auto it = remap.find(r);
    if (it == remap.end()) it = remap.emplace(r, static_cast<int>(remap.size())).first;
    rd.region_of_face[i] = it->second;
  }
  rd.outer_region = rd.region_of_face[fs.outer_node];
  rd.num_regions = static_cast<int>(remap.size());
  return rd;
}

// ---------------------------------------------------------------------------
// Circle geometry in a resolution.

struct CircleGeometry {
  std::vector<int> left_region, right_region;  // per circle, w.r.t. stored traversal
  std::vector<int> depth;                      // number of enclosing circles
  std::vector<bool> ccw;                       // stored traversal is counterclockwise
};

inline CircleGeometry circle_geometry(const FaceStructure& fs, const RegionData& rd,
                                      const StateCircles& sc) {
  CircleGeometry g;
  int n = sc.count();
  g.left_region.assign(n, -1);
  g.right_region.assign(n, -1);
  g.depth.assign(n, 0);
  g.ccw.assign(n, false);

  for (int i = 0; i < n; ++i) {
    for (const auto& [e, fwd] : sc.circles[i]) {
      int lf = rd.region(fs.face_of.at(DirectedEdge{e, fwd}));
      int rf = rd.region(fs.face_of.at(DirectedEdge{e, !fwd}));
      if (g.left_region[i] < 0) {
        g.left_region[i] = lf;
        g.right_region[i] = rf;
      } else if (g.left_region[i] != lf || g.right_region[i] != rf) {
        throw std::runtime_error("circle_geometry: sides of a circle disagree");
      }
    }
  }

  // region tree: breadth-first from the outer region across circles
  std::vector<int> region_depth(rd.num_regions, -1);
  region_depth[rd.outer_region] = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < n; ++i) {
      int l = g.left_region[i], r = g.right_region[i];
      if (region_depth[l] >= 0 && region_depth[r] < 0) {
        region_depth[r] = region_depth[l] + 1;
        changed = true;
      } else if (region_depth[r] >= 0 && region_depth[l] < 0) {
        region_depth[l] = region_depth[r] + 1;
        changed = true;
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    int l = region_depth[g.left_region[i]], r = region_depth[g.right_region[i]];
    if (l < 0 || r < 0) throw std::runtime_error("circle_geometry: disconnected region tree");
    g.depth[i] = std::min(l, r);
    g.ccw[i] = (l > r);  // inside (deeper side) on the left = counterclockwise
  }
  return g;
}

}  // namespace bnh
