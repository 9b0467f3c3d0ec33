#pragma once

#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "bnh/homology.hpp"
#include "bnh/moves.hpp"
#include "bnh/reduced.hpp"
#include "bnh/simplify.hpp"
#include "bnh/transport.hpp"

// Movie presentations of link cobordisms and their induced chain maps.
//
// Format:
//   start:
//     <pd lines>
//   end:
//     <pd lines>
//   moves:
//     birth | death <loc> | saddle <loc> <loc> | dot <loc>
//     r1+ <loc> | r1- <loc> | r1u x<k> | r2 <loc> <loc> | r2u x<k> x<k>
// where <loc> is s<edge> or c<component index, 1-based>, and x<k> is a
// crossing index (1-based) in the current frame.
//
// Morse moves act frame to frame on the full cubes; Reidemeister moves act
// through the delooping transport of transport.hpp.  movie_map conjugates the
// composite by the simplification equivalences so its source and target are
// the reduced complexes of the first and last frames.

namespace bnh {

struct Move {
  enum class Kind { Birth, Death, Saddle, Dot, R1Plus, R1Minus, R1Undo, R2, R2Undo, R3 };
  Kind kind;
  int a = -1, b = -1;  // edges or crossing indices, resolved per frame
  bool a_is_component = false, b_is_component = false;

  int dots() const { return kind == Kind::Dot ? 1 : 0; }
  int euler() const {
    switch (kind) {
      case Kind::Birth:
      case Kind::Death:
        return 1;
      case Kind::Saddle:
        return -1;
      default:
        return 0;
    }
  }
};

struct Movie {
  Diagram start, end;
  std::vector<Move> moves;

  int births() const {
    int n = 0;
    for (const auto& m : moves) n += (m.kind == Move::Kind::Birth);
    return n;
  }
  int deaths() const {
    int n = 0;
    for (const auto& m : moves) n += (m.kind == Move::Kind::Death);
    return n;
  }
  int saddles() const {
    int n = 0;
    for (const auto& m : moves) n += (m.kind == Move::Kind::Saddle);
    return n;
  }
  int dots() const {
    int n = 0;
    for (const auto& m : moves) n += m.dots();
    return n;
  }
  /// Euler characteristic of the (undotted) cobordism.
  int euler_characteristic() const { return births() + deaths() - saddles(); }
};

namespace detail {

inline int resolve_location(const Diagram& d, int value, bool is_component) {
  if (!is_component) return value;
  if (value < 1 || value > d.num_components())
    throw DiagramError(DiagramErrorKind::InvalidLocation,
                       "component index out of range");
  return d.components[value - 1][0];
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Parsing.

inline Movie parse_movie(const std::string& text) {
  enum class Section { None, Start, End, Moves } section = Section::None;
  std::string start_text, end_text;
  std::vector<Move> moves;

  std::istringstream in(text);
  std::string line;
  auto parse_loc = [](const std::string& tok, int& value, bool& is_comp) {
    if (tok.size() < 2 || (tok[0] != 's' && tok[0] != 'c' && tok[0] != 'x'))
      throw DiagramError(DiagramErrorKind::MalformedTuple,
                         "bad location '" + tok + "'");
    value = std::stoi(tok.substr(1));
    is_comp = (tok[0] == 'c');
    return tok[0];
  };

  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::string trimmed = line;
    trimmed.erase(0, trimmed.find_first_not_of(" \t"));
    trimmed.erase(trimmed.find_last_not_of(" \t\r") + 1);
    if (trimmed.empty()) continue;
    if (trimmed == "start:") {
      section = Section::Start;
      continue;
    }
    if (trimmed == "end:") {
      section = Section::End;
      continue;
    }
    if (trimmed == "moves:") {
      section = Section::Moves;
      continue;
    }
    if (section == Section::Start) {
      start_text += trimmed + "\n";
    } else if (section == Section::End) {
      end_text += trimmed + "\n";
    } else if (section == Section::Moves) {
      std::istringstream ls(trimmed);
      std::string verb, t1, t2;
      ls >> verb >> t1 >> t2;
      Move m{Move::Kind::Birth};
      if (verb == "birth") {
        m.kind = Move::Kind::Birth;
      } else if (verb == "death") {
        m.kind = Move::Kind::Death;
        parse_loc(t1, m.a, m.a_is_component);
      } else if (verb == "saddle") {
        m.kind = Move::Kind::Saddle;
        parse_loc(t1, m.a, m.a_is_component);
        parse_loc(t2, m.b, m.b_is_component);
      } else if (verb == "dot") {
        m.kind = Move::Kind::Dot;
        parse_loc(t1, m.a, m.a_is_component);
      } else if (verb == "r1+") {
        m.kind = Move::Kind::R1Plus;
        parse_loc(t1, m.a, m.a_is_component);
      } else if (verb == "r1-") {
        m.kind = Move::Kind::R1Minus;
        parse_loc(t1, m.a, m.a_is_component);
      } else if (verb == "r1u") {
        m.kind = Move::Kind::R1Undo;
        parse_loc(t1, m.a, m.a_is_component);
      } else if (verb == "r2") {
        m.kind = Move::Kind::R2;
        parse_loc(t1, m.a, m.a_is_component);
        parse_loc(t2, m.b, m.b_is_component);
      } else if (verb == "r2u") {
        m.kind = Move::Kind::R2Undo;
        parse_loc(t1, m.a, m.a_is_component);
        parse_loc(t2, m.b, m.b_is_component);
      } else if (verb == "r3") {
        m.kind = Move::Kind::R3;
        parse_loc(t1, m.a, m.a_is_component);
        parse_loc(t2, m.b, m.b_is_component);
      } else {
        throw DiagramError(DiagramErrorKind::MalformedTuple, "unknown move '" + verb + "'");
      }
      moves.push_back(m);
    } else {
      throw DiagramError(DiagramErrorKind::MalformedTuple,
                         "movie line outside any section: '" + trimmed + "'");
    }
  }
  Movie mv;
  mv.start = parse_pd(start_text);
  mv.end = parse_pd(end_text);
  mv.moves = std::move(moves);
  return mv;
}

// ---------------------------------------------------------------------------
// Frame application (diagram level).

inline Diagram apply_move(const Diagram& d, const Move& m) {
  switch (m.kind) {
    case Move::Kind::Birth:
      return birth(d).after;
    case Move::Kind::Death:
      return death(d, detail::resolve_location(d, m.a, m.a_is_component)).after;
    case Move::Kind::Saddle:
      return saddle(d, detail::resolve_location(d, m.a, m.a_is_component),
                    detail::resolve_location(d, m.b, m.b_is_component))
          .after;
    case Move::Kind::Dot:
      return d;
    case Move::Kind::R1Plus:
      return insert_kink(d, detail::resolve_location(d, m.a, m.a_is_component), true).after;
    case Move::Kind::R1Minus:
      return insert_kink(d, detail::resolve_location(d, m.a, m.a_is_component), false).after;
    case Move::Kind::R1Undo:
      return remove_kink(d, m.a - 1).after;
    case Move::Kind::R2:
      return r2_push(d, detail::resolve_location(d, m.a, m.a_is_component),
                     detail::resolve_location(d, m.b, m.b_is_component))
          .after;
    case Move::Kind::R2Undo:
      return r2_remove(d, m.a - 1, m.b - 1).after;
    case Move::Kind::R3:
      throw DiagramError(DiagramErrorKind::InvalidLocation,
                         "r3 frames are produced by elementary_map");
  }
  throw std::logic_error("unreachable");
}

inline std::vector<Diagram> movie_frames(const Movie& m) {
  std::vector<Diagram> frames{m.start};
  for (const auto& mv : m.moves) frames.push_back(apply_move(frames.back(), mv));
  return frames;
}

/// Frames must chain from start to end (up to relabeling).
inline void validate_movie(const Movie& m) {
  auto frames = movie_frames(m);
  if (!same_diagram(frames.back(), m.end))
    throw DiagramError(DiagramErrorKind::InvalidLocation,
                       "movie does not end at the declared diagram");
}

// ---------------------------------------------------------------------------
// Elementary chain maps on full cubes.

struct MovieStep {
  Diagram after;
  std::shared_ptr<const GradedComplex> complex_after;
  ChainMap map;  // C(before) -> C(after)
};

namespace detail {

// Morse moves keep the crossing set, so states correspond one to one and the
// map is assembled generator by generator through circle matching.
template <typename PerGenerator>
inline ChainMap morse_map(std::shared_ptr<const GradedComplex> before,
                          std::shared_ptr<const GradedComplex> after, int dq,
                          PerGenerator&& per_gen) {
  ChainMap f;
  f.src = before;
  f.tgt = after;
  f.dq = dq;
  for (int i = 0; i < before->slots(); ++i) {
    int h = before->h_min + i;
    int rows = after->size_at(h);
    PolyMatrix m(rows, static_cast<int>(before->gens[i].size()));
    for (size_t a = 0; a < before->gens[i].size(); ++a)
      per_gen(h, static_cast<int>(a), before->gens[i][a], m);
    if (!m.is_zero()) f.blocks[h] = std::move(m);
  }
  return f;
}

// target labels from source labels through a circle correspondence: for each
// target circle not in `skip`, copy the label of the source circle containing
// the same representative edge
inline uint32_t transfer_labels(const StateCircles& src_sc, uint32_t src_labels,
                                const StateCircles& tgt_sc, const std::set<int>& skip) {
  uint32_t out = 0;
  for (int z = 0; z < tgt_sc.count(); ++z) {
    if (skip.count(z)) continue;
    int rep = -1;
    for (const auto& [e, fwd] : tgt_sc.circles[z]) {
      if (src_sc.circle_of_edge.count(e)) {
        rep = e;
        break;
      }
    }
    if (rep < 0) throw std::runtime_error("transfer_labels: unmatched circle");
    if ((src_labels >> src_sc.circle_of_edge.at(rep)) & 1u) out |= (1u << z);
  }
  return out;
}

}  // namespace detail

inline MovieStep elementary_map(std::shared_ptr<const GradedComplex> before,
                                const Move& m, const BuildLimits& limits = {}) {
  const Diagram& d = before->resolutions->diagram;
  const FrobeniusTheory& theory = before->theory;
  MovieStep step;

  switch (m.kind) {
    case Move::Kind::Birth: {
      auto s = birth(d);
      step.after = s.after;
      auto after = std::make_shared<const GradedComplex>(
          build_complex(step.after, theory, limits));
      int loop = s.loop_edge;
      step.map = detail::morse_map(
          before, after, -1,
          [&](int h, int col, const Generator& g, PolyMatrix& mtx) {
            const auto& src_sc = before->resolutions->at(g.state);
            const auto& tgt_sc = after->resolutions->at(g.state);
            int nc = tgt_sc.circle_of_edge.at(loop);
            uint32_t labels = detail::transfer_labels(src_sc, g.labels, tgt_sc, {nc});
            int idx = after->index_of(after->slot_of(h), g.state, labels);
            mtx.add_to(idx, col, Poly::one());  // new circle labeled 1
          });
      step.complex_after = after;
      return step;
    }
    case Move::Kind::Death: {
      int edge = detail::resolve_location(d, m.a, m.a_is_component);
      auto s = death(d, edge);
      step.after = s.after;
      auto after = std::make_shared<const GradedComplex>(
          build_complex(step.after, theory, limits));
      step.map = detail::morse_map(
          before, after, -1,
          [&](int h, int col, const Generator& g, PolyMatrix& mtx) {
            const auto& src_sc = before->resolutions->at(g.state);
            int dying = src_sc.circle_of_edge.at(edge);
            // counit: 1 -> 0, X -> 1
            if (!((g.labels >> dying) & 1u)) return;
            const auto& tgt_sc = after->resolutions->at(g.state);
            uint32_t labels = detail::transfer_labels(src_sc, g.labels, tgt_sc, {});
            int idx = after->index_of(after->slot_of(h), g.state, labels);
            mtx.add_to(idx, col, Poly::one());
          });
      step.complex_after = after;
      return step;
    }
    case Move::Kind::Dot: {
      int edge = detail::resolve_location(d, m.a, m.a_is_component);
      step.after = d;
      step.map = detail::morse_map(
          before, before, 2,
          [&](int h, int col, const Generator& g, PolyMatrix& mtx) {
            const auto& sc = before->resolutions->at(g.state);
            int circle = sc.circle_of_edge.at(edge);
            AlgElt img = theory.dot((g.labels >> circle) & 1u);
            if (!img.c0.is_zero()) {
              int idx = before->index_of(before->slot_of(h), g.state,
                                         g.labels & ~(1u << circle));
              mtx.add_to(idx, col, img.c0);
            }
            if (!img.c1.is_zero()) {
              int idx = before->index_of(before->slot_of(h), g.state,
                                         g.labels | (1u << circle));
              mtx.add_to(idx, col, img.c1);
            }
          });
      step.complex_after = before;
      return step;
    }
    case Move::Kind::Saddle: {
      int ea = detail::resolve_location(d, m.a, m.a_is_component);
      int eb = detail::resolve_location(d, m.b, m.b_is_component);
      auto s = saddle(d, ea, eb);
      step.after = s.after;
      auto after = std::make_shared<const GradedComplex>(
          build_complex(step.after, theory, limits));
      int circlet = s.loop_edge;  // fresh edge for the pinch saddle
      step.map = detail::morse_map(
          before, after, +1,
          [&](int h, int col, const Generator& g, PolyMatrix& mtx) {
            const auto& src_sc = before->resolutions->at(g.state);
            const auto& tgt_sc = after->resolutions->at(g.state);
            int c1 = src_sc.circle_of_edge.at(ea);
            int c2 = src_sc.circle_of_edge.at(eb);
            if (c1 != c2) {
              // merge
              int cz = tgt_sc.circle_of_edge.at(ea);
              AlgElt prod =
                  theory.multiply((g.labels >> c1) & 1u, (g.labels >> c2) & 1u);
              uint32_t base = detail::transfer_labels(
                  // source labels with the merged circles ignored: transfer
                  // handles only unaffected circles by reps outside the merge
                  src_sc, g.labels, tgt_sc, {cz});
              if (!prod.c0.is_zero())
                mtx.add_to(after->index_of(after->slot_of(h), g.state, base), col, prod.c0);
              if (!prod.c1.is_zero())
                mtx.add_to(after->index_of(after->slot_of(h), g.state, base | (1u << cz)),
                           col, prod.c1);
            } else {
              // split
              int z1 = tgt_sc.circle_of_edge.at(ea);
              int z2 = (ea == eb) ? tgt_sc.circle_of_edge.at(circlet)
                                  : tgt_sc.circle_of_edge.at(eb);
              auto cm = theory.comultiply((g.labels >> c1) & 1u);
              uint32_t base = detail::transfer_labels(src_sc, g.labels, tgt_sc, {z1, z2});
              for (int l1 = 0; l1 < 2; ++l1)
                for (int l2 = 0; l2 < 2; ++l2) {
                  const Poly& coeff = cm[l1][l2];
                  if (coeff.is_zero()) continue;
                  uint32_t tl = base;
                  if (l1) tl |= (1u << z1);
                  if (l2) tl |= (1u << z2);
                  mtx.add_to(after->index_of(after->slot_of(h), g.state, tl), col, coeff);
                }
            }
          });
      step.complex_after = after;
      return step;
    }
    case Move::Kind::R1Plus:
    case Move::Kind::R1Minus: {
      int edge = detail::resolve_location(d, m.a, m.a_is_component);
      auto s = insert_kink(d, edge, m.kind == Move::Kind::R1Plus);
      step.after = s.after;
      auto big = std::make_shared<const GradedComplex>(
          build_complex(step.after, theory, limits));
      auto t = r1_transport(before, big, s.new_crossing);
      step.map = t.insert_map;
      step.complex_after = big;
      return step;
    }
    case Move::Kind::R1Undo: {
      int k = m.a - 1;
      auto s = remove_kink(d, k);
      step.after = s.after;
      auto small = std::make_shared<const GradedComplex>(
          build_complex(step.after, theory, limits));
      // the removed crossing sat at index k; rebuild the kinked cube with the
      // kink crossing last so the transport's state indexing lines up
      auto t = r1_transport(small, before, k);
      step.map = t.remove_map;
      step.complex_after = small;
      return step;
    }
    case Move::Kind::R2: {
      int over = detail::resolve_location(d, m.a, m.a_is_component);
      int under = detail::resolve_location(d, m.b, m.b_is_component);
      auto s = r2_push(d, over, under);
      step.after = s.after;
      auto big = std::make_shared<const GradedComplex>(
          build_complex(step.after, theory, limits));
      auto t = r2_transport(before, big, s.new_crossing, s.new_crossing2,
                             s.over_arc, s.under_arc);
      step.map = t.insert_map;
      step.complex_after = big;
      return step;
    }
    case Move::Kind::R2Undo: {
      auto s = r2_remove(d, m.a - 1, m.b - 1);
      step.after = s.after;
      auto small = std::make_shared<const GradedComplex>(
          build_complex(step.after, theory, limits));
      auto t = r2_transport(small, before, m.a - 1, m.b - 1, s.over_arc, s.under_arc);
      step.map = t.remove_map;
      step.complex_after = small;
      return step;
    }
    case Move::Kind::R3:
      throw DiagramError(DiagramErrorKind::InvalidLocation, "r3 not routed here");
  }
  throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------------------
// Movie composition.

struct MovieMapResult {
  std::vector<Diagram> frames;
  Reduction start_reduction, end_reduction;
  ChainMap map;  // reduced start -> reduced end
};

inline MovieMapResult movie_map(const Movie& movie, const FrobeniusTheory& theory,
                                const BuildLimits& limits = {}) {
  MovieMapResult out;
  out.frames.push_back(movie.start);

  auto cur_full = std::make_shared<const GradedComplex>(
      build_complex(movie.start, theory, limits));
  Reduction cur_red = simplify_with_maps(*cur_full);
  cur_red.to_reduced.src = cur_full;
  cur_red.from_reduced.tgt = cur_full;
  out.start_reduction = cur_red;

  ChainMap total = identity_map(cur_red.reduced);
  for (const auto& mv : movie.moves) {
    MovieStep step = elementary_map(cur_full, mv, limits);
    Reduction next_red = simplify_with_maps(*step.complex_after);
    next_red.to_reduced.src = step.complex_after;
    next_red.from_reduced.tgt = step.complex_after;
    ChainMap hop = compose(next_red.to_reduced, compose(step.map, cur_red.from_reduced));
    total = compose(hop, total);
    cur_full = step.complex_after;
    cur_red = next_red;
    out.frames.push_back(step.after);
  }
  if (!same_diagram(out.frames.back(), movie.end))
    throw DiagramError(DiagramErrorKind::InvalidLocation,
                       "movie does not end at the declared diagram");
  out.end_reduction = cur_red;
  out.map = total;
  return out;
}

/// The two-saddle self-movie adding a handle to the identity cobordism: split
/// a circlet off `edge`, then merge it back.
inline Movie stabilization_movie(const Diagram& d, int edge) {
  Movie m;
  m.start = d;
  Move split{Move::Kind::Saddle};
  split.a = split.b = edge;
  Move merge{Move::Kind::Saddle};
  merge.a = edge;
  merge.b = d.max_edge() + 1;  // the circlet created by the split
  m.moves = {split, merge};
  m.end = apply_move(apply_move(d, split), merge);
  return m;
}

/// The distinguishing element of two movies with common ends:
/// BN(m1)(input) + BN(m2)(input).
inline HomologyClass distinguishing_element(const MovieMapResult& m1,
                                            const MovieMapResult& m2,
                                            std::shared_ptr<const GradedModule> start_h,
                                            std::shared_ptr<const GradedModule> end_h,
                                            const HomologyClass& input) {
  auto i1 = induced_on_homology(m1.map, start_h, end_h);
  auto i2 = induced_on_homology(m2.map, start_h, end_h);
  return add(apply_induced(i1, input), apply_induced(i2, input));
}

}  // namespace bnh
