#pragma once

#include <map>
#include <memory>
#include <stdexcept>

#include "bnh/complex.hpp"

// Chain maps between graded complexes, with their (h, q) bidegree.  Blocks
// are keyed by the absolute homological degree of the source.

namespace bnh {

struct ChainMap {
  std::shared_ptr<const GradedComplex> src, tgt;
  int dh = 0, dq = 0;
  std::map<int, PolyMatrix> blocks;

  PolyMatrix block(int h) const {
    auto it = blocks.find(h);
    if (it != blocks.end()) return it->second;
    return PolyMatrix(tgt->size_at(h + dh), src->size_at(h));
  }

  std::vector<Poly> apply(int h, const std::vector<Poly>& chain) const {
    return block(h).apply(chain);
  }
};

inline ChainMap identity_map(std::shared_ptr<const GradedComplex> c) {
  ChainMap f;
  f.src = f.tgt = c;
  for (int h = c->h_min; h <= c->h_max(); ++h)
    f.blocks[h] = PolyMatrix::identity(c->size_at(h));
  return f;
}

inline ChainMap compose(const ChainMap& g, const ChainMap& f) {
  if (g.src.get() != f.tgt.get())
    throw std::invalid_argument("compose: chain maps are not composable");
  ChainMap h;
  h.src = f.src;
  h.tgt = g.tgt;
  h.dh = f.dh + g.dh;
  h.dq = f.dq + g.dq;
  for (int deg = f.src->h_min; deg <= f.src->h_max(); ++deg) {
    if (f.src->size_at(deg) == 0) continue;
    PolyMatrix m = g.block(deg + f.dh) * f.block(deg);
    if (!m.is_zero()) h.blocks[deg] = std::move(m);
  }
  return h;
}

/// The commuting-square invariant d o f = f o d, checked degreewise.
inline bool chain_map_commutes(const ChainMap& f) {
  for (int h = f.src->h_min - 1; h <= f.src->h_max() + 1; ++h) {
    PolyMatrix left = f.tgt->d_out(h + f.dh) * f.block(h);
    PolyMatrix right = f.block(h + 1) * f.src->d_out(h);
    if (left != right) return false;
  }
  return true;
}

inline ChainMap add(const ChainMap& a, const ChainMap& b) {
  if (a.src.get() != b.src.get() || a.tgt.get() != b.tgt.get() || a.dh != b.dh)
    throw std::invalid_argument("add: chain map shape mismatch");
  ChainMap s = a;
  for (int h = a.src->h_min; h <= a.src->h_max(); ++h) {
    PolyMatrix m = a.block(h) + b.block(h);
    if (m.is_zero())
      s.blocks.erase(h);
    else
      s.blocks[h] = std::move(m);
  }
  return s;
}

}  // namespace bnh
