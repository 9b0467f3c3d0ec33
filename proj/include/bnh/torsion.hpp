#pragma once

#include <limits>
#include <sstream>
#include <string>

#include "bnh/f2.hpp"
#include "bnh/homology.hpp"

// H-torsion orders of homology classes: the least k with H^k * v = 0, and
// the sufficient primitivity test through the H = 0 reduction.

namespace bnh {

struct TorsionReport {
  bool infinite = false;
  int order = 0;  // meaningful when finite
  std::string certificate;

  bool operator==(const TorsionReport& o) const {
    return infinite == o.infinite && (infinite || order == o.order);
  }
};

namespace detail {

/// Least k with H^k * c = 0 in R/(f); -1 when no such k exists.
inline int order_in_cyclic(const Poly& f, const Poly& c) {
  if (c.is_zero()) return 0;
  if (f.is_zero()) return -1;  // free summand
  if (f.is_h_power()) {
    int k = f.degree();
    Poly r = Poly::divmod(c, f).second;
    if (r.is_zero()) return 0;
    return k - r.valuation();
  }
  // general f = H^a * u with u coprime to H: H^k c = 0 mod f iff u | c and
  // k >= a - val(c/u)
  int a = f.valuation();
  Poly u = Poly::div_exact(f, Poly::h_power(a));
  auto [q, r] = Poly::divmod(c, u);
  if (!r.is_zero()) return -1;
  Poly reduced = Poly::divmod(c, f).second;
  if (reduced.is_zero()) return 0;
  auto [q2, r2] = Poly::divmod(reduced, u);
  if (!r2.is_zero()) return -1;
  return std::max(0, a - q2.valuation());
}

}  // namespace detail

inline TorsionReport torsion_order(const HomologyClass& cls) {
  TorsionReport rep;
  const DegreeData* dd = cls.module->degree(cls.h);
  if (!dd || cls.is_zero()) {
    rep.certificate = "zero class: H^0 * v = 0";
    return rep;
  }
  int best = 0;
  for (size_t j = 0; j < cls.coords.size(); ++j) {
    if (cls.coords[j].is_zero()) continue;
    const Poly& order = dd->gens[j].order;
    if (order.is_unit()) continue;
    int k = detail::order_in_cyclic(order, cls.coords[j]);
    if (k < 0) {
      rep.infinite = true;
      rep.certificate = "nonzero image in the free quotient (coordinate " +
                        std::to_string(j) + ")";
      return rep;
    }
    best = std::max(best, k);
  }
  rep.order = best;
  std::ostringstream msg;
  msg << "H^" << best << " * v = 0";
  if (best > 0) msg << " and H^" << (best - 1) << " * v != 0";
  rep.certificate = msg.str();
  return rep;
}

// ---------------------------------------------------------------------------
// Primitivity via the H = 0 reduction (sufficient direction only: a nonzero
// image in the F2 theory certifies that H does not divide the class).

enum class Primitivity { Primitive, Inconclusive };

struct PrimitivityReport {
  Primitivity verdict = Primitivity::Inconclusive;
  std::string witness;
};

inline PrimitivityReport primitivity_check(const HomologyClass& cls) {
  PrimitivityReport rep;
  const GradedComplex* cx = cls.module->complex.get();
  if (!cx) throw std::invalid_argument("primitivity_check: class lacks a complex");
  const DegreeData* dd = cls.module->degree(cls.h);
  if (!dd || cls.is_zero()) {
    rep.witness = "class is zero";
    return rep;
  }
  std::vector<Poly> chain = representative_chain(cls);

  // mod-H reduction of the representative and of the incoming differential
  int slot = cx->slot_of(cls.h);
  int n = cx->size_at(cls.h);
  F2Vector image(n);
  for (int i = 0; i < n; ++i) image.set(i, chain[i].eval_at_zero());
  if (image.is_zero()) {
    rep.witness = "representative reduces to 0 mod H";
    return rep;
  }
  PolyMatrix incoming = (slot > 0) ? cx->diff[slot - 1] : PolyMatrix(n, 0);
  F2Matrix d0(incoming.rows(), incoming.cols());
  for (int i = 0; i < incoming.rows(); ++i)
    for (const auto& [j, v] : incoming.row(i)) d0.set(i, j, v.eval_at_zero());
  auto sol = d0.solve(image);
  if (sol) {
    rep.witness = "mod-H image is a boundary in the F2 theory";
    return rep;
  }
  rep.verdict = Primitivity::Primitive;
  rep.witness = "nonzero image under the H=0 natural transformation";
  return rep;
}

// ---------------------------------------------------------------------------
// Synthetic modules: realize a prescribed decomposition as the homology of a
// two-term complex, so torsion and gluing arithmetic can be exercised off the
// link pipeline.

struct SyntheticSummand {
  int q = 0;
  Poly order;  // zero = free summand, H^k = torsion
};

inline std::shared_ptr<const GradedModule> synthetic_module(
    int h, const std::vector<SyntheticSummand>& summands) {
  auto cx = std::make_shared<GradedComplex>();
  cx->theory = FrobeniusTheory::bar_natan();
  cx->h_min = h - 1;
  int gens = static_cast<int>(summands.size());
  int rels = 0;
  for (const auto& s : summands) rels += !s.order.is_zero();
  cx->gens.assign(2, {});
  for (int j = 0; j < gens; ++j) {
    Generator g;
    g.state = 0;
    g.labels = static_cast<uint32_t>(j);
    g.h = h;
    g.q = summands[j].q;
    cx->gens[1].push_back(g);
  }
  int r = 0;
  PolyMatrix d(gens, rels);
  for (int j = 0; j < gens; ++j) {
    if (summands[j].order.is_zero()) continue;
    Generator g;
    g.state = 1;
    g.labels = static_cast<uint32_t>(r);
    g.h = h - 1;
    g.q = summands[j].q + 2 * summands[j].order.degree();
    cx->gens[0].push_back(g);
    d.set(j, r, summands[j].order);
    ++r;
  }
  cx->diff.assign(2, PolyMatrix());
  cx->diff[0] = std::move(d);
  cx->diff[1] = PolyMatrix(0, gens);
  return std::make_shared<const GradedModule>(homology(*cx, true));
}

}  // namespace bnh
