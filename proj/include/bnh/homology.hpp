#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bnh/chain_map.hpp"
#include "bnh/complex.hpp"
#include "bnh/snf.hpp"

// Homology of a graded complex as an F2[H]-module per bidegree, via Smith
// normal form of the two adjacent differentials.  The differential is
// q-degree 0, so torsion factors are reported at the q of their (transformed)
// generator on the kernel side.
//
// When presentations are retained, arbitrary cycles can be reduced to
// normalized coordinates, representatives extracted, and induced maps of
// chain maps expressed as matrices — the machinery behind homology classes,
// torsion orders and cobordism-induced maps.

namespace bnh {

struct GenInfo {
  int q = 0;
  Poly order;  // zero = free generator, unit = killed, H^k = torsion
  bool is_free() const { return order.is_zero(); }
  bool is_killed() const { return order.is_unit(); }
  bool is_torsion() const { return !is_free() && !is_killed(); }
};

struct DegreeData {
  std::vector<int> ker_idx;
  PolyMatrix ker_basis;   // n_h x k
  PolyMatrix ker_coords;  // k x n_h
  PolyMatrix pinv;        // k x k generator change on the presentation side
  PolyMatrix p;
  std::vector<GenInfo> gens;  // size k, coordinates after applying p

  int num_gens() const { return static_cast<int>(gens.size()); }
};

struct GradedModule {
  // (h, q) -> decomposition
  std::map<std::pair<int, int>, ModuleDecomp> table;
  std::shared_ptr<const GradedComplex> complex;  // set when presentation retained
  std::map<int, DegreeData> degrees;

  bool has_presentation() const { return complex != nullptr; }

  const DegreeData* degree(int h) const {
    auto it = degrees.find(h);
    return it == degrees.end() ? nullptr : &it->second;
  }

  int total_free_rank() const {
    int r = 0;
    for (const auto& [hq, d] : table) r += d.free_rank;
    return r;
  }

  std::vector<Poly> total_torsion() const {
    std::vector<Poly> t;
    for (const auto& [hq, d] : table) t.insert(t.end(), d.torsion.begin(), d.torsion.end());
    std::sort(t.begin(), t.end());
    return t;
  }

  ModuleDecomp total_decomp() const {
    ModuleDecomp d;
    d.free_rank = total_free_rank();
    d.torsion = total_torsion();
    return d;
  }

  bool same_table(const GradedModule& o) const {
    auto norm = [](const GradedModule& m) {
      std::map<std::pair<int, int>, ModuleDecomp> t;
      for (const auto& [hq, d] : m.table) {
        if (d.free_rank == 0 && d.torsion.empty()) continue;
        ModuleDecomp s = d;
        std::sort(s.torsion.begin(), s.torsion.end());
        s.warnings.clear();
        t[hq] = s;
      }
      return t;
    };
    return norm(*this) == norm(o);
  }
};

namespace detail {

// q-degree of a homogeneous chain vector; asserts consistency across
// coordinates when `strict`.
inline std::optional<int> homogeneous_q(const std::vector<Generator>& gens,
                                        const std::vector<Poly>& v, bool strict) {
  std::optional<int> q;
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    auto exps = v[i].exponents();
    for (int e : exps) {
      int qi = gens[i].q + 2 * e;
      if (!q) {
        q = qi;
      } else if (*q != qi) {
        if (strict)
          throw std::runtime_error("homology: non-homogeneous generator vector");
        return std::nullopt;
      }
    }
  }
  return q;
}

}  // namespace detail

inline GradedModule homology(const GradedComplex& c, bool want_presentation = false) {
  GradedModule out;
  auto holder = want_presentation ? std::make_shared<GradedComplex>(c) : nullptr;
  out.complex = holder;

  for (int i = 0; i < c.slots(); ++i) {
    int h = c.h_min + i;
    int n = static_cast<int>(c.gens[i].size());
    if (n == 0) continue;

    PolyMatrix m0 = c.d_out(h);                                  // out of degree h
    PolyMatrix m1 = (i > 0) ? c.diff[i - 1] : PolyMatrix(n, 0);  // into degree h

    SnfOptions o0;
    o0.want_q = true;
    o0.want_qinv = true;
    SnfResult s0 = snf(m0, o0);
    auto ker_idx = kernel_indices(s0, n);
    int k = static_cast<int>(ker_idx.size());

    PolyMatrix ker_basis(n, k), ker_coords(k, n);
    for (int a = 0; a < k; ++a) {
      for (int r = 0; r < n; ++r) ker_basis.set(r, a, s0.q->at(r, ker_idx[a]));
      for (int cidx = 0; cidx < n; ++cidx) ker_coords.set(a, cidx, s0.qinv->at(ker_idx[a], cidx));
    }

    // relations: image of the incoming differential, in kernel coordinates
    PolyMatrix rel(k, m1.cols());
    {
      PolyMatrix expressed = ker_coords * m1;
      rel = std::move(expressed);
    }

    SnfOptions o1;
    o1.want_p = true;
    o1.want_pinv = true;
    SnfResult s1 = snf(rel, o1);

    DegreeData dd;
    dd.ker_idx = ker_idx;
    dd.ker_basis = ker_basis;
    dd.ker_coords = ker_coords;
    dd.p = *s1.p;
    dd.pinv = *s1.pinv;
    dd.gens.resize(k);

    for (int j = 0; j < k; ++j) {
      Poly order = (j < static_cast<int>(s1.diag.size())) ? s1.diag[j] : Poly::zero();
      dd.gens[j].order = order;
      if (order.is_unit()) continue;  // killed generator
      // chain representative of the j-th presented generator
      std::vector<Poly> unit(k);
      unit[j] = Poly::one();
      std::vector<Poly> chain = ker_basis.apply(dd.pinv.apply(unit));
      auto q = detail::homogeneous_q(c.gens[i], chain, true);
      if (!q) throw std::runtime_error("homology: zero generator vector");
      dd.gens[j].q = *q;

      auto& cell = out.table[{h, *q}];
      if (order.is_zero()) {
        cell.free_rank += 1;
      } else {
        cell.torsion.push_back(order);
        note_non_h_power(cell, order);
      }
    }
    for (auto& [hq, cell] : out.table) std::sort(cell.torsion.begin(), cell.torsion.end());

    if (want_presentation) out.degrees[h] = std::move(dd);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Homology classes over a retained presentation.

struct HomologyClass {
  std::shared_ptr<const GradedModule> module;
  int h = 0;
  std::vector<Poly> coords;  // normalized P-coordinates, one per presented gen

  bool is_zero() const {
    for (const auto& p : coords)
      if (!p.is_zero()) return false;
    return true;
  }
};

inline void normalize_coords(const DegreeData& dd, std::vector<Poly>& coords) {
  for (size_t j = 0; j < coords.size(); ++j) {
    const Poly& order = dd.gens[j].order;
    if (order.is_unit()) {
      coords[j] = Poly::zero();
    } else if (!order.is_zero() && !coords[j].is_zero()) {
      coords[j] = Poly::divmod(coords[j], order).second;
    }
  }
}

/// Reduce a cycle (chain coordinates at degree h) to a homology class.
inline HomologyClass class_from_chain(std::shared_ptr<const GradedModule> module, int h,
                                      const std::vector<Poly>& chain) {
  if (!module->has_presentation())
    throw std::invalid_argument("class_from_chain: module lacks presentation data");
  const DegreeData* dd = module->degree(h);
  if (!dd) {
    if (!is_zero_vector(chain))
      throw std::invalid_argument("class_from_chain: no homology data at this degree");
    return {module, h, {}};
  }
  // cycle check
  if (!is_zero_vector(module->complex->d_out(h).apply(chain)))
    throw std::invalid_argument("class_from_chain: chain is not a cycle");
  HomologyClass cls;
  cls.module = module;
  cls.h = h;
  cls.coords = dd->p.apply(dd->ker_coords.apply(chain));
  normalize_coords(*dd, cls.coords);
  return cls;
}

inline std::vector<Poly> representative_chain(const HomologyClass& cls) {
  const DegreeData* dd = cls.module->degree(cls.h);
  if (!dd) return {};
  return dd->ker_basis.apply(dd->pinv.apply(cls.coords));
}

inline HomologyClass class_generator(std::shared_ptr<const GradedModule> module, int h,
                                     int index) {
  const DegreeData* dd = module->degree(h);
  if (!dd || index >= dd->num_gens())
    throw std::invalid_argument("class_generator: index out of range");
  HomologyClass cls;
  cls.module = module;
  cls.h = h;
  cls.coords.assign(dd->num_gens(), Poly::zero());
  cls.coords[index] = Poly::one();
  normalize_coords(*dd, cls.coords);
  return cls;
}

inline HomologyClass scale(const HomologyClass& cls, const Poly& f) {
  HomologyClass out = cls;
  for (auto& c : out.coords) c = c * f;
  if (const DegreeData* dd = cls.module->degree(cls.h)) normalize_coords(*dd, out.coords);
  return out;
}

/// Multiplication by H, the algebraic shadow of internal stabilization.
inline HomologyClass h_action(const HomologyClass& cls) { return scale(cls, Poly::h()); }

inline HomologyClass add(const HomologyClass& a, const HomologyClass& b) {
  if (a.module.get() != b.module.get() || a.h != b.h)
    throw std::invalid_argument("add: classes live in different groups");
  HomologyClass out = a;
  for (size_t i = 0; i < out.coords.size(); ++i) out.coords[i] += b.coords[i];
  if (const DegreeData* dd = a.module->degree(a.h)) normalize_coords(*dd, out.coords);
  return out;
}

/// Matrix of the induced map on homology at source degree h, with columns and
/// rows indexed by the presented generators (killed ones held at zero).
inline PolyMatrix induced_block(const ChainMap& f,
                                const std::shared_ptr<const GradedModule>& src_h,
                                const std::shared_ptr<const GradedModule>& tgt_h, int h) {
  const DegreeData* ds = src_h->degree(h);
  const DegreeData* dt = tgt_h->degree(h + f.dh);
  int cols = ds ? ds->num_gens() : 0;
  int rows = dt ? dt->num_gens() : 0;
  PolyMatrix m(rows, cols);
  if (!ds || !dt) return m;
  for (int j = 0; j < cols; ++j) {
    if (ds->gens[j].is_killed()) continue;
    std::vector<Poly> unit(cols);
    unit[j] = Poly::one();
    std::vector<Poly> chain = ds->ker_basis.apply(ds->pinv.apply(unit));
    std::vector<Poly> image = f.apply(h, chain);
    HomologyClass cls = class_from_chain(tgt_h, h + f.dh, image);
    for (int r = 0; r < rows; ++r) m.set(r, j, cls.coords[r]);
  }
  return m;
}

struct InducedMap {
  std::shared_ptr<const GradedModule> src, tgt;
  int dh = 0, dq = 0;
  std::map<int, PolyMatrix> blocks;  // source degree -> matrix

  PolyMatrix block(int h) const {
    auto it = blocks.find(h);
    if (it != blocks.end()) return it->second;
    const DegreeData* ds = src->degree(h);
    const DegreeData* dt = tgt->degree(h + dh);
    return PolyMatrix(dt ? dt->num_gens() : 0, ds ? ds->num_gens() : 0);
  }
};

inline InducedMap induced_on_homology(const ChainMap& f,
                                      std::shared_ptr<const GradedModule> src_h,
                                      std::shared_ptr<const GradedModule> tgt_h) {
  InducedMap m;
  m.src = src_h;
  m.tgt = tgt_h;
  m.dh = f.dh;
  m.dq = f.dq;
  for (const auto& [h, dd] : src_h->degrees) {
    PolyMatrix b = induced_block(f, src_h, tgt_h, h);
    if (!b.is_zero()) m.blocks[h] = std::move(b);
  }
  return m;
}

inline HomologyClass apply_induced(const InducedMap& m, const HomologyClass& cls) {
  HomologyClass out;
  out.module = m.tgt;
  out.h = cls.h + m.dh;
  const DegreeData* dt = m.tgt->degree(out.h);
  out.coords.assign(dt ? dt->num_gens() : 0, Poly::zero());
  if (!cls.coords.empty()) {
    PolyMatrix b = m.block(cls.h);
    out.coords = b.apply(cls.coords);
  }
  if (dt) normalize_coords(*dt, out.coords);
  return out;
}

}  // namespace bnh
