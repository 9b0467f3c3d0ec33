#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bnh/matrix.hpp"

// Smith normal form over the Euclidean domain F2[H], with optional transform
// tracking, and the module-theoretic helpers built on it (cokernel
// decomposition, Tor_1).
//
// Pivoting picks the nonzero entry of minimal degree, ties broken by
// (row, col) lexicographic order; degree-minimal pivots keep entry growth
// bounded in a Euclidean domain.

namespace bnh {

struct SnfOptions {
  bool want_p = false;     // P with P*M*Q = D
  bool want_pinv = false;  // P^{-1}
  bool want_q = false;     // Q
  bool want_qinv = false;  // Q^{-1}
};

struct SnfResult {
  std::vector<Poly> diag;  // invariant factors d_1 | d_2 | ..., zeros trailing
  std::optional<PolyMatrix> p, pinv, q, qinv;

  int rank() const {
    int r = 0;
    for (const auto& d : diag)
      if (!d.is_zero()) ++r;
    return r;
  }
};

namespace detail {

// Working state: the matrix plus the tracked transforms.  All elementary
// operations over F2[H] used here (adds and swaps) are involutions, which
// keeps the inverse bookkeeping to a handful of mirrored row operations.
struct SnfWorker {
  PolyMatrix m;
  std::vector<std::set<int>> col_nz;  // column -> rows with nonzero entry
  std::optional<PolyMatrix> p, pinv_t, q_t, qinv;

  explicit SnfWorker(const PolyMatrix& input, const SnfOptions& opt) : m(input) {
    col_nz.assign(m.cols(), {});
    for (int i = 0; i < m.rows(); ++i)
      for (const auto& [j, v] : m.row(i)) col_nz[j].insert(i);
    if (opt.want_p) p = PolyMatrix::identity(m.rows());
    if (opt.want_pinv) pinv_t = PolyMatrix::identity(m.rows());
    if (opt.want_q) q_t = PolyMatrix::identity(m.cols());
    if (opt.want_qinv) qinv = PolyMatrix::identity(m.cols());
  }

  void row_add(int i, int k, const Poly& f) {
    if (f.is_zero()) return;
    for (const auto& [j, v] : m.row(k)) {
      bool had = !m.at(i, j).is_zero();
      (void)had;
      m.add_to(i, j, f * v);
      if (m.at(i, j).is_zero())
        col_nz[j].erase(i);
      else
        col_nz[j].insert(i);
    }
    if (p) p->row_add(i, k, f);
    if (pinv_t) pinv_t->row_add(k, i, f);  // Pinv gets col_k += f*col_i
  }

  void col_add(int j, int l, const Poly& f) {
    if (f.is_zero()) return;
    std::vector<int> rows(col_nz[l].begin(), col_nz[l].end());
    for (int i : rows) {
      m.add_to(i, j, f * m.at(i, l));
      if (m.at(i, j).is_zero())
        col_nz[j].erase(i);
      else
        col_nz[j].insert(i);
    }
    if (q_t) q_t->row_add(j, l, f);    // Q gets col_j += f*col_l
    if (qinv) qinv->row_add(l, j, f);  // Qinv gets row_l += f*row_j
  }

  void swap_rows(int i, int k) {
    if (i == k) return;
    m.swap_rows(i, k);
    for (auto& s : col_nz) {
      bool hi = s.count(i), hk = s.count(k);
      if (hi != hk) {
        if (hi) {
          s.erase(i);
          s.insert(k);
        } else {
          s.erase(k);
          s.insert(i);
        }
      }
    }
    if (p) p->swap_rows(i, k);
    if (pinv_t) pinv_t->swap_rows(i, k);
  }

  void swap_cols(int j, int l) {
    if (j == l) return;
    m.swap_cols(j, l);
    std::swap(col_nz[j], col_nz[l]);
    if (q_t) q_t->swap_rows(j, l);
    if (qinv) qinv->swap_rows(j, l);
  }

  // Minimal-degree nonzero entry in the active region (>= k in both indices).
  bool find_pivot(int k, int& pr, int& pc) const {
    int best = -1;
    for (int i = k; i < m.rows(); ++i) {
      for (const auto& [j, v] : m.row(i)) {
        if (j < k) continue;
        int d = v.degree();
        if (best < 0 || d < best || (d == best && (i < pr || (i == pr && j < pc)))) {
          best = d;
          pr = i;
          pc = j;
        }
      }
    }
    return best >= 0;
  }
};

}  // namespace detail

/// Smith normal form: finds invertible P, Q with P*M*Q = diag(d_1, ..., d_r)
/// and d_1 | d_2 | ... | d_r.  Over F2 all units are 1, so the d_i are monic.
inline SnfResult snf(const PolyMatrix& input, const SnfOptions& opt = {}) {
  detail::SnfWorker w(input, opt);
  int n = std::min(input.rows(), input.cols());
  SnfResult res;
  res.diag.assign(n, Poly::zero());

  for (int k = 0; k < n; ++k) {
    int pr = 0, pc = 0;
    if (!w.find_pivot(k, pr, pc)) break;
    w.swap_rows(k, pr);
    w.swap_cols(k, pc);

    // Euclidean elimination of row/column k; remainders can become new,
    // smaller pivots, so loop until the cross is clear.
    for (;;) {
      bool reduced = false;
      std::vector<int> col_rows(w.col_nz[k].begin(), w.col_nz[k].end());
      for (int i : col_rows) {
        if (i == k) continue;
        auto [f, r] = Poly::divmod(w.m.at(i, k), w.m.at(k, k));
        w.row_add(i, k, f);
        if (!w.m.at(i, k).is_zero()) {
          // remainder has strictly smaller degree: promote it to pivot
          w.swap_rows(k, i);
          reduced = true;
          break;
        }
      }
      if (reduced) continue;

      std::vector<int> cols;
      for (const auto& [j, v] : w.m.row(k))
        if (j > k) cols.push_back(j);
      bool col_reduced = false;
      for (int j : cols) {
        auto [f, r] = Poly::divmod(w.m.at(k, j), w.m.at(k, k));
        w.col_add(j, k, f);
        if (!w.m.at(k, j).is_zero()) {
          w.swap_cols(k, j);
          col_reduced = true;
          break;
        }
      }
      if (col_reduced) continue;

      // Cross is clear.  Enforce divisibility: if the pivot fails to divide
      // some remaining entry, fold that row in and re-run the Euclid loop.
      bool fixed = true;
      const Poly& piv = w.m.at(k, k);
      for (int i = k + 1; i < w.m.rows() && fixed; ++i) {
        for (const auto& [j, v] : w.m.row(i)) {
          if (j <= k) continue;
          if (!piv.divides(v)) {
            w.row_add(k, i, Poly::one());
            fixed = false;
            break;
          }
        }
      }
      if (fixed) break;
    }
    res.diag[k] = w.m.at(k, k);
  }

  if (opt.want_p) res.p = std::move(w.p);
  if (opt.want_pinv) res.pinv = w.pinv_t->transpose();
  if (opt.want_q) res.q = w.q_t->transpose();
  if (opt.want_qinv) res.qinv = std::move(w.qinv);
  return res;
}

/// Column indices of Q spanning ker(M): those with zero diagonal entry.
inline std::vector<int> kernel_indices(const SnfResult& s, int cols) {
  std::vector<int> idx;
  int n = static_cast<int>(s.diag.size());
  for (int j = 0; j < cols; ++j) {
    if (j >= n || s.diag[j].is_zero()) idx.push_back(j);
  }
  return idx;
}

/// Basis of ker(M) as matrix columns (cols() x k).
inline PolyMatrix kernel_basis(const PolyMatrix& m) {
  SnfOptions opt;
  opt.want_q = true;
  SnfResult s = snf(m, opt);
  auto idx = kernel_indices(s, m.cols());
  PolyMatrix k(m.cols(), static_cast<int>(idx.size()));
  for (size_t a = 0; a < idx.size(); ++a) {
    for (int i = 0; i < m.cols(); ++i) k.set(i, static_cast<int>(a), s.q->at(i, idx[a]));
  }
  return k;
}

/// Solve M x = b over F2[H]; returns nullopt when no solution exists.
inline std::optional<std::vector<Poly>> solve(const PolyMatrix& m,
                                              const std::vector<Poly>& b) {
  SnfOptions opt;
  opt.want_p = true;
  opt.want_q = true;
  SnfResult s = snf(m, opt);
  std::vector<Poly> c = s.p->apply(b);
  std::vector<Poly> y(m.cols());
  int n = static_cast<int>(s.diag.size());
  for (int i = 0; i < m.rows(); ++i) {
    if (i < n && !s.diag[i].is_zero()) {
      auto [q, r] = Poly::divmod(c[i], s.diag[i]);
      if (!r.is_zero()) return std::nullopt;
      if (i < m.cols()) y[i] = q;
    } else if (!c[i].is_zero()) {
      return std::nullopt;
    }
  }
  return s.q->apply(y);
}

// ---------------------------------------------------------------------------
// Finitely generated module decompositions.

struct ModuleDecomp {
  int free_rank = 0;
  std::vector<Poly> torsion;          // nonunit invariant factors, d_i | d_{i+1}
  std::vector<std::string> warnings;  // factors that are not powers of H

  bool operator==(const ModuleDecomp& o) const {
    return free_rank == o.free_rank && torsion == o.torsion;
  }

  bool is_free() const { return torsion.empty(); }
};

inline void note_non_h_power(ModuleDecomp& d, const Poly& f) {
  if (!f.is_h_power()) d.warnings.push_back("non-H-power invariant factor: " + f.str());
}

/// Decomposition of R^g / (column span of A), where A is g x r.
inline ModuleDecomp cokernel_decomp(const PolyMatrix& a) {
  SnfResult s = snf(a);
  ModuleDecomp d;
  int killed = 0;
  for (const auto& f : s.diag) {
    if (f.is_zero()) continue;
    ++killed;
    if (!f.is_unit()) {
      note_non_h_power(d, f);
      d.torsion.push_back(f);
    }
  }
  d.free_rank = a.rows() - killed;
  return d;
}

/// presentation: relations as rows acting on `generators` columns.
inline ModuleDecomp module_decompose(const PolyMatrix& presentation, int generators) {
  if (presentation.cols() != generators)
    throw std::invalid_argument("module_decompose: column count != generators");
  return cokernel_decomp(presentation.transpose());
}

/// Tor_1 over the PID F2[H]: free parts contribute nothing, and
/// R/(f) against R/(g) contributes R/(gcd(f, g)).
inline ModuleDecomp tor1(const ModuleDecomp& a, const ModuleDecomp& b) {
  ModuleDecomp t;
  t.free_rank = 0;
  for (const auto& f : a.torsion) {
    for (const auto& g : b.torsion) {
      Poly d = Poly::gcd(f, g);
      if (!d.is_unit()) {
        t.torsion.push_back(d);
        note_non_h_power(t, d);
      }
    }
  }
  std::sort(t.torsion.begin(), t.torsion.end());
  return t;
}

}  // namespace bnh
