#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "bnh/poly.hpp"

// Sparse matrices over F2[H].  Stored row-major: only nonzero entries are kept.

namespace bnh {

class PolyMatrix {
 public:
  PolyMatrix() : rows_(0), cols_(0) {}
  PolyMatrix(int rows, int cols) : rows_(rows), cols_(cols), row_(rows) {}

  static PolyMatrix identity(int n) {
    PolyMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, Poly::one());
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  const Poly& at(int i, int j) const {
    static const Poly kZero;
    auto it = row_[i].find(j);
    return it == row_[i].end() ? kZero : it->second;
  }

  void set(int i, int j, Poly v) {
    if (v.is_zero())
      row_[i].erase(j);
    else
      row_[i][j] = std::move(v);
  }

  void add_to(int i, int j, const Poly& v) {
    if (v.is_zero()) return;
    auto it = row_[i].find(j);
    if (it == row_[i].end()) {
      row_[i].emplace(j, v);
    } else {
      it->second += v;
      if (it->second.is_zero()) row_[i].erase(it);
    }
  }

  const std::map<int, Poly>& row(int i) const { return row_[i]; }

  bool is_zero() const {
    for (const auto& r : row_)
      if (!r.empty()) return false;
    return true;
  }

  size_t nnz() const {
    size_t n = 0;
    for (const auto& r : row_) n += r.size();
    return n;
  }

  /// row_i += f * row_k
  void row_add(int i, int k, const Poly& f) {
    if (f.is_zero()) return;
    for (const auto& [j, v] : row_[k]) add_to(i, j, f * v);
  }

  /// col_j += f * col_l   (linear scan over rows)
  void col_add(int j, int l, const Poly& f) {
    if (f.is_zero()) return;
    for (int i = 0; i < rows_; ++i) {
      auto it = row_[i].find(l);
      if (it != row_[i].end()) add_to(i, j, f * it->second);
    }
  }

  void swap_rows(int i, int k) {
    if (i != k) std::swap(row_[i], row_[k]);
  }

  void swap_cols(int j, int l) {
    if (j == l) return;
    for (int i = 0; i < rows_; ++i) {
      auto a = row_[i].find(j), b = row_[i].find(l);
      bool ha = a != row_[i].end(), hb = b != row_[i].end();
      if (!ha && !hb) continue;
      if (ha && hb) {
        std::swap(a->second, b->second);
      } else if (ha) {
        Poly v = a->second;
        row_[i].erase(a);
        row_[i][l] = std::move(v);
      } else {
        Poly v = b->second;
        row_[i].erase(b);
        row_[i][j] = std::move(v);
      }
    }
  }

  PolyMatrix transpose() const {
    PolyMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (const auto& [j, v] : row_[i]) t.row_[j][i] = v;
    return t;
  }

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("PolyMatrix: shape mismatch");
    PolyMatrix c(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i) {
      for (const auto& [k, av] : a.row_[i]) {
        for (const auto& [j, bv] : b.row_[k]) c.add_to(i, j, av * bv);
      }
    }
    return c;
  }

  friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw std::invalid_argument("PolyMatrix: shape mismatch");
    PolyMatrix c = a;
    for (int i = 0; i < b.rows_; ++i)
      for (const auto& [j, v] : b.row_[i]) c.add_to(i, j, v);
    return c;
  }

  /// Matrix-vector product M * x.
  std::vector<Poly> apply(const std::vector<Poly>& x) const {
    if (static_cast<int>(x.size()) != cols_)
      throw std::invalid_argument("PolyMatrix::apply: size mismatch");
    std::vector<Poly> y(rows_);
    for (int i = 0; i < rows_; ++i) {
      for (const auto& [j, v] : row_[i]) y[i] += v * x[j];
    }
    return y;
  }

  std::vector<Poly> column(int j) const {
    std::vector<Poly> c(rows_);
    for (int i = 0; i < rows_; ++i) c[i] = at(i, j);
    return c;
  }

  void set_column(int j, const std::vector<Poly>& c) {
    for (int i = 0; i < rows_; ++i) set(i, j, c[i]);
  }

  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.row_ == b.row_;
  }
  friend bool operator!=(const PolyMatrix& a, const PolyMatrix& b) { return !(a == b); }

 private:
  int rows_, cols_;
  std::vector<std::map<int, Poly>> row_;
};

inline std::vector<Poly> add_vectors(std::vector<Poly> a, const std::vector<Poly>& b) {
  for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

inline bool is_zero_vector(const std::vector<Poly>& v) {
  for (const auto& p : v)
    if (!p.is_zero()) return false;
  return true;
}

}  // namespace bnh
