#pragma once

#include <cstdint>
#include <optional>
#include <vector>

// Dense linear algebra over F2 with bit-packed rows.  Used for the H=0 and
// H=1 specializations, where the coefficient ring collapses to a field.

namespace bnh {

class F2Vector {
 public:
  F2Vector() : size_(0) {}
  explicit F2Vector(int n) : size_(n), limbs_((n + 63) / 64, 0) {}

  int size() const { return size_; }

  bool get(int i) const { return (limbs_[i / 64] >> (i % 64)) & 1u; }

  void set(int i, bool v) {
    if (v)
      limbs_[i / 64] |= (uint64_t{1} << (i % 64));
    else
      limbs_[i / 64] &= ~(uint64_t{1} << (i % 64));
  }

  void operator^=(const F2Vector& o) {
    for (size_t k = 0; k < limbs_.size(); ++k) limbs_[k] ^= o.limbs_[k];
  }

  bool is_zero() const {
    for (uint64_t l : limbs_)
      if (l) return false;
    return true;
  }

  int lowest_set() const {
    for (size_t k = 0; k < limbs_.size(); ++k)
      if (limbs_[k]) return static_cast<int>(k * 64) + __builtin_ctzll(limbs_[k]);
    return -1;
  }

  friend bool operator==(const F2Vector& a, const F2Vector& b) {
    return a.size_ == b.size_ && a.limbs_ == b.limbs_;
  }

 private:
  int size_;
  std::vector<uint64_t> limbs_;
};

class F2Matrix {
 public:
  F2Matrix() : rows_(0), cols_(0) {}
  F2Matrix(int rows, int cols) : rows_(rows), cols_(cols), row_(rows, F2Vector(cols)) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  bool get(int i, int j) const { return row_[i].get(j); }
  void set(int i, int j, bool v) { row_[i].set(j, v); }
  const F2Vector& row(int i) const { return row_[i]; }
  F2Vector& row(int i) { return row_[i]; }

  void append_row(const F2Vector& r) {
    row_.push_back(r);
    ++rows_;
  }

  int rank() const {
    F2Matrix w = *this;
    return w.reduce();
  }

  /// In-place row echelon reduction; returns the rank.
  int reduce() {
    int r = 0;
    for (int c = 0; c < cols_ && r < rows_; ++c) {
      int piv = -1;
      for (int i = r; i < rows_; ++i) {
        if (row_[i].get(c)) {
          piv = i;
          break;
        }
      }
      if (piv < 0) continue;
      std::swap(row_[r], row_[piv]);
      for (int i = 0; i < rows_; ++i) {
        if (i != r && row_[i].get(c)) row_[i] ^= row_[r];
      }
      ++r;
    }
    return r;
  }

  F2Vector apply(const F2Vector& x) const {
    F2Vector y(rows_);
    for (int i = 0; i < rows_; ++i) {
      // dot product over F2
      int parity = 0;
      for (int j = 0; j < cols_; ++j) parity ^= (row_[i].get(j) & x.get(j));
      y.set(i, parity);
    }
    return y;
  }

  /// Solve M x = b; returns nullopt when inconsistent.
  std::optional<F2Vector> solve(const F2Vector& b) const {
    // Gaussian elimination on the augmented matrix.
    F2Matrix aug(rows_, cols_ + 1);
    for (int i = 0; i < rows_; ++i) {
      aug.row_[i] = F2Vector(cols_ + 1);
      for (int j = 0; j < cols_; ++j) aug.set(i, j, get(i, j));
      aug.set(i, cols_, b.get(i));
    }
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < cols_ && r < rows_; ++c) {
      int piv = -1;
      for (int i = r; i < rows_; ++i)
        if (aug.get(i, c)) {
          piv = i;
          break;
        }
      if (piv < 0) continue;
      std::swap(aug.row_[r], aug.row_[piv]);
      for (int i = 0; i < rows_; ++i)
        if (i != r && aug.get(i, c)) aug.row_[i] ^= aug.row_[r];
      pivot_col.push_back(c);
      ++r;
    }
    for (int i = r; i < rows_; ++i)
      if (aug.get(i, cols_)) return std::nullopt;
    F2Vector x(cols_);
    for (int i = 0; i < r; ++i) x.set(pivot_col[i], aug.get(i, cols_));
    return x;
  }

  /// Basis of the null space, as vectors of length cols().
  std::vector<F2Vector> kernel() const {
    F2Matrix w = *this;
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < cols_ && r < rows_; ++c) {
      int piv = -1;
      for (int i = r; i < rows_; ++i)
        if (w.get(i, c)) {
          piv = i;
          break;
        }
      if (piv < 0) continue;
      std::swap(w.row_[r], w.row_[piv]);
      for (int i = 0; i < rows_; ++i)
        if (i != r && w.get(i, c)) w.row_[i] ^= w.row_[r];
      pivot_col.push_back(c);
      ++r;
    }
    std::vector<bool> is_pivot(cols_, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<F2Vector> basis;
    for (int c = 0; c < cols_; ++c) {
      if (is_pivot[c]) continue;
      F2Vector v(cols_);
      v.set(c, true);
      for (int i = 0; i < r; ++i) {
        if (w.get(i, c)) v.set(pivot_col[i], true);
      }
      basis.push_back(v);
    }
    return basis;
  }

 private:
  int rows_, cols_;
  std::vector<F2Vector> row_;
};

}  // namespace bnh
