#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Arithmetic in F2[H], the ground ring of the Bar-Natan theory.
// Coefficients are bits, so addition is XOR and multiplication is a
// carry-less convolution.  Degrees stay small in practice (a few dozen),
// so a dense bit vector in 64-bit limbs is both exact and fast.

namespace bnh {

class Poly {
 public:
  Poly() = default;

  static Poly zero() { return Poly(); }

  static Poly one() { return h_power(0); }

  /// The monomial H^k.
  static Poly h_power(int k) {
    Poly p;
    p.set_coeff(k, true);
    return p;
  }

  static Poly h() { return h_power(1); }

  /// Build from a list of exponents with nonzero coefficient, e.g. {0,2} = H^2+1.
  static Poly from_exponents(const std::vector<int>& exps) {
    Poly p;
    for (int e : exps) p.set_coeff(e, !p.coeff(e));
    return p;
  }

  bool is_zero() const { return limbs_.empty(); }
  bool is_one() const { return limbs_.size() == 1 && limbs_[0] == 1; }
  /// The only units of F2[H] are 1.
  bool is_unit() const { return is_one(); }

  /// Degree of the polynomial; -1 stands in for the degree of 0.
  int degree() const {
    if (limbs_.empty()) return -1;
    uint64_t top = limbs_.back();
    int bit = 63 - __builtin_clzll(top);
    return static_cast<int>((limbs_.size() - 1) * 64) + bit;
  }

  /// H-adic valuation: index of the lowest nonzero coefficient; -1 for 0.
  int valuation() const {
    if (limbs_.empty()) return -1;
    for (size_t i = 0; i < limbs_.size(); ++i) {
      if (limbs_[i]) return static_cast<int>(i * 64) + __builtin_ctzll(limbs_[i]);
    }
    return -1;
  }

  bool coeff(int i) const {
    if (i < 0) return false;
    size_t limb = static_cast<size_t>(i) / 64;
    if (limb >= limbs_.size()) return false;
    return (limbs_[limb] >> (i % 64)) & 1u;
  }

  void set_coeff(int i, bool value) {
    size_t limb = static_cast<size_t>(i) / 64;
    if (value) {
      if (limb >= limbs_.size()) limbs_.resize(limb + 1, 0);
      limbs_[limb] |= (uint64_t{1} << (i % 64));
    } else {
      if (limb < limbs_.size()) {
        limbs_[limb] &= ~(uint64_t{1} << (i % 64));
        trim();
      }
    }
  }

  /// True iff the polynomial is exactly H^k for some k >= 0.
  bool is_h_power() const {
    return !is_zero() && degree() == valuation();
  }

  Poly& operator+=(const Poly& o) {
    if (o.limbs_.size() > limbs_.size()) limbs_.resize(o.limbs_.size(), 0);
    for (size_t i = 0; i < o.limbs_.size(); ++i) limbs_[i] ^= o.limbs_[i];
    trim();
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) {
    a += b;
    return a;
  }

  /// Multiplication by H^k.
  Poly shifted(int k) const {
    if (is_zero() || k == 0) return *this;
    Poly r;
    int d = degree();
    r.limbs_.assign((static_cast<size_t>(d + k) / 64) + 1, 0);
    for (int i = valuation(); i <= d; ++i) {
      if (coeff(i)) r.limbs_[(i + k) / 64] ^= (uint64_t{1} << ((i + k) % 64));
    }
    return r;
  }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    Poly r;
    int da = a.degree();
    for (int i = a.valuation(); i <= da; ++i) {
      if (a.coeff(i)) r += b.shifted(i);
    }
    return r;
  }

  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  /// Euclidean division: returns (quotient, remainder) with a = q*b + r,
  /// deg r < deg b.  b must be nonzero.
  static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    Poly q, r = a;
    int db = b.degree();
    while (!r.is_zero() && r.degree() >= db) {
      int shift = r.degree() - db;
      q.set_coeff(shift, true);
      r += b.shifted(shift);
    }
    return {q, r};
  }

  static Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
      Poly r = divmod(a, b).second;
      a = b;
      b = r;
    }
    return a;  // leading coefficient is always 1 over F2, so monic already
  }

  /// Exact division; asserts divisibility in debug builds.
  static Poly div_exact(const Poly& a, const Poly& b) {
    auto [q, r] = divmod(a, b);
    return r.is_zero() ? q : Poly();
  }

  bool divides(const Poly& other) const {
    if (is_zero()) return other.is_zero();
    return divmod(other, *this).second.is_zero();
  }

  /// Evaluation at H = 0: the constant coefficient.
  bool eval_at_zero() const { return coeff(0); }

  /// Evaluation at H = 1: parity of the number of terms.
  bool eval_at_one() const {
    uint64_t parity = 0;
    for (uint64_t l : limbs_) parity ^= l;
    return __builtin_popcountll(parity) & 1;
  }

  std::vector<int> exponents() const {
    std::vector<int> out;
    int d = degree();
    for (int i = 0; i <= d; ++i) {
      if (coeff(i)) out.push_back(i);
    }
    return out;
  }

  /// Human-readable form, e.g. "H^2+H+1"; "0" for the zero polynomial.
  std::string str() const {
    if (is_zero()) return "0";
    std::string s;
    auto exps = exponents();
    for (auto it = exps.rbegin(); it != exps.rend(); ++it) {
      if (!s.empty()) s += "+";
      if (*it == 0)
        s += "1";
      else if (*it == 1)
        s += "H";
      else
        s += "H^" + std::to_string(*it);
    }
    return s;
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.limbs_ == b.limbs_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  // Degree-then-limb order; gives a deterministic total order for pivoting.
  friend bool operator<(const Poly& a, const Poly& b) {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    return a.limbs_ < b.limbs_;
  }

 private:
  void trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
  }

  std::vector<uint64_t> limbs_;
};

}  // namespace bnh
