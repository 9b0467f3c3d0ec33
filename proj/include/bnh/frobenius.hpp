#pragma once

#include <array>
#include <stdexcept>
#include <string>

#include "bnh/poly.hpp"

// The rank-2 Frobenius algebra A = R[X]/(X^2 - e1*X + e2) over R = F2[H],
// with basis {1, X}.  The Bar-Natan specialization is e1 = H, e2 = 0; the
// localized theory takes e1 = 1, e2 = 0; a deformation {l1, l2} takes
// e1 = l1+l2, e2 = l1*l2.
//
// Gradings: q(1) = 0, q(X) = 2, q(H) = 2, so multiplication by H is a
// bidegree (0,2) map.  The merge m is then q-degree 0 and the comultiplication
// is q-degree +2; the cube construction absorbs the difference into its
// per-vertex shifts.

namespace bnh {

// Basis labels for circle decorations.
enum : int { kLabelOne = 0, kLabelX = 1 };

/// Element of A as coefficients (c0, c1) meaning c0*1 + c1*X.
struct AlgElt {
  Poly c0, c1;

  bool is_zero() const { return c0.is_zero() && c1.is_zero(); }

  AlgElt& operator+=(const AlgElt& o) {
    c0 += o.c0;
    c1 += o.c1;
    return *this;
  }
};

struct FrobeniusTheory {
  Poly e1, e2;

  static FrobeniusTheory bar_natan() { return {Poly::h(), Poly::zero()}; }
  static FrobeniusTheory localized() { return {Poly::one(), Poly::zero()}; }
  static FrobeniusTheory sigma(bool l1, bool l2) {
    FrobeniusTheory t;
    if (l1 != l2) t.e1 = Poly::one();
    if (l1 && l2) t.e2 = Poly::one();
    return t;
  }

  bool is_bar_natan() const { return e1 == Poly::h() && e2.is_zero(); }

  /// Entries of A never involve H when e1, e2 are constants.
  bool constant_coefficients() const { return e1.degree() <= 0 && e2.degree() <= 0; }

  /// m on basis labels: the quotient-ring product.
  AlgElt multiply(int a, int b) const {
    if (a == kLabelOne && b == kLabelOne) return {Poly::one(), Poly::zero()};
    if (a == kLabelX && b == kLabelX) return {e2, e1};  // X^2 = e1*X - e2 (char 2)
    return {Poly::zero(), Poly::one()};
  }

  /// comul on basis labels, as coefficients comul(a)[i][j] of i (x) j.
  std::array<std::array<Poly, 2>, 2> comultiply(int a) const {
    std::array<std::array<Poly, 2>, 2> out;
    if (a == kLabelOne) {
      // comul(1) = X(x)1 + 1(x)X + e1*(1(x)1)
      out[kLabelX][kLabelOne] = Poly::one();
      out[kLabelOne][kLabelX] = Poly::one();
      out[kLabelOne][kLabelOne] = e1;
    } else {
      // comul(X) = X(x)X + e2*(1(x)1)
      out[kLabelX][kLabelX] = Poly::one();
      out[kLabelOne][kLabelOne] = e2;
    }
    return out;
  }

  Poly counit(int a) const { return a == kLabelX ? Poly::one() : Poly::zero(); }

  AlgElt unit() const { return {Poly::one(), Poly::zero()}; }

  /// dot(a) = X * a.
  AlgElt dot(int a) const { return multiply(kLabelX, a); }

  AlgElt dot(const AlgElt& v) const {
    AlgElt r;
    // X * (c0 + c1 X) = c0 X + c1 X^2 = c1 e2 + (c0 + c1 e1) X
    r.c0 = v.c1 * e2;
    r.c1 = v.c0 + v.c1 * e1;
    return r;
  }

  /// Pairing <a, b> = counit(a*b).
  Poly pairing(int a, int b) const {
    AlgElt p = multiply(a, b);
    return p.c1;  // counit extracts the X coefficient
  }

  /// (m o comul) acts on A; on the basis it is multiplication by e1.
  AlgElt genus_step(const AlgElt& v) const { return {v.c0 * e1, v.c1 * e1}; }

  /// Evaluation of a closed connected genus-g surface with d dots:
  /// counit((m o comul)^g (X^d * 1)).
  Poly closed_surface_eval(int genus, int dots) const {
    if (genus < 0 || dots < 0) throw std::invalid_argument("closed_surface_eval: negative input");
    AlgElt v = unit();
    for (int i = 0; i < dots; ++i) v = dot(v);
    for (int g = 0; g < genus; ++g) v = genus_step(v);
    return v.c1;
  }
};

}  // namespace bnh
