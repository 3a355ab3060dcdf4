#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tcf/forms.hpp"
#include "tcf/rational.hpp"

namespace tcf {

/// Element of the commutative algebra Q[s,t]/(s^3 - A1, t^3 - A2), stored as
/// nine rational coordinates over the monomial basis {s^i t^j : 0 <= i,j <= 2}
/// with the defining pair (A1, A2) attached.  Arithmetic between elements of
/// algebras with different defining pairs is rejected.
///
/// The algebra need not be a field, or even reduced: when A1 is a perfect
/// cube, s - cbrt(A1) is a zero divisor.  Inversion is therefore partial.
class RadicalAlgebraElement {
 public:
  /// The zero element of the algebra for the pair (a1, a2).
  /// Pre: a1 != 0 and a2 != 0.
  RadicalAlgebraElement(const Integer& a1, const Integer& a2);

  static RadicalAlgebraElement constant(const Integer& a1, const Integer& a2,
                                        const Rational& c);
  static RadicalAlgebraElement generator_s(const Integer& a1,
                                           const Integer& a2);
  static RadicalAlgebraElement generator_t(const Integer& a1,
                                           const Integer& a2);

  const Integer& a1() const { return a1_; }
  const Integer& a2() const { return a2_; }

  /// Coefficient of s^i t^j.  Pre: 0 <= i,j <= 2.
  const Rational& coord(int i, int j) const;
  void set_coord(int i, int j, const Rational& c);

  bool is_zero() const;
  /// True when only the s^0 t^0 coordinate may be nonzero.
  bool is_rational() const;
  /// Pre: is_rational().
  Rational rational_value() const;

  RadicalAlgebraElement operator+(const RadicalAlgebraElement& o) const;
  RadicalAlgebraElement operator-(const RadicalAlgebraElement& o) const;
  RadicalAlgebraElement operator-() const;
  RadicalAlgebraElement operator*(const RadicalAlgebraElement& o) const;
  RadicalAlgebraElement scaled(const Rational& c) const;
  bool operator==(const RadicalAlgebraElement& o) const;
  bool operator!=(const RadicalAlgebraElement& o) const { return !(*this == o); }

  /// Multiplicative inverse, absent when the element is a zero divisor or
  /// zero.  Found by solving the nine-dimensional multiplication system, so
  /// it is exact and total over the invertible elements.
  std::optional<RadicalAlgebraElement> inverse() const;

  /// Plain substitution s = s_val, t = t_val.  Meaningful when the chosen
  /// values satisfy s_val^3 = A1 and t_val^3 = A2 (the caller picks the
  /// branch); the function itself does not check this.
  Rational eval(const Rational& s_val, const Rational& t_val) const;

  std::string str() const;

 private:
  Integer a1_, a2_;
  std::array<Rational, 9> c_{};  // index 3*i + j for s^i t^j
};

inline RadicalAlgebraElement operator*(const Rational& c,
                                       const RadicalAlgebraElement& e) {
  return e.scaled(c);
}

/// Point with coordinates in the cube-root algebra.  All three coordinates
/// must share one defining pair; algebra_point checks this.
struct AlgebraPoint {
  RadicalAlgebraElement x, y, z;
};

/// Pre: the three elements share the same defining pair.
AlgebraPoint algebra_point(const RadicalAlgebraElement& x,
                           const RadicalAlgebraElement& y,
                           const RadicalAlgebraElement& z);

/// Diagonal ternary cubic A1 x^3 + A2 y^3 + A3 z^3 with nonzero integer
/// coefficients, stored cube-free with overall gcd 1.  The factory reduces
/// each entry by its cube part and divides out the common gcd; both moves are
/// scalings that do not change the curve up to equivalence.
class DiagonalCubic {
 public:
  /// Pre: a1, a2, a3 all nonzero.
  static DiagonalCubic make(const Integer& a1, const Integer& a2,
                            const Integer& a3);

  const Integer& a1() const { return a_[0]; }
  const Integer& a2() const { return a_[1]; }
  const Integer& a3() const { return a_[2]; }
  Integer product() const { return a_[0] * a_[1] * a_[2]; }

  TernaryCubicForm form() const;

  bool operator==(const DiagonalCubic& o) const { return a_ == o.a_; }
  bool operator<(const DiagonalCubic& o) const { return a_ < o.a_; }

  std::string str() const;

 private:
  DiagonalCubic() = default;
  std::array<Integer, 3> a_;
};

/// Short Weierstrass curve Y^2 = X^3 + a X + b over Q.
struct WeierstrassCurve {
  Rational a, b;

  Rational discriminant() const;  // -16 (4 a^3 + 27 b^2)
  bool operator==(const WeierstrassCurve& o) const {
    return a == o.a && b == o.b;
  }
};

/// Affine curve point or the point at infinity, kept as an explicit variant
/// rather than a coordinate convention.
struct CurvePoint {
  static CurvePoint infinity();
  static CurvePoint affine(const Rational& x, const Rational& y);

  bool infinite = false;
  Rational x, y;
};

bool curve_contains(const WeierstrassCurve& c, const Rational& x,
                    const Rational& y);
/// The point at infinity lies on every short Weierstrass curve.
bool curve_contains(const WeierstrassCurve& c, const CurvePoint& p);

/// The Jacobian of A1 x^3 + A2 y^3 + A3 z^3 = 0, namely
/// Y^2 = X^3 - 432 (A1 A2 A3)^2.  Depends on the coefficients only through
/// the square of their product.
WeierstrassCurve jacobian_curve(const DiagonalCubic& d);

using AlgebraMatrix = std::array<std::array<RadicalAlgebraElement, 3>, 3>;

/// Matrix of the linear map carrying a curve point (x, y, z) to the
/// Weierstrass side: X = -9 A3 z, Y = 27 A3 (s x - t y),
/// Z = (3/4)(s x + t y), where s, t are the algebra generators standing for
/// the cube roots of A1 and A2.
AlgebraMatrix forward_matrix(const DiagonalCubic& d);

/// Exact inverse of forward_matrix in the algebra:
/// x = (Y + 36 A3 Z) / (54 s A3), y = (36 A3 Z - Y) / (54 t A3),
/// z = -X / (9 A3).  The generator inverses exist for every admissible pair
/// (1/s = s^2 / A1), so the entries are always defined.
AlgebraMatrix inverse_matrix(const DiagonalCubic& d);

/// Matrix-vector application over the algebra.
/// Pre: the matrix entries and the point share one defining pair.
AlgebraPoint apply_matrix(const AlgebraMatrix& m, const AlgebraPoint& p);

/// forward_matrix applied to a point of the cubic.
/// Pre: p has the defining pair of d and satisfies
/// A1 x^3 + A2 y^3 + A3 z^3 = 0 in the algebra.
AlgebraPoint selmer_point_map(const DiagonalCubic& d, const AlgebraPoint& p);

/// inverse_matrix applied to an image triple; no curve membership is
/// required.  Pre: the defining pairs match.
AlgebraPoint selmer_point_inverse(const DiagonalCubic& d,
                                  const AlgebraPoint& img);

/// Affine Weierstrass coordinates of the image of p after the scaling that
/// lands on jacobian_curve(d): first (X, Y, Z) is scaled to
/// ((st)^2 X, (st)^3 Y, Z), then the pair (X/Z, Y/Z) is returned.  Absent
/// when Z = (3/4)(s x + t y) is not invertible, which is the flex case
/// (for example (1, -1, 0) on x^3 + y^3 + z^3): those points map to the
/// point at infinity.
std::optional<std::pair<RadicalAlgebraElement, RadicalAlgebraElement>>
affine_image(const DiagonalCubic& d, const AlgebraPoint& p);

/// True when the scaled map lands on the given curve identically: writing
/// Xf = -9 A3 (st)^2 z, Yf = 27 A1 A2 A3 (s x - t y), Zf = (3/4)(s x + t y)
/// as polynomials in x, y, z, s, t and reducing s^3 -> A1, t^3 -> A2, the
/// homogeneous defect Yf^2 Zf - Xf^3 - a Xf Zf^2 - b Zf^3 must be an exact
/// polynomial multiple of A1 x^3 + A2 y^3 + A3 z^3.
bool maps_onto_curve(const DiagonalCubic& d, const WeierstrassCurve& c);

/// maps_onto_curve against jacobian_curve(d); the defect is then exactly
/// 729 (A1 A2 A3)^2 times the cubic.
bool verify_curve_identity(const DiagonalCubic& d);

/// All equivalence classes of diagonal cubics whose coefficient product is
/// m up to a cube, one canonical representative per class, sorted.  Classes
/// are taken up to coordinate permutation, per-coordinate rational cube
/// scalings and a global scaling; the canonical representative is the
/// lexicographically least positive cube-free triple with product equal to
/// the cube-free part of |m|, and always has first entry 1.
/// Pre: m != 0.
std::vector<DiagonalCubic> enumerate_diagonal_cubics(const Integer& m);

}  // namespace tcf
