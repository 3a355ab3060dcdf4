#pragma once

#include <array>
#include <optional>
#include <vector>

#include "tcf/poly.hpp"
#include "tcf/rational.hpp"

namespace tcf {

/// Point of P^2 (3 coordinates) or P^5 (6 coordinates) with integer
/// coordinates, gcd 1 and first nonzero coordinate positive.
class ProjectivePoint {
 public:
  /// Canonicalizes; rejects the zero vector and sizes other than 3 or 6.
  static ProjectivePoint from_integers(std::vector<Integer> coords);
  static ProjectivePoint from_rationals(const std::vector<Rational>& coords);

  const std::vector<Integer>& coords() const { return coords_; }
  std::size_t size() const { return coords_.size(); }
  const Integer& operator[](std::size_t i) const { return coords_[i]; }
  bool operator==(const ProjectivePoint& o) const { return coords_ == o.coords_; }
  bool operator<(const ProjectivePoint& o) const;  // deterministic listing order
  std::string str() const;

 private:
  explicit ProjectivePoint(std::vector<Integer> coords) : coords_(std::move(coords)) {}
  std::vector<Integer> coords_;
};

/// Homogeneous cubic in x, y, z. Coefficients A1..A10 follow the frozen
/// monomial order
///   x^3, y^3, z^3, x^2*y, x^2*z, y^2*x, y^2*z, z^2*x, z^2*y, x*y*z.
class TernaryCubicForm {
 public:
  TernaryCubicForm() = default;
  explicit TernaryCubicForm(std::array<Rational, 10> a) : a_(std::move(a)) {}
  static TernaryCubicForm diagonal(const Integer& a1, const Integer& a2, const Integer& a3);

  const std::array<Rational, 10>& coeffs() const { return a_; }
  const Rational& operator[](std::size_t i) const { return a_[i]; }  // 0-based
  bool is_zero() const;

  Rational eval(const Rational& x, const Rational& y, const Rational& z) const;
  Integer eval(const Integer& x, const Integer& y, const Integer& z) const;  // pre: integer coeffs
  Rational eval(const ProjectivePoint& p) const;  // pre: 3 coordinates

  /// Gradient (dF/dx, dF/dy, dF/dz) at an integer point.
  /// Pre: integer coefficients.
  std::array<Integer, 3> gradient(const Integer& x, const Integer& y, const Integer& z) const;

  /// Scalar multiple with integer coefficients, gcd 1, first nonzero
  /// coefficient positive. Pre: not the zero form.
  TernaryCubicForm normalized() const;
  /// True when already in normalized shape.
  bool is_normalized() const;

  /// (A1, A2, A3) when A4..A10 all vanish and A1*A2*A3 != 0, for the
  /// normalized form.
  std::optional<std::array<Integer, 3>> diagonal_coefficients() const;

  /// Unit-vector zero forced by a vanishing pure-cube coefficient
  /// (A1 = 0 gives (1:0:0), etc.), if any.
  std::optional<ProjectivePoint> unit_point() const;

  MultiPoly to_poly() const;  // in variables x, y, z
  bool operator==(const TernaryCubicForm& o) const { return a_ == o.a_; }

 private:
  std::array<Rational, 10> a_{};
};

/// Homogeneous binary cubic a*u^3 + b*u^2*v + c*u*v^2 + d*v^3.
class BinaryCubicForm {
 public:
  BinaryCubicForm(Rational a, Rational b, Rational c, Rational d);
  const std::array<Rational, 4>& coeffs() const { return a_; }
  bool is_zero() const;
  Rational eval(const Rational& u, const Rational& v) const;

  /// A projective rational root (u:v) with gcd(u,v) = 1 and v > 0 (or the
  /// root at infinity (1,0)), or nullopt when the form has none. Among
  /// several roots the one of least height (then least u) is returned, so
  /// the answer is deterministic.
  /// Pre: not the zero form. Rational root theorem on the primitivized
  /// integer coefficients.
  std::optional<std::pair<Integer, Integer>> rational_root() const;

 private:
  std::array<Rational, 4> a_;
};

/// The three restrictions of a ternary cubic to a vanishing coordinate,
/// each a binary cubic in the two surviving variables:
///   z = 0: (A1, A4, A6, A2) in (x, y)
///   y = 0: (A1, A5, A8, A3) in (x, z)
///   x = 0: (A2, A7, A9, A3) in (y, z)
std::array<BinaryCubicForm, 3> boundary_restrictions(const TernaryCubicForm& f);

/// Completes a root (u:v) of boundary restriction index k (0: z=0, 1: y=0,
/// 2: x=0) to a point of P^2 by inserting the zero coordinate.
ProjectivePoint embed_boundary_root(int restriction_index,
                                    const std::pair<Integer, Integer>& root);

/// Quadratic form in the six variables X, Y, Z, W, M, N, stored as a
/// symmetric 6x6 rational matrix.
class QuadraticForm6 {
 public:
  QuadraticForm6() = default;

  /// Adds c * v_i * v_j (i, j are variable indices 0..5, order irrelevant).
  void add_term(int i, int j, const Rational& c);
  const Rational& entry(int i, int j) const { return m_[i][j]; }

  Rational eval(const std::array<Rational, 6>& v) const;
  Rational eval(const ProjectivePoint& p) const;  // pre: 6 coordinates
  bool is_zero() const;

  MultiPoly to_poly() const;  // in X, Y, Z, W, M, N
  /// Pre: p is a polynomial of degree <= 2 using only X..N, homogeneous of
  /// degree 2 or zero.
  static QuadraticForm6 from_poly(const MultiPoly& p);

  bool operator==(const QuadraticForm6& o) const { return m_ == o.m_; }

 private:
  std::array<std::array<Rational, 6>, 6> m_{};
};

}  // namespace tcf
