#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tcf/rational.hpp"

namespace tcf {

/// The fixed variable universe. Upper-case X..N are the six substitution
/// variables of the quadratic system, lower-case x,y,z are curve coordinates,
/// s,t are the two cube-root generators, a1..a7 and b1..b7 are the
/// indeterminate combination parameters.
enum class Var : int {
  X = 0, Y, Z, W, M, N,
  x, y, z,
  s, t,
  a1, a2, a3, a4, a5, a6, a7,
  b1, b2, b3, b4, b5, b6, b7,
};

inline constexpr int kVarCount = 25;

const char* var_name(Var v);
std::optional<Var> var_from_name(const std::string& name);

/// Exponent vector over the fixed universe.
struct Monomial {
  std::array<std::uint8_t, kVarCount> e{};

  int degree() const;
  bool divides(const Monomial& m) const;
  Monomial operator*(const Monomial& m) const;
  /// Pre: m.divides(*this).
  Monomial operator/(const Monomial& m) const;
  bool operator==(const Monomial& m) const { return e == m.e; }
};

/// Graded lexicographic order, total degree first, then X > Y > ... (earlier
/// universe index wins ties). Arranged as "greater" so that map iteration
/// starts at the leading term.
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sparse multivariate polynomial with exact rational coefficients.
/// The term map is kept free of explicit zeros, so equality is structural.
class MultiPoly {
 public:
  using TermMap = std::map<Monomial, Rational, GrlexGreater>;

  MultiPoly() = default;
  MultiPoly(const Rational& c);
  MultiPoly(long c) : MultiPoly(Rational(c)) {}
  static MultiPoly variable(Var v);
  static MultiPoly monomial(const Monomial& m, const Rational& c);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Pre: is_constant(). The zero polynomial evaluates to 0.
  Rational constant_value() const;

  /// Total degree; -1 for the zero polynomial.
  int total_degree() const;
  int degree_in(Var v) const;
  /// Coefficient of v^k, a polynomial in the remaining variables.
  MultiPoly coeff_of(Var v, int k) const;
  std::set<Var> support() const;

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator-() const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  bool operator==(const MultiPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  MultiPoly scaled(const Rational& c) const;
  MultiPoly pow(unsigned k) const;

  /// Pre: every variable in the support is assigned.
  Rational eval(const std::map<Var, Rational>& point) const;
  /// Replaces each mapped variable by the given polynomial.
  MultiPoly substitute(const std::map<Var, MultiPoly>& repl) const;

  const TermMap& terms() const { return terms_; }
  Rational coeff(const Monomial& m) const;
  /// Pre: nonzero.
  const Monomial& leading_monomial() const;
  const Rational& leading_coeff() const;

  /// Scalar multiple with integer coefficients, content 1 and positive
  /// leading coefficient; zero stays zero.
  MultiPoly primitive_normalized() const;

  /// Human-readable canonical form, e.g. "3*X^2 - 1/2*Y*W".
  std::string str() const;

 private:
  void insert_term(const Monomial& m, const Rational& c);
  TermMap terms_;
};

inline MultiPoly operator*(const Rational& c, const MultiPoly& p) { return p.scaled(c); }

using PolyMatrix = std::vector<std::vector<MultiPoly>>;

/// Sylvester matrix of f and g with respect to v at the *stated* degrees
/// (deg_f + deg_g rows). Stated degrees may exceed the true ones, in which
/// case the top coefficient entries are zero polynomials.
/// Pre: stated degrees are >= the true degrees and deg_f + deg_g > 0.
PolyMatrix sylvester_matrix(const MultiPoly& f, const MultiPoly& g, Var v,
                            int deg_f, int deg_g);

/// Cofactor expansion; intended for the small matrices this artifact builds.
MultiPoly determinant(const PolyMatrix& m);

/// Resultant at the true degrees in v.
MultiPoly resultant(const MultiPoly& f, const MultiPoly& g, Var v);

/// Resultant of the Sylvester matrix at the stated formal degrees.
MultiPoly resultant_formal(const MultiPoly& f, const MultiPoly& g, Var v,
                           int deg_f, int deg_g);

/// Closed form for the determinant of the 4x4 Sylvester block
///   [a1 b1 c1 0; 0 a1 b1 c1; a2 b2 c2 0; 0 a2 b2 c2],
/// namely (a1*c2 - a2*c1)^2 + (a2*b1 - a1*b2)*(b1*c2 - b2*c1).
MultiPoly sylvester22_det(const MultiPoly& a1, const MultiPoly& b1, const MultiPoly& c1,
                          const MultiPoly& a2, const MultiPoly& b2, const MultiPoly& c2);

/// Exact quotient f/g, or nullopt when g does not divide f. Pre: g nonzero.
std::optional<MultiPoly> divide_exact(const MultiPoly& f, const MultiPoly& g);

/// Multivariate gcd (primitive pseudo-remainder sequences), normalized to
/// integer primitive form with positive leading coefficient. gcd(0,0) = 0.
MultiPoly gcd(const MultiPoly& f, const MultiPoly& g);
MultiPoly gcd_many(const std::vector<MultiPoly>& polys);

}  // namespace tcf
