#include "tcf/jacobian.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "tcf/linalg.hpp"
#include "tcf/poly.hpp"

namespace tcf {

namespace {

void require_pair(const RadicalAlgebraElement& a,
                  const RadicalAlgebraElement& b, const char* where) {
  if (a.a1() != b.a1() || a.a2() != b.a2())
    throw precondition_error(std::string(where) +
                             ": defining pairs do not match");
}

Rational pow_rat(const Rational& base, int e) {
  Rational out(1);
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

}  // namespace

RadicalAlgebraElement::RadicalAlgebraElement(const Integer& a1,
                                             const Integer& a2)
    : a1_(a1), a2_(a2) {
  if (a1 == 0 || a2 == 0)
    throw precondition_error("RadicalAlgebraElement: defining pair has a zero");
}

RadicalAlgebraElement RadicalAlgebraElement::constant(const Integer& a1,
                                                      const Integer& a2,
                                                      const Rational& c) {
  RadicalAlgebraElement e(a1, a2);
  e.c_[0] = c;
  return e;
}

RadicalAlgebraElement RadicalAlgebraElement::generator_s(const Integer& a1,
                                                         const Integer& a2) {
  RadicalAlgebraElement e(a1, a2);
  e.c_[3] = 1;
  return e;
}

RadicalAlgebraElement RadicalAlgebraElement::generator_t(const Integer& a1,
                                                         const Integer& a2) {
  RadicalAlgebraElement e(a1, a2);
  e.c_[1] = 1;
  return e;
}

const Rational& RadicalAlgebraElement::coord(int i, int j) const {
  if (i < 0 || i > 2 || j < 0 || j > 2)
    throw precondition_error("coord: basis index out of range");
  return c_[3 * i + j];
}

void RadicalAlgebraElement::set_coord(int i, int j, const Rational& c) {
  if (i < 0 || i > 2 || j < 0 || j > 2)
    throw precondition_error("set_coord: basis index out of range");
  c_[3 * i + j] = c;
}

bool RadicalAlgebraElement::is_zero() const {
  return std::all_of(c_.begin(), c_.end(),
                     [](const Rational& q) { return q == 0; });
}

bool RadicalAlgebraElement::is_rational() const {
  for (int k = 1; k < 9; ++k)
    if (c_[k] != 0) return false;
  return true;
}

Rational RadicalAlgebraElement::rational_value() const {
  if (!is_rational())
    throw precondition_error("rational_value: element is not rational");
  return c_[0];
}

RadicalAlgebraElement RadicalAlgebraElement::operator+(
    const RadicalAlgebraElement& o) const {
  require_pair(*this, o, "operator+");
  RadicalAlgebraElement out(a1_, a2_);
  for (int k = 0; k < 9; ++k) out.c_[k] = c_[k] + o.c_[k];
  return out;
}

RadicalAlgebraElement RadicalAlgebraElement::operator-(
    const RadicalAlgebraElement& o) const {
  require_pair(*this, o, "operator-");
  RadicalAlgebraElement out(a1_, a2_);
  for (int k = 0; k < 9; ++k) out.c_[k] = c_[k] - o.c_[k];
  return out;
}

RadicalAlgebraElement RadicalAlgebraElement::operator-() const {
  RadicalAlgebraElement out(a1_, a2_);
  for (int k = 0; k < 9; ++k) out.c_[k] = -c_[k];
  return out;
}

RadicalAlgebraElement RadicalAlgebraElement::operator*(
    const RadicalAlgebraElement& o) const {
  require_pair(*this, o, "operator*");
  RadicalAlgebraElement out(a1_, a2_);
  const Rational qa1(a1_), qa2(a2_);
  for (int i1 = 0; i1 < 3; ++i1)
    for (int j1 = 0; j1 < 3; ++j1) {
      const Rational& u = c_[3 * i1 + j1];
      if (u == 0) continue;
      for (int i2 = 0; i2 < 3; ++i2)
        for (int j2 = 0; j2 < 3; ++j2) {
          const Rational& v = o.c_[3 * i2 + j2];
          if (v == 0) continue;
          Rational w = u * v;
          int i = i1 + i2, j = j1 + j2;
          if (i >= 3) {
            i -= 3;
            w *= qa1;
          }
          if (j >= 3) {
            j -= 3;
            w *= qa2;
          }
          out.c_[3 * i + j] += w;
        }
    }
  return out;
}

RadicalAlgebraElement RadicalAlgebraElement::scaled(const Rational& c) const {
  RadicalAlgebraElement out(a1_, a2_);
  for (int k = 0; k < 9; ++k) out.c_[k] = c_[k] * c;
  return out;
}

bool RadicalAlgebraElement::operator==(const RadicalAlgebraElement& o) const {
  return a1_ == o.a1_ && a2_ == o.a2_ && c_ == o.c_;
}

std::optional<RadicalAlgebraElement> RadicalAlgebraElement::inverse() const {
  if (is_zero()) return std::nullopt;
  // Column k of the system is the coordinate vector of (*this) * basis_k;
  // a solution of M f = e_0 is an element with (*this) * f = 1.
  QMat m(9, QVec(9, Rational(0)));
  for (int k = 0; k < 9; ++k) {
    RadicalAlgebraElement basis(a1_, a2_);
    basis.c_[k] = 1;
    RadicalAlgebraElement col = *this * basis;
    for (int r = 0; r < 9; ++r) m[r][k] = col.c_[r];
  }
  QVec one(9, Rational(0));
  one[0] = 1;
  auto sol = q_solve(m, one);
  if (!sol) return std::nullopt;
  RadicalAlgebraElement inv(a1_, a2_);
  for (int k = 0; k < 9; ++k) inv.c_[k] = (*sol)[k];
  return inv;
}

Rational RadicalAlgebraElement::eval(const Rational& s_val,
                                     const Rational& t_val) const {
  Rational out(0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      out += c_[3 * i + j] * pow_rat(s_val, i) * pow_rat(t_val, j);
  return out;
}

std::string RadicalAlgebraElement::str() const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const Rational& c = c_[3 * i + j];
      if (c == 0) continue;
      if (!first) os << " + ";
      os << c.get_str();
      if (i > 0) os << "*s" << (i > 1 ? "^2" : "");
      if (j > 0) os << "*t" << (j > 1 ? "^2" : "");
      first = false;
    }
  if (first) os << "0";
  return os.str();
}

AlgebraPoint algebra_point(const RadicalAlgebraElement& x,
                           const RadicalAlgebraElement& y,
                           const RadicalAlgebraElement& z) {
  require_pair(x, y, "algebra_point");
  require_pair(x, z, "algebra_point");
  return AlgebraPoint{x, y, z};
}

DiagonalCubic DiagonalCubic::make(const Integer& a1, const Integer& a2,
                                  const Integer& a3) {
  if (a1 == 0 || a2 == 0 || a3 == 0)
    throw precondition_error("DiagonalCubic: coefficients must be nonzero");
  DiagonalCubic d;
  d.a_ = {cube_free_part(a1).first, cube_free_part(a2).first,
          cube_free_part(a3).first};
  Integer g = gcd(gcd(abs(d.a_[0]), abs(d.a_[1])), abs(d.a_[2]));
  for (auto& a : d.a_) a /= g;
  return d;
}

TernaryCubicForm DiagonalCubic::form() const {
  return TernaryCubicForm::diagonal(a_[0], a_[1], a_[2]);
}

std::string DiagonalCubic::str() const {
  std::ostringstream os;
  os << "(" << a_[0] << ", " << a_[1] << ", " << a_[2] << ")";
  return os.str();
}

Rational WeierstrassCurve::discriminant() const {
  return Rational(-16) * (Rational(4) * a * a * a + Rational(27) * b * b);
}

CurvePoint CurvePoint::infinity() {
  CurvePoint p;
  p.infinite = true;
  return p;
}

CurvePoint CurvePoint::affine(const Rational& x, const Rational& y) {
  CurvePoint p;
  p.x = x;
  p.y = y;
  return p;
}

bool curve_contains(const WeierstrassCurve& c, const Rational& x,
                    const Rational& y) {
  return y * y == x * x * x + c.a * x + c.b;
}

bool curve_contains(const WeierstrassCurve& c, const CurvePoint& p) {
  if (p.infinite) return true;
  return curve_contains(c, p.x, p.y);
}

WeierstrassCurve jacobian_curve(const DiagonalCubic& d) {
  Rational m(d.product());
  return WeierstrassCurve{Rational(0), Rational(-432) * m * m};
}

AlgebraMatrix forward_matrix(const DiagonalCubic& d) {
  const Integer &a1 = d.a1(), &a2 = d.a2();
  const Rational a3(d.a3());
  auto zero = RadicalAlgebraElement(a1, a2);
  auto s = RadicalAlgebraElement::generator_s(a1, a2);
  auto t = RadicalAlgebraElement::generator_t(a1, a2);
  AlgebraMatrix m{{{zero, zero, zero}, {zero, zero, zero}, {zero, zero, zero}}};
  m[0][2] = RadicalAlgebraElement::constant(a1, a2, Rational(-9) * a3);
  m[1][0] = s.scaled(Rational(27) * a3);
  m[1][1] = t.scaled(Rational(-27) * a3);
  m[2][0] = s.scaled(Rational(3, 4));
  m[2][1] = t.scaled(Rational(3, 4));
  return m;
}

AlgebraMatrix inverse_matrix(const DiagonalCubic& d) {
  const Integer &a1 = d.a1(), &a2 = d.a2();
  const Rational a3(d.a3());
  auto zero = RadicalAlgebraElement(a1, a2);
  auto s = RadicalAlgebraElement::generator_s(a1, a2);
  auto t = RadicalAlgebraElement::generator_t(a1, a2);
  // 1/s = s^2 / A1 and 1/t = t^2 / A2.
  auto s_inv = (s * s).scaled(Rational(1) / Rational(a1));
  auto t_inv = (t * t).scaled(Rational(1) / Rational(a2));
  AlgebraMatrix m{{{zero, zero, zero}, {zero, zero, zero}, {zero, zero, zero}}};
  m[0][1] = s_inv.scaled(Rational(1) / (Rational(54) * a3));
  m[0][2] = s_inv.scaled(Rational(2, 3));
  m[1][1] = t_inv.scaled(Rational(-1) / (Rational(54) * a3));
  m[1][2] = t_inv.scaled(Rational(2, 3));
  m[2][0] = RadicalAlgebraElement::constant(a1, a2,
                                            Rational(-1) / (Rational(9) * a3));
  return m;
}

AlgebraPoint apply_matrix(const AlgebraMatrix& m, const AlgebraPoint& p) {
  require_pair(m[0][0], p.x, "apply_matrix");
  require_pair(p.x, p.y, "apply_matrix");
  require_pair(p.x, p.z, "apply_matrix");
  std::array<RadicalAlgebraElement, 3> in{p.x, p.y, p.z};
  std::array<RadicalAlgebraElement, 3> out{
      RadicalAlgebraElement(p.x.a1(), p.x.a2()),
      RadicalAlgebraElement(p.x.a1(), p.x.a2()),
      RadicalAlgebraElement(p.x.a1(), p.x.a2())};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i] = out[i] + m[i][j] * in[j];
  return AlgebraPoint{out[0], out[1], out[2]};
}

AlgebraPoint selmer_point_map(const DiagonalCubic& d, const AlgebraPoint& p) {
  if (p.x.a1() != d.a1() || p.x.a2() != d.a2())
    throw precondition_error(
        "selmer_point_map: point does not live in the algebra of the cubic");
  auto cube = [](const RadicalAlgebraElement& e) { return e * e * e; };
  RadicalAlgebraElement f = cube(p.x).scaled(Rational(d.a1())) +
                            cube(p.y).scaled(Rational(d.a2())) +
                            cube(p.z).scaled(Rational(d.a3()));
  if (!f.is_zero())
    throw precondition_error("selmer_point_map: point is not on the cubic");
  return apply_matrix(forward_matrix(d), p);
}

AlgebraPoint selmer_point_inverse(const DiagonalCubic& d,
                                  const AlgebraPoint& img) {
  if (img.x.a1() != d.a1() || img.x.a2() != d.a2())
    throw precondition_error(
        "selmer_point_inverse: point does not live in the algebra of the "
        "cubic");
  return apply_matrix(inverse_matrix(d), img);
}

std::optional<std::pair<RadicalAlgebraElement, RadicalAlgebraElement>>
affine_image(const DiagonalCubic& d, const AlgebraPoint& p) {
  AlgebraPoint img = apply_matrix(forward_matrix(d), p);
  auto s = RadicalAlgebraElement::generator_s(d.a1(), d.a2());
  auto t = RadicalAlgebraElement::generator_t(d.a1(), d.a2());
  RadicalAlgebraElement st2 = (s * t) * (s * t);
  Rational prod = Rational(d.a1()) * Rational(d.a2());
  RadicalAlgebraElement big_x = st2 * img.x;
  RadicalAlgebraElement big_y = img.y.scaled(prod);
  auto z_inv = img.z.inverse();
  if (!z_inv) return std::nullopt;
  return std::make_pair(big_x * *z_inv, big_y * *z_inv);
}

namespace {

/// Rewrites s- and t-exponents below 3 by carrying cube factors into the
/// coefficient.
MultiPoly reduce_roots(const MultiPoly& p, const Rational& a1,
                       const Rational& a2) {
  MultiPoly out;
  for (const auto& [m, c] : p.terms()) {
    Monomial r = m;
    int es = r.e[static_cast<int>(Var::s)];
    int et = r.e[static_cast<int>(Var::t)];
    Rational coeff = c * pow_rat(a1, es / 3) * pow_rat(a2, et / 3);
    r.e[static_cast<int>(Var::s)] = static_cast<std::uint8_t>(es % 3);
    r.e[static_cast<int>(Var::t)] = static_cast<std::uint8_t>(et % 3);
    out += MultiPoly::monomial(r, coeff);
  }
  return out;
}

}  // namespace

bool maps_onto_curve(const DiagonalCubic& d, const WeierstrassCurve& c) {
  const Rational a1(d.a1()), a2(d.a2()), a3(d.a3());
  MultiPoly x = MultiPoly::variable(Var::x), y = MultiPoly::variable(Var::y),
            z = MultiPoly::variable(Var::z), s = MultiPoly::variable(Var::s),
            t = MultiPoly::variable(Var::t);

  MultiPoly xf = (Rational(-9) * a3) * (s * s * t * t * z);
  MultiPoly yf = (Rational(27) * a1 * a2 * a3) * (s * x - t * y);
  MultiPoly zf = Rational(3, 4) * (s * x + t * y);

  MultiPoly defect = yf * yf * zf - xf.pow(3) - c.a * (xf * zf * zf) -
                     c.b * zf.pow(3);
  defect = reduce_roots(defect, a1, a2);

  MultiPoly cubic = a1 * x.pow(3) + a2 * y.pow(3) + a3 * z.pow(3);
  return divide_exact(defect, cubic).has_value();
}

bool verify_curve_identity(const DiagonalCubic& d) {
  return maps_onto_curve(d, jacobian_curve(d));
}

namespace {

/// All positive divisors of a positive cube-free integer, each cube-free by
/// inheritance.
std::vector<Integer> divisors_of(const Integer& n) {
  std::vector<Integer> out{Integer(1)};
  for (const auto& [p, e] : factor(n)) {
    std::vector<Integer> next;
    Integer pk = 1;
    for (int k = 0; k <= e; ++k) {
      for (const auto& d : out) next.push_back(d * pk);
      pk *= p;
    }
    out = std::move(next);
  }
  return out;
}

using Triple = std::array<Integer, 3>;

/// Lexicographically least triple in the equivalence orbit.  Every orbit
/// contains triples with first entry 1 (scale by the inverse cube class of
/// the leading entry), and the lexicographic minimum is among them; there is
/// one candidate per permutation.
Triple canonical_triple(const Triple& t) {
  static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                  {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  std::optional<Triple> best;
  for (const auto& perm : perms) {
    const Integer &p0 = t[perm[0]], &p1 = t[perm[1]], &p2 = t[perm[2]];
    Integer lam = p0 * p0;
    Triple cand{Integer(1), cube_free_part(p1 * lam).first,
                cube_free_part(p2 * lam).first};
    if (!best || cand < *best) best = cand;
  }
  return *best;
}

}  // namespace

std::vector<DiagonalCubic> enumerate_diagonal_cubics(const Integer& m) {
  if (m == 0)
    throw precondition_error("enumerate_diagonal_cubics: m must be nonzero");
  Integer target = cube_free_part(abs(m)).first;

  // Ordered positive triples with product exactly target; divisors of a
  // cube-free number are cube-free, and the triple gcd is forced to 1 since
  // its cube would divide target.
  std::map<Triple, Triple> least_by_class;
  for (const Integer& a : divisors_of(target)) {
    for (const Integer& b : divisors_of(target / a)) {
      Integer c = target / (a * b);
      Triple t{a, b, c};
      Triple key = canonical_triple(t);
      auto it = least_by_class.find(key);
      if (it == least_by_class.end() || t < it->second)
        least_by_class[key] = t;
    }
  }

  std::vector<DiagonalCubic> out;
  for (const auto& [key, rep] : least_by_class) {
    (void)key;
    out.push_back(DiagonalCubic::make(rep[0], rep[1], rep[2]));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace tcf
