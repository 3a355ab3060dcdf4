#include "tcf/forms.hpp"

#include <algorithm>
#include <sstream>

namespace tcf {

ProjectivePoint ProjectivePoint::from_integers(std::vector<Integer> coords) {
  if (coords.size() != 3 && coords.size() != 6)
    throw precondition_error("ProjectivePoint: size must be 3 or 6");
  Integer g = 0;
  for (const auto& c : coords) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g == 0) throw precondition_error("ProjectivePoint: zero vector");
  for (auto& c : coords) c /= g;
  for (const auto& c : coords) {
    if (c == 0) continue;
    if (c < 0)
      for (auto& d : coords) d = -d;
    break;
  }
  return ProjectivePoint(std::move(coords));
}

ProjectivePoint ProjectivePoint::from_rationals(const std::vector<Rational>& coords) {
  Integer lcm = 1;
  for (const auto& c : coords) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
  std::vector<Integer> ints;
  ints.reserve(coords.size());
  for (const auto& c : coords) ints.emplace_back(c.get_num() * (lcm / c.get_den()));
  return from_integers(std::move(ints));
}

bool ProjectivePoint::operator<(const ProjectivePoint& o) const {
  if (coords_.size() != o.coords_.size()) return coords_.size() < o.coords_.size();
  Integer ha = 0, hb = 0;
  for (const auto& c : coords_) ha = std::max(ha, Integer(abs(c)));
  for (const auto& c : o.coords_) hb = std::max(hb, Integer(abs(c)));
  if (ha != hb) return ha < hb;
  for (std::size_t i = 0; i < coords_.size(); ++i)
    if (coords_[i] != o.coords_[i]) return coords_[i] < o.coords_[i];
  return false;
}

std::string ProjectivePoint::str() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) os << ":";
    os << coords_[i].get_str();
  }
  os << ")";
  return os.str();
}

TernaryCubicForm TernaryCubicForm::diagonal(const Integer& a1, const Integer& a2,
                                            const Integer& a3) {
  std::array<Rational, 10> a{};
  a[0] = Rational(a1);
  a[1] = Rational(a2);
  a[2] = Rational(a3);
  return TernaryCubicForm(a);
}

bool TernaryCubicForm::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Rational& c) { return c == 0; });
}

Rational TernaryCubicForm::eval(const Rational& x, const Rational& y, const Rational& z) const {
  return a_[0] * x * x * x + a_[1] * y * y * y + a_[2] * z * z * z +
         a_[3] * x * x * y + a_[4] * x * x * z + a_[5] * y * y * x +
         a_[6] * y * y * z + a_[7] * z * z * x + a_[8] * z * z * y +
         a_[9] * x * y * z;
}

Integer TernaryCubicForm::eval(const Integer& x, const Integer& y, const Integer& z) const {
  Rational r = eval(Rational(x), Rational(y), Rational(z));
  if (r.get_den() != 1)
    throw precondition_error("TernaryCubicForm::eval: integer evaluation of non-integer form");
  return r.get_num();
}

Rational TernaryCubicForm::eval(const ProjectivePoint& p) const {
  if (p.size() != 3) throw precondition_error("TernaryCubicForm::eval: point must have 3 coordinates");
  return eval(Rational(p[0]), Rational(p[1]), Rational(p[2]));
}

std::array<Integer, 3> TernaryCubicForm::gradient(const Integer& x, const Integer& y,
                                                  const Integer& z) const {
  auto num = [](const Rational& q) {
    if (q.get_den() != 1)
      throw precondition_error("TernaryCubicForm::gradient: non-integer form");
    return q.get_num();
  };
  Integer a1 = num(a_[0]), a2 = num(a_[1]), a3 = num(a_[2]), a4 = num(a_[3]), a5 = num(a_[4]),
          a6 = num(a_[5]), a7 = num(a_[6]), a8 = num(a_[7]), a9 = num(a_[8]), a10 = num(a_[9]);
  Integer dx = 3 * a1 * x * x + 2 * a4 * x * y + 2 * a5 * x * z + a6 * y * y + a8 * z * z + a10 * y * z;
  Integer dy = 3 * a2 * y * y + a4 * x * x + 2 * a6 * x * y + 2 * a7 * y * z + a9 * z * z + a10 * x * z;
  Integer dz = 3 * a3 * z * z + a5 * x * x + a7 * y * y + 2 * a8 * x * z + 2 * a9 * y * z + a10 * x * y;
  return {dx, dy, dz};
}

TernaryCubicForm TernaryCubicForm::normalized() const {
  if (is_zero()) throw precondition_error("TernaryCubicForm: zero form");
  Integer lcm = 1;
  for (const auto& c : a_) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
  Integer g = 0;
  for (const auto& c : a_) {
    Integer n(c.get_num() * (lcm / c.get_den()));
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  }
  Rational scale = make_rational(lcm, g);
  for (const auto& c : a_) {
    if (c == 0) continue;
    if (c < 0) scale = -scale;
    break;
  }
  std::array<Rational, 10> out;
  for (std::size_t i = 0; i < 10; ++i) out[i] = a_[i] * scale;
  return TernaryCubicForm(out);
}

bool TernaryCubicForm::is_normalized() const {
  return !is_zero() && normalized() == *this;
}

std::optional<std::array<Integer, 3>> TernaryCubicForm::diagonal_coefficients() const {
  TernaryCubicForm n = normalized();
  for (std::size_t i = 3; i < 10; ++i)
    if (n[i] != 0) return std::nullopt;
  if (n[0] == 0 || n[1] == 0 || n[2] == 0) return std::nullopt;
  return std::array<Integer, 3>{n[0].get_num(), n[1].get_num(), n[2].get_num()};
}

std::optional<ProjectivePoint> TernaryCubicForm::unit_point() const {
  // A vanishing cube coefficient forces the corresponding unit vector onto
  // the zero set: F(1,0,0) = A1 and cyclically.
  if (a_[0] == 0) return ProjectivePoint::from_integers({1, 0, 0});
  if (a_[1] == 0) return ProjectivePoint::from_integers({0, 1, 0});
  if (a_[2] == 0) return ProjectivePoint::from_integers({0, 0, 1});
  return std::nullopt;
}

MultiPoly TernaryCubicForm::to_poly() const {
  MultiPoly x = MultiPoly::variable(Var::x), y = MultiPoly::variable(Var::y),
            z = MultiPoly::variable(Var::z);
  return a_[0] * (x * x * x) + a_[1] * (y * y * y) + a_[2] * (z * z * z) +
         a_[3] * (x * x * y) + a_[4] * (x * x * z) + a_[5] * (y * y * x) +
         a_[6] * (y * y * z) + a_[7] * (z * z * x) + a_[8] * (z * z * y) +
         a_[9] * (x * y * z);
}

BinaryCubicForm::BinaryCubicForm(Rational a, Rational b, Rational c, Rational d)
    : a_{std::move(a), std::move(b), std::move(c), std::move(d)} {}

bool BinaryCubicForm::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Rational& c) { return c == 0; });
}

Rational BinaryCubicForm::eval(const Rational& u, const Rational& v) const {
  return a_[0] * u * u * u + a_[1] * u * u * v + a_[2] * u * v * v + a_[3] * v * v * v;
}

std::optional<std::pair<Integer, Integer>> BinaryCubicForm::rational_root() const {
  if (is_zero()) throw precondition_error("BinaryCubicForm::rational_root: zero form");
  // Primitive integer coefficients (a, b, c, d).
  Integer lcm = 1;
  for (const auto& q : a_) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den().get_mpz_t());
  std::array<Integer, 4> c;
  Integer g = 0;
  for (int i = 0; i < 4; ++i) {
    c[i] = a_[i].get_num() * (lcm / a_[i].get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c[i].get_mpz_t());
  }
  for (auto& ci : c) ci /= g;

  std::vector<std::pair<Integer, Integer>> roots;  // (u, v) with v > 0, or (1, 0)
  if (c[0] == 0) roots.emplace_back(1, 0);  // degree drop in u/v: root at infinity
  if (c[3] == 0) roots.emplace_back(0, 1);

  // Deflate the vanishing ends so the rational root theorem applies: strip
  // leading zeros (covered by the root at infinity) and trailing zeros
  // (covered by (0:1)), leaving q with nonzero outer coefficients whose
  // finite nonzero roots are exactly those of the original form.
  std::vector<Integer> q(c.begin(), c.end());
  while (!q.empty() && q.front() == 0) q.erase(q.begin());
  while (!q.empty() && q.back() == 0) q.pop_back();
  if (q.size() >= 2) {
    auto divisors = [](const Integer& n) {
      std::vector<Integer> ds{1};
      for (const auto& [p, e] : factor(n)) {
        std::size_t base = ds.size();
        Integer pk = 1;
        for (int k = 1; k <= e; ++k) {
          pk *= p;
          for (std::size_t i = 0; i < base; ++i) ds.push_back(ds[i] * pk);
        }
      }
      return ds;
    };
    for (const Integer& u : divisors(q.back()))
      for (const Integer& v : divisors(q.front())) {
        Integer gg;
        mpz_gcd(gg.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t());
        if (gg != 1) continue;
        for (int sign : {1, -1}) {
          Integer su = sign * u;
          if (eval(Rational(su), Rational(v)) == 0) roots.emplace_back(su, v);
        }
      }
  }
  if (roots.empty()) return std::nullopt;
  auto height = [](const std::pair<Integer, Integer>& r) {
    return std::max(Integer(abs(r.first)), Integer(abs(r.second)));
  };
  auto best = *std::min_element(roots.begin(), roots.end(),
                                [&](const auto& lhs, const auto& rhs) {
                                  Integer hl = height(lhs), hr = height(rhs);
                                  if (hl != hr) return hl < hr;
                                  return lhs.first < rhs.first;
                                });
  return best;
}

std::array<BinaryCubicForm, 3> boundary_restrictions(const TernaryCubicForm& f) {
  const auto& a = f.coeffs();
  return {BinaryCubicForm(a[0], a[3], a[5], a[1]),
          BinaryCubicForm(a[0], a[4], a[7], a[2]),
          BinaryCubicForm(a[1], a[6], a[8], a[2])};
}

ProjectivePoint embed_boundary_root(int restriction_index,
                                    const std::pair<Integer, Integer>& root) {
  const Integer& u = root.first;
  const Integer& v = root.second;
  switch (restriction_index) {
    case 0: return ProjectivePoint::from_integers({u, v, 0});
    case 1: return ProjectivePoint::from_integers({u, 0, v});
    case 2: return ProjectivePoint::from_integers({0, u, v});
    default: throw precondition_error("embed_boundary_root: index must be 0, 1 or 2");
  }
}

void QuadraticForm6::add_term(int i, int j, const Rational& c) {
  if (i < 0 || i > 5 || j < 0 || j > 5)
    throw precondition_error("QuadraticForm6::add_term: index out of range");
  if (i == j) {
    m_[i][i] += c;
  } else {
    Rational half = c / 2;
    m_[i][j] += half;
    m_[j][i] += half;
  }
}

Rational QuadraticForm6::eval(const std::array<Rational, 6>& v) const {
  Rational total(0);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) total += m_[i][j] * v[i] * v[j];
  return total;
}

Rational QuadraticForm6::eval(const ProjectivePoint& p) const {
  if (p.size() != 6) throw precondition_error("QuadraticForm6::eval: point must have 6 coordinates");
  std::array<Rational, 6> v;
  for (int i = 0; i < 6; ++i) v[i] = Rational(p[i]);
  return eval(v);
}

bool QuadraticForm6::is_zero() const {
  for (const auto& row : m_)
    for (const auto& c : row)
      if (c != 0) return false;
  return true;
}

MultiPoly QuadraticForm6::to_poly() const {
  MultiPoly p;
  for (int i = 0; i < 6; ++i)
    for (int j = i; j < 6; ++j) {
      Rational c = i == j ? m_[i][i] : Rational(2 * m_[i][j]);
      if (c == 0) continue;
      Monomial m;
      m.e[i] += 1;
      m.e[j] += 1;
      p += MultiPoly::monomial(m, c);
    }
  return p;
}

QuadraticForm6 QuadraticForm6::from_poly(const MultiPoly& p) {
  QuadraticForm6 q;
  for (const auto& [m, c] : p.terms()) {
    int i = -1, j = -1;
    int total = 0;
    for (int k = 0; k < kVarCount; ++k) {
      if (m.e[k] == 0) continue;
      if (k > 5) throw precondition_error("QuadraticForm6::from_poly: variable outside X..N");
      total += m.e[k];
      if (m.e[k] == 2 && i < 0) {
        i = j = k;
      } else if (m.e[k] == 1) {
        (i < 0 ? i : j) = k;
      }
    }
    if (total != 2) throw precondition_error("QuadraticForm6::from_poly: not homogeneous quadratic");
    q.add_term(i, j, c);
  }
  return q;
}

}  // namespace tcf
