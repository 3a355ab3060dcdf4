#include "tcf/poly.hpp"

#include <algorithm>
#include <sstream>

namespace tcf {

namespace {
constexpr const char* kVarNames[kVarCount] = {
    "X", "Y", "Z", "W", "M", "N",
    "x", "y", "z",
    "s", "t",
    "a1", "a2", "a3", "a4", "a5", "a6", "a7",
    "b1", "b2", "b3", "b4", "b5", "b6", "b7",
};
}  // namespace

const char* var_name(Var v) { return kVarNames[static_cast<int>(v)]; }

std::optional<Var> var_from_name(const std::string& name) {
  for (int i = 0; i < kVarCount; ++i)
    if (name == kVarNames[i]) return static_cast<Var>(i);
  return std::nullopt;
}

int Monomial::degree() const {
  int d = 0;
  for (auto ei : e) d += ei;
  return d;
}

bool Monomial::divides(const Monomial& m) const {
  for (int i = 0; i < kVarCount; ++i)
    if (e[i] > m.e[i]) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& m) const {
  Monomial r;
  for (int i = 0; i < kVarCount; ++i) {
    int s = e[i] + m.e[i];
    if (s > 255) throw std::overflow_error("Monomial: exponent overflow");
    r.e[i] = static_cast<std::uint8_t>(s);
  }
  return r;
}

Monomial Monomial::operator/(const Monomial& m) const {
  Monomial r;
  for (int i = 0; i < kVarCount; ++i) r.e[i] = static_cast<std::uint8_t>(e[i] - m.e[i]);
  return r;
}

bool GrlexGreater::operator()(const Monomial& a, const Monomial& b) const {
  int da = a.degree(), db = b.degree();
  if (da != db) return da > db;
  return a.e > b.e;  // lexicographic on exponent vectors, earlier index first
}

MultiPoly::MultiPoly(const Rational& c) {
  if (c != 0) terms_.emplace(Monomial{}, c);
}

MultiPoly MultiPoly::variable(Var v) {
  Monomial m;
  m.e[static_cast<int>(v)] = 1;
  return monomial(m, Rational(1));
}

MultiPoly MultiPoly::monomial(const Monomial& m, const Rational& c) {
  MultiPoly p;
  if (c != 0) p.terms_.emplace(m, c);
  return p;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.degree() == 0);
}

Rational MultiPoly::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (!is_constant()) throw std::domain_error("MultiPoly: not a constant");
  return terms_.begin()->second;
}

int MultiPoly::total_degree() const {
  if (terms_.empty()) return -1;
  return terms_.begin()->first.degree();  // leading term has maximal degree
}

int MultiPoly::degree_in(Var v) const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.e[static_cast<int>(v)]));
  return d;
}

MultiPoly MultiPoly::coeff_of(Var v, int k) const {
  MultiPoly r;
  int vi = static_cast<int>(v);
  for (const auto& [m, c] : terms_) {
    if (m.e[vi] == k) {
      Monomial stripped = m;
      stripped.e[vi] = 0;
      r.insert_term(stripped, c);
    }
  }
  return r;
}

std::set<Var> MultiPoly::support() const {
  std::set<Var> s;
  for (const auto& [m, c] : terms_)
    for (int i = 0; i < kVarCount; ++i)
      if (m.e[i] > 0) s.insert(static_cast<Var>(i));
  return s;
}

void MultiPoly::insert_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  MultiPoly r = *this;
  r += o;
  return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  for (const auto& [m, c] : o.terms_) insert_term(m, c);
  return *this;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
  MultiPoly r = *this;
  r -= o;
  return r;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  for (const auto& [m, c] : o.terms_) insert_term(m, Rational(-c));
  return *this;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, Rational(-c));
  return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  MultiPoly r;
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) r.insert_term(ma * mb, Rational(ca * cb));
  return r;
}

MultiPoly MultiPoly::scaled(const Rational& c) const {
  MultiPoly r;
  if (c == 0) return r;
  for (const auto& [m, k] : terms_) r.terms_.emplace(m, Rational(k * c));
  return r;
}

MultiPoly MultiPoly::pow(unsigned k) const {
  MultiPoly r(Rational(1));
  for (unsigned i = 0; i < k; ++i) r = r * *this;
  return r;
}

Rational MultiPoly::eval(const std::map<Var, Rational>& point) const {
  Rational total(0);
  for (const auto& [m, c] : terms_) {
    Rational term = c;
    for (int i = 0; i < kVarCount; ++i) {
      if (m.e[i] == 0) continue;
      auto it = point.find(static_cast<Var>(i));
      if (it == point.end())
        throw precondition_error(std::string("MultiPoly::eval: unassigned variable ") + kVarNames[i]);
      for (int k = 0; k < m.e[i]; ++k) term *= it->second;
    }
    total += term;
  }
  return total;
}

MultiPoly MultiPoly::substitute(const std::map<Var, MultiPoly>& repl) const {
  MultiPoly total;
  for (const auto& [m, c] : terms_) {
    MultiPoly term(c);
    Monomial keep;
    for (int i = 0; i < kVarCount; ++i) {
      if (m.e[i] == 0) continue;
      auto it = repl.find(static_cast<Var>(i));
      if (it == repl.end()) {
        keep.e[i] = m.e[i];
      } else {
        term = term * it->second.pow(m.e[i]);
      }
    }
    total += term * monomial(keep, Rational(1));
  }
  return total;
}

Rational MultiPoly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

const Monomial& MultiPoly::leading_monomial() const {
  if (terms_.empty()) throw std::domain_error("MultiPoly: zero polynomial has no leading term");
  return terms_.begin()->first;
}

const Rational& MultiPoly::leading_coeff() const {
  if (terms_.empty()) throw std::domain_error("MultiPoly: zero polynomial has no leading term");
  return terms_.begin()->second;
}

MultiPoly MultiPoly::primitive_normalized() const {
  if (terms_.empty()) return MultiPoly();
  Integer num_gcd = 0, den_lcm = 1;
  for (const auto& [m, c] : terms_) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
  }
  Rational scale = make_rational(den_lcm, num_gcd);
  if (leading_coeff() < 0) scale = -scale;
  return scaled(scale);
}

std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational a = c;
    if (first) {
      if (a < 0) {
        os << "-";
        a = -a;
      }
    } else {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    first = false;
    std::vector<std::string> pieces;
    if (a != 1 || m.degree() == 0) pieces.push_back(to_string(a));
    for (int i = 0; i < kVarCount; ++i) {
      if (m.e[i] == 0) continue;
      std::string piece = kVarNames[i];
      if (m.e[i] > 1) piece += "^" + std::to_string(static_cast<int>(m.e[i]));
      pieces.push_back(piece);
    }
    for (std::size_t j = 0; j < pieces.size(); ++j) {
      if (j) os << "*";
      os << pieces[j];
    }
  }
  return os.str();
}

PolyMatrix sylvester_matrix(const MultiPoly& f, const MultiPoly& g, Var v,
                            int deg_f, int deg_g) {
  if (f.degree_in(v) > deg_f || g.degree_in(v) > deg_g)
    throw precondition_error("sylvester_matrix: stated degree below true degree");
  int n = deg_f + deg_g;
  if (n <= 0) throw precondition_error("sylvester_matrix: stated degrees sum to zero");
  PolyMatrix mat(n, std::vector<MultiPoly>(n));
  // deg_g rows of f coefficients, then deg_f rows of g coefficients,
  // highest coefficient first, each row shifted one column right.
  for (int r = 0; r < deg_g; ++r)
    for (int k = 0; k <= deg_f; ++k) mat[r][r + k] = f.coeff_of(v, deg_f - k);
  for (int r = 0; r < deg_f; ++r)
    for (int k = 0; k <= deg_g; ++k) mat[deg_g + r][r + k] = g.coeff_of(v, deg_g - k);
  return mat;
}

namespace {

MultiPoly det_rec(const PolyMatrix& m, std::vector<int>& rows, int col) {
  int n = static_cast<int>(rows.size());
  if (n == 0) return MultiPoly(Rational(1));
  MultiPoly acc;
  int sign = 1;
  for (int i = 0; i < n; ++i) {
    const MultiPoly& entry = m[rows[i]][col];
    if (!entry.is_zero()) {
      std::vector<int> sub;
      sub.reserve(n - 1);
      for (int j = 0; j < n; ++j)
        if (j != i) sub.push_back(rows[j]);
      MultiPoly minor = det_rec(m, sub, col + 1);
      MultiPoly term = entry * minor;
      acc += sign > 0 ? term : -term;
    }
    sign = -sign;
  }
  return acc;
}

}  // namespace

MultiPoly determinant(const PolyMatrix& m) {
  int n = static_cast<int>(m.size());
  for (const auto& row : m)
    if (static_cast<int>(row.size()) != n)
      throw precondition_error("determinant: matrix not square");
  std::vector<int> rows(n);
  for (int i = 0; i < n; ++i) rows[i] = i;
  return det_rec(m, rows, 0);
}

MultiPoly resultant(const MultiPoly& f, const MultiPoly& g, Var v) {
  int df = f.degree_in(v), dg = g.degree_in(v);
  if (df == 0 && dg == 0) return MultiPoly(Rational(1));
  if (df == 0) return f.pow(dg);
  if (dg == 0) return g.pow(df);
  return determinant(sylvester_matrix(f, g, v, df, dg));
}

MultiPoly resultant_formal(const MultiPoly& f, const MultiPoly& g, Var v,
                           int deg_f, int deg_g) {
  return determinant(sylvester_matrix(f, g, v, deg_f, deg_g));
}

MultiPoly sylvester22_det(const MultiPoly& a1, const MultiPoly& b1, const MultiPoly& c1,
                          const MultiPoly& a2, const MultiPoly& b2, const MultiPoly& c2) {
  MultiPoly ac = a1 * c2 - a2 * c1;
  MultiPoly ab = a2 * b1 - a1 * b2;
  MultiPoly bc = b1 * c2 - b2 * c1;
  return ac * ac + ab * bc;
}

std::optional<MultiPoly> divide_exact(const MultiPoly& f, const MultiPoly& g) {
  if (g.is_zero()) throw precondition_error("divide_exact: zero divisor");
  MultiPoly q, r = f;
  const Monomial& lg = g.leading_monomial();
  const Rational& cg = g.leading_coeff();
  while (!r.is_zero()) {
    const Monomial& lr = r.leading_monomial();
    if (!lg.divides(lr)) return std::nullopt;
    MultiPoly t = MultiPoly::monomial(lr / lg, Rational(r.leading_coeff() / cg));
    q += t;
    r -= t * g;
  }
  return q;
}

namespace {

/// Highest universe index occurring in f, or nullopt for constants.
std::optional<Var> top_var(const MultiPoly& f) {
  auto s = f.support();
  if (s.empty()) return std::nullopt;
  return *s.rbegin();
}

MultiPoly content_wrt(const MultiPoly& f, Var v) {
  std::vector<MultiPoly> coeffs;
  for (int k = 0; k <= f.degree_in(v); ++k) {
    MultiPoly c = f.coeff_of(v, k);
    if (!c.is_zero()) coeffs.push_back(c);
  }
  return gcd_many(coeffs);
}

MultiPoly pseudo_remainder(MultiPoly f, const MultiPoly& g, Var v) {
  int dg = g.degree_in(v);
  MultiPoly lc_g = g.coeff_of(v, dg);
  while (!f.is_zero() && f.degree_in(v) >= dg) {
    int df = f.degree_in(v);
    MultiPoly lc_f = f.coeff_of(v, df);
    Monomial shift;
    shift.e[static_cast<int>(v)] = static_cast<std::uint8_t>(df - dg);
    f = lc_g * f - lc_f * MultiPoly::monomial(shift, Rational(1)) * g;
  }
  return f;
}

}  // namespace

MultiPoly gcd(const MultiPoly& f, const MultiPoly& g) {
  if (f.is_zero()) return g.primitive_normalized();
  if (g.is_zero()) return f.primitive_normalized();
  auto vf = top_var(f), vg = top_var(g);
  if (!vf && !vg) return MultiPoly(Rational(1));
  // A constant is coprime to anything nonconstant (coefficients live in a field).
  if (!vf || !vg) return MultiPoly(Rational(1));
  Var v = std::max(*vf, *vg);

  MultiPoly cont_f = content_wrt(f, v), cont_g = content_wrt(g, v);
  MultiPoly c = gcd(cont_f, cont_g);
  MultiPoly a = *divide_exact(f, cont_f);
  MultiPoly b = *divide_exact(g, cont_g);
  if (a.degree_in(v) < b.degree_in(v)) std::swap(a, b);
  // Primitive pseudo-remainder sequence in v.
  while (true) {
    if (b.is_zero()) break;
    if (b.degree_in(v) == 0) {
      // b is v-free and a is v-primitive, so the pair is coprime over the
      // coefficient ring.
      return c.primitive_normalized();
    }
    MultiPoly r = pseudo_remainder(a, b, v);
    a = b;
    if (r.is_zero()) {
      b = MultiPoly();
    } else {
      b = *divide_exact(r, content_wrt(r, v));
    }
  }
  return (c * *divide_exact(a, content_wrt(a, v))).primitive_normalized();
}

MultiPoly gcd_many(const std::vector<MultiPoly>& polys) {
  MultiPoly acc;
  for (const auto& p : polys) {
    acc = gcd(acc, p);
    if (!acc.is_zero() && acc.is_constant()) return MultiPoly(Rational(1));
  }
  return acc;
}

}  // namespace tcf
