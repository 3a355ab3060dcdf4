#include "tcf/localfields.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>
#include <utility>

#include "tcf/search.hpp"

namespace tcf {

namespace {

// Residue of an odd rational mod 8, using that odd squares are 1 mod 8, so
// an odd denominator is its own inverse mod 8.
long odd_residue_mod8(const Rational& q) {
  long num = static_cast<long>(mpz_fdiv_ui(q.get_num().get_mpz_t(), 8));
  long den = static_cast<long>(mpz_fdiv_ui(q.get_den().get_mpz_t(), 8));
  return (num * den) % 8;
}

// Legendre symbol of a p-adic unit written as a fraction; the denominator
// contributes its own symbol because inversion mod p preserves residuosity.
int legendre_unit(const Rational& q, const Integer& p) {
  int num = mpz_legendre(q.get_num().get_mpz_t(), p.get_mpz_t());
  int den = mpz_legendre(q.get_den().get_mpz_t(), p.get_mpz_t());
  return num * den;
}

bool is_odd(long v) { return v % 2 != 0; }

std::optional<Integer> exact_isqrt(const Integer& n) {
  if (n < 0 || !mpz_perfect_square_p(n.get_mpz_t())) return std::nullopt;
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

}  // namespace

Place Place::finite(const Integer& p) {
  if (!is_prime(p)) throw precondition_error("Place: finite place needs a prime");
  return Place(p);
}

const Integer& Place::prime() const {
  if (is_real()) throw precondition_error("Place: the real place has no prime");
  return p_;
}

std::string Place::str() const { return is_real() ? "R" : p_.get_str(); }

int hilbert_symbol(const Rational& a, const Rational& b, const Place& v) {
  if (a == 0 || b == 0) throw precondition_error("hilbert_symbol: arguments must be nonzero");
  if (v.is_real()) return (a < 0 && b < 0) ? -1 : 1;

  const Integer& p = v.prime();
  long alpha = valuation(a, p).value();
  long beta = valuation(b, p).value();
  Rational u = unit_part(a, p);
  Rational w = unit_part(b, p);

  if (p == 2) {
    long ru = odd_residue_mod8(u);
    long rw = odd_residue_mod8(w);
    long eps_u = (ru % 4 == 3) ? 1 : 0;           // (u - 1)/2 mod 2
    long eps_w = (rw % 4 == 3) ? 1 : 0;
    long omega_u = (ru == 3 || ru == 5) ? 1 : 0;  // (u^2 - 1)/8 mod 2
    long omega_w = (rw == 3 || rw == 5) ? 1 : 0;
    long e = eps_u * eps_w + alpha * omega_w + beta * omega_u;
    return is_odd(e) ? -1 : 1;
  }

  int sign = 1;
  bool p_is_3_mod_4 = mpz_fdiv_ui(p.get_mpz_t(), 4) == 3;
  if (is_odd(alpha) && is_odd(beta) && p_is_3_mod_4) sign = -sign;
  if (is_odd(beta) && legendre_unit(u, p) < 0) sign = -sign;
  if (is_odd(alpha) && legendre_unit(w, p) < 0) sign = -sign;
  return sign;
}

bool is_square_local(const Rational& a, const Place& v) {
  if (a == 0) throw precondition_error("is_square_local: argument must be nonzero");
  if (v.is_real()) return a > 0;
  const Integer& p = v.prime();
  if (is_odd(valuation(a, p).value())) return false;
  Rational u = unit_part(a, p);
  if (p == 2) return odd_residue_mod8(u) == 1;
  return legendre_unit(u, p) > 0;
}

Diagonalization diagonalize_symmetric(const QMat& a0) {
  const std::size_t n = a0.size();
  for (const auto& row : a0)
    if (row.size() != n) throw precondition_error("diagonalize_symmetric: matrix not square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (a0[i][j] != a0[j][i]) throw precondition_error("diagonalize_symmetric: matrix not symmetric");

  QMat a = a0;
  QMat t(n, QVec(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) t[i][i] = 1;

  // Congruence column operation: basis vector e_j += c * e_k, applied to the
  // columns and then the rows of a so that t^t a0 t stays equal to a.
  auto add_col = [&](std::size_t j, std::size_t k, const Rational& c) {
    for (std::size_t r = 0; r < n; ++r) a[r][j] += c * a[r][k];
    for (std::size_t r = 0; r < n; ++r) a[j][r] += c * a[k][r];
    for (std::size_t r = 0; r < n; ++r) t[r][j] += c * t[r][k];
  };
  auto swap_cols = [&](std::size_t j, std::size_t k) {
    for (std::size_t r = 0; r < n; ++r) std::swap(a[r][j], a[r][k]);
    for (std::size_t r = 0; r < n; ++r) std::swap(a[j][r], a[k][r]);
    for (std::size_t r = 0; r < n; ++r) std::swap(t[r][j], t[r][k]);
  };

  for (std::size_t k = 0; k < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t j = k + 1;
      while (j < n && a[j][j] == 0) ++j;
      if (j < n) {
        swap_cols(k, j);
      } else {
        j = k + 1;
        while (j < n && a[k][j] == 0) ++j;
        if (j == n) continue;  // the row is already clear; the entry stays zero
        add_col(k, j, Rational(1));  // picks up 2 a[k][j] on the diagonal
      }
    }
    for (std::size_t j = k + 1; j < n; ++j) {
      if (a[k][j] == 0) continue;
      add_col(j, k, Rational(-a[k][j] / a[k][k]));
    }
  }

  Diagonalization out;
  out.basis = std::move(t);
  out.diag.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.diag.push_back(a[i][i]);
  return out;
}

bool is_isotropic_local(const std::vector<Rational>& d, const Place& v) {
  for (const auto& di : d)
    if (di == 0) return true;
  const std::size_t n = d.size();
  if (n <= 1) return false;
  if (n == 2) return is_square_local(Rational(-d[0] * d[1]), v);
  if (n == 3)
    return hilbert_symbol(Rational(-d[0] * d[2]), Rational(-d[1] * d[2]), v) == 1;
  if (n == 4) {
    Rational det = d[0] * d[1] * d[2] * d[3];
    if (!is_square_local(det, v)) return true;
    int eps = 1;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j) eps *= hilbert_symbol(d[i], d[j], v);
    return eps == hilbert_symbol(Rational(-1), Rational(-1), v);
  }
  // Five or more variables: every finite place is isotropic, only the real
  // place can refuse.
  if (!v.is_real()) return true;
  bool pos = false, neg = false;
  for (const auto& di : d) (di > 0 ? pos : neg) = true;
  return pos && neg;
}

bool is_isotropic_local(const QMat& gram, const Place& v) {
  return is_isotropic_local(diagonalize_symmetric(gram).diag, v);
}

bool is_isotropic_global(const std::vector<Rational>& d) {
  for (const auto& di : d)
    if (di == 0) return true;
  const std::size_t n = d.size();
  if (n <= 1) return false;
  if (n == 2) {
    Rational q = -d[0] * d[1];
    return q > 0 && exact_sqrt(q).has_value();
  }
  bool pos = false, neg = false;
  for (const auto& di : d) (di > 0 ? pos : neg) = true;
  if (!(pos && neg)) return false;  // the real place
  if (n >= 5) return true;          // indefinite in >= 5 variables

  std::set<Integer> primes{Integer(2)};
  for (const auto& di : d)
    for (const auto& p : prime_support(di)) primes.insert(p);
  for (const auto& p : primes)
    if (!is_isotropic_local(d, Place::finite(p))) return false;
  return true;
}

bool is_isotropic_global(const QMat& gram) {
  return is_isotropic_global(diagonalize_symmetric(gram).diag);
}

std::optional<QVec> find_isotropic_vector(const QMat& gram, long shell_cap) {
  if (shell_cap < 1) throw precondition_error("find_isotropic_vector: shell_cap must be positive");
  Diagonalization dz = diagonalize_symmetric(gram);
  const std::size_t n = dz.diag.size();
  if (!is_isotropic_global(dz.diag)) return std::nullopt;

  auto finish = [&](const QVec& w) -> QVec {
    QVec v(n, Rational(0));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) v[r] += dz.basis[r][c] * w[c];
    Rational value(0);
    bool nonzero = false;
    for (std::size_t r = 0; r < n; ++r) {
      if (v[r] != 0) nonzero = true;
      for (std::size_t c = 0; c < n; ++c) value += v[r] * gram[r][c] * v[c];
    }
    if (!nonzero || value != 0)
      throw std::logic_error("find_isotropic_vector: witness recheck failed");
    return v;
  };

  for (std::size_t i = 0; i < n; ++i) {
    if (dz.diag[i] == 0) {
      QVec w(n, Rational(0));
      w[i] = 1;
      return finish(w);
    }
  }

  if (n == 2) {
    Rational t = *exact_sqrt(Rational(-dz.diag[0] * dz.diag[1]));
    return finish(QVec{t, dz.diag[0]});
  }

  // Integral model: x_i -> mu_i x_i turns each entry into a square-free
  // integer s_i, and a zero of sum s_i x_i^2 maps straight back.
  std::vector<Integer> s(n);
  std::vector<Rational> mu(n);
  for (std::size_t i = 0; i < n; ++i) {
    Integer num = dz.diag[i].get_num();
    Integer den = dz.diag[i].get_den();
    Integer m = num * den;
    Integer square_free(1), square_root(1);
    for (const auto& [p, e] : factor(m)) {
      if (e % 2) square_free *= p;
      square_root *= pow_int(p, static_cast<unsigned long>(e / 2));
    }
    if (m < 0) square_free = -square_free;
    s[i] = square_free;
    mu[i] = Rational(den) / Rational(square_root);
  }

  // Shell search: outer coordinates walk a box, the second coordinate walks
  // a line, and the first is pinned down by an exact square-root test.
  std::vector<long> shells;
  for (long h = 1; h < shell_cap; h *= 2) shells.push_back(h);
  shells.push_back(shell_cap);

  const bool same_sign = (s[0] > 0) == (s[1] > 0);
  Integer s1_abs = abs(s[1]);
  long ops = 0;
  const long kOpsBudget = 100'000'000;

  for (long h : shells) {
    const std::size_t outer = n - 2;
    std::vector<long> o(outer, -h);
    while (true) {
      Integer r(0);
      bool outer_nonzero = false;
      for (std::size_t i = 0; i < outer; ++i) {
        r -= s[i + 2] * Integer(o[i]) * Integer(o[i]);
        if (o[i] != 0) outer_nonzero = true;
      }
      Integer r_abs = abs(r);
      for (Integer x1(0);; ++x1) {
        if (++ops > kOpsBudget)
          throw std::runtime_error("find_isotropic_vector: search budget exhausted");
        if (same_sign) {
          if (s1_abs * x1 * x1 > r_abs) break;
        } else if (x1 > 4 * h + 4) {
          break;
        }
        Integer rem = r - s[1] * x1 * x1;
        if (!mpz_divisible_p(rem.get_mpz_t(), s[0].get_mpz_t())) continue;
        Integer q = rem / s[0];
        if (q < 0) continue;
        auto x0 = exact_isqrt(q);
        if (!x0) continue;
        if (*x0 == 0 && x1 == 0 && !outer_nonzero) continue;
        QVec w(n);
        w[0] = Rational(*x0) * mu[0];
        w[1] = Rational(x1) * mu[1];
        for (std::size_t i = 0; i < outer; ++i) w[i + 2] = Rational(Integer(o[i])) * mu[i + 2];
        return finish(w);
      }
      std::size_t k = 0;
      while (k < outer && o[k] == h) {
        o[k] = -h;
        ++k;
      }
      if (k == outer) break;
      ++o[k];
    }
  }
  throw std::runtime_error("find_isotropic_vector: no witness within the shell cap");
}

bool verify_hensel_certificate(const TernaryCubicForm& f, const HenselCertificate& c) {
  for (const auto& coeff : f.coeffs())
    if (coeff.get_den() != 1)
      throw precondition_error("verify_hensel_certificate: integer coefficients required");
  if (!is_prime(c.prime)) return false;
  if (c.coordinate < 0 || c.coordinate > 2) return false;
  if (c.point[0] == 0 && c.point[1] == 0 && c.point[2] == 0) return false;

  Integer value = f.eval(c.point[0], c.point[1], c.point[2]);
  std::array<Integer, 3> grad = f.gradient(c.point[0], c.point[1], c.point[2]);
  PadicValuation t = valuation(value, c.prime);
  PadicValuation d = valuation(grad[static_cast<std::size_t>(c.coordinate)], c.prime);
  if (d.is_infinity()) return false;
  return (d + d) < t;
}

const char* to_cstring(Solvability s) {
  switch (s) {
    case Solvability::Solvable: return "solvable";
    case Solvability::Unsolvable: return "unsolvable";
    default: return "undecided";
  }
}

namespace {

// Dense univariate polynomials over F_p, constant term first. Degrees stay
// at most 3 here, so schoolbook arithmetic is plenty.
using ModPoly = std::vector<Integer>;

Integer mod_p(const Integer& a, const Integer& p) {
  Integer r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
  return r;
}

void trim(ModPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// Remainder of a by a monic m.
ModPoly poly_rem(ModPoly a, const ModPoly& m, const Integer& p) {
  while (a.size() >= m.size()) {
    Integer lead = a.back();
    std::size_t shift = a.size() - m.size();
    if (lead != 0)
      for (std::size_t i = 0; i + 1 < m.size(); ++i)
        a[shift + i] = mod_p(a[shift + i] - lead * m[i], p);
    a.pop_back();
  }
  trim(a);
  return a;
}

// Quotient of a by a monic m, discarding the remainder.
ModPoly poly_quot(ModPoly a, const ModPoly& m, const Integer& p) {
  if (a.size() < m.size()) return {};
  ModPoly q(a.size() - m.size() + 1, Integer(0));
  while (a.size() >= m.size()) {
    Integer lead = a.back();
    std::size_t shift = a.size() - m.size();
    q[shift] = lead;
    if (lead != 0)
      for (std::size_t i = 0; i + 1 < m.size(); ++i)
        a[shift + i] = mod_p(a[shift + i] - lead * m[i], p);
    a.pop_back();
  }
  trim(q);
  return q;
}

ModPoly poly_mul_mod(const ModPoly& a, const ModPoly& b, const ModPoly& m,
                     const Integer& p) {
  if (a.empty() || b.empty()) return {};
  ModPoly c(a.size() + b.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  for (auto& v : c) v = mod_p(v, p);
  trim(c);
  return poly_rem(std::move(c), m, p);
}

ModPoly poly_pow_mod(const ModPoly& base, const Integer& e, const ModPoly& m,
                     const Integer& p) {
  ModPoly result{Integer(1)};
  for (mp_bitcnt_t i = mpz_sizeinbase(e.get_mpz_t(), 2); i-- > 0;) {
    result = poly_mul_mod(result, result, m, p);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = poly_mul_mod(result, base, m, p);
  }
  return result;
}

ModPoly poly_make_monic(ModPoly f, const Integer& p) {
  trim(f);
  if (f.empty() || f.back() == 1) return f;
  Integer inv;
  mpz_invert(inv.get_mpz_t(), f.back().get_mpz_t(), p.get_mpz_t());
  for (auto& c : f) c = mod_p(c * inv, p);
  return f;
}

ModPoly poly_gcd_mod(ModPoly a, ModPoly b, const Integer& p) {
  a = poly_make_monic(std::move(a), p);
  b = poly_make_monic(std::move(b), p);
  while (!b.empty()) {
    ModPoly r = poly_rem(std::move(a), b, p);
    a = std::move(b);
    b = poly_make_monic(std::move(r), p);
  }
  return a;
}

// Separates a squarefree product of linear factors into its roots with the
// quadratic-residue sieve gcd((x+a)^((p-1)/2) - 1, f). The shift sequence
// is fixed, so results are reproducible; p odd.
void split_linear(const ModPoly& f, const Integer& p,
                  std::vector<Integer>& roots) {
  if (f.size() <= 1) return;
  if (f.size() == 2) {
    roots.push_back(mod_p(-f[0], p));
    return;
  }
  Integer half = (p - 1) / 2;
  for (Integer a(0); a < 200; ++a) {
    ModPoly w = poly_pow_mod(ModPoly{a, Integer(1)}, half, f, p);
    if (w.empty()) continue;
    w[0] = mod_p(w[0] - 1, p);
    trim(w);
    ModPoly d = poly_gcd_mod(std::move(w), f, p);
    if (d.size() > 1 && d.size() < f.size()) {
      ModPoly q = poly_quot(f, d, p);
      split_linear(d, p, roots);
      split_linear(q, p, roots);
      return;
    }
  }
}

// Distinct roots in F_p of a nonzero polynomial of degree <= 3: the product
// of its linear factors is gcd(x^p - x, f), with x^p computed by modular
// exponentiation in F_p[x]/(f).
std::vector<Integer> roots_mod_prime(ModPoly f, const Integer& p) {
  for (auto& c : f) c = mod_p(c, p);
  f = poly_make_monic(std::move(f), p);
  if (f.size() <= 1) return {};
  if (f.size() == 2) return {mod_p(-f[0], p)};
  ModPoly xp = poly_pow_mod(ModPoly{Integer(0), Integer(1)}, p, f, p);
  if (xp.size() < 2) xp.resize(2, Integer(0));
  xp[1] = mod_p(xp[1] - 1, p);
  trim(xp);
  ModPoly lin = poly_gcd_mod(std::move(xp), f, p);
  std::vector<Integer> roots;
  split_linear(lin, p, roots);
  std::sort(roots.begin(), roots.end());
  return roots;
}

// Hunts for a zero of f mod p whose gradient has a unit coordinate: that is
// a depth-one Hensel certificate, settling solvability at primes far beyond
// residue enumeration. Charts swept: lines y = t z for small t, the line
// z = 0, and the point (1:0:0). Failure means every zero found was singular
// mod p; refutation is out of scope here, so the caller stays undecided.
// Pre: f normalized, p an odd prime not dividing every coefficient.
std::optional<HenselCertificate> smooth_residue_point(const TernaryCubicForm& f,
                                                      const Integer& p) {
  auto coeff = [&](int i) { return f[static_cast<std::size_t>(i)].get_num(); };

  auto certify = [&](const Integer& x, const Integer& y,
                     const Integer& z) -> std::optional<HenselCertificate> {
    if (x == 0 && y == 0 && z == 0) return std::nullopt;
    if (mod_p(f.eval(x, y, z), p) != 0) return std::nullopt;
    std::array<Integer, 3> grad = f.gradient(x, y, z);
    for (int i = 0; i < 3; ++i)
      if (mod_p(grad[static_cast<std::size_t>(i)], p) != 0)
        return HenselCertificate{{x, y, z}, p, i};
    return std::nullopt;
  };

  // F(x, t, 1) and F(x, 1, 0) as cubics in x, from the frozen coefficient
  // order x^3, y^3, z^3, x^2 y, x^2 z, y^2 x, y^2 z, z^2 x, z^2 y, x y z.
  auto chart_poly = [&](const Integer& ty, const Integer& tz) -> ModPoly {
    return {coeff(1) * ty * ty * ty + coeff(2) * tz * tz * tz +
                coeff(6) * ty * ty * tz + coeff(8) * tz * tz * ty,
            coeff(5) * ty * ty + coeff(7) * tz * tz + coeff(9) * ty * tz,
            coeff(3) * ty + coeff(4) * tz, coeff(0)};
  };

  const long kLineSweep = 40;
  auto scan_line = [&](const Integer& ty,
                       const Integer& tz) -> std::optional<HenselCertificate> {
    ModPoly g = chart_poly(ty, tz);
    ModPoly reduced = g;
    for (auto& c : reduced) c = mod_p(c, p);
    trim(reduced);
    if (reduced.empty()) {
      // The whole line lies on the curve mod p; walk it for a smooth point.
      for (long x = 0; x <= kLineSweep; ++x)
        if (auto cert = certify(Integer(x), ty, tz)) return cert;
      return std::nullopt;
    }
    for (const auto& r : roots_mod_prime(g, p))
      if (auto cert = certify(r, ty, tz)) return cert;
    return std::nullopt;
  };

  for (long t = 0; t <= kLineSweep; ++t)
    if (auto cert = scan_line(Integer(t), Integer(1))) return cert;
  if (auto cert = scan_line(Integer(1), Integer(0))) return cert;
  return certify(Integer(1), Integer(0), Integer(0));
}

}  // namespace

PadicCubicVerdict solvable_padic_cubic(const TernaryCubicForm& f, const Integer& p,
                                       int depth, const Integer& presearch_height) {
  if (f.is_zero()) throw precondition_error("solvable_padic_cubic: zero form");
  if (!is_prime(p)) throw precondition_error("solvable_padic_cubic: p must be prime");
  if (depth < 1 || depth > 60) throw precondition_error("solvable_padic_cubic: depth must be in [1, 60]");

  TernaryCubicForm g = f.normalized();
  PadicCubicVerdict out;
  out.prime = p;

  // An exact rational zero settles the place outright, and it is the only
  // way to certify forms whose zeros are all singular (a triple line, say).
  if (presearch_height > 0) {
    if (auto pt = find_projective_zero(g, presearch_height)) {
      out.status = Solvability::Solvable;
      out.witness = *pt;
      return out;
    }
  }

  if (p > 100000) {
    // Diagonal forms away from the coefficients stay smooth mod p, and a
    // smooth plane cubic over F_p always has a point (the Hasse bound keeps
    // the count positive), which lifts. Anything else gets a direct hunt
    // for a unit-gradient residue zero via polynomial root extraction;
    // residue enumeration is hopeless this far out.
    if (auto d = g.diagonal_coefficients()) {
      Integer prod = 3 * (*d)[0] * (*d)[1] * (*d)[2];
      if (!mpz_divisible_p(prod.get_mpz_t(), p.get_mpz_t())) {
        out.status = Solvability::Solvable;
        out.note = "smooth reduction; a residue point exists and lifts";
        return out;
      }
    }
    if (auto cert = smooth_residue_point(g, p)) {
      out.status = Solvability::Solvable;
      out.certificate = *cert;
      out.note = "unit-gradient residue zero found by root extraction";
      return out;
    }
    out.status = Solvability::Undecided;
    out.note = "prime exceeds the residue search bound";
    return out;
  }

  // Breadth-first refinement of residue solutions, one affine patch per
  // unit coordinate: (1, u, v), (p u, 1, v), (p u, p v, 1). Every zero with
  // a unit coordinate reduces into exactly one patch, so dead trees refute.
  struct Node {
    int patch;
    int level;
    Integer u, v;
  };
  auto representative = [&](const Node& nd) -> std::array<Integer, 3> {
    switch (nd.patch) {
      case 0: return {Integer(1), nd.u, nd.v};
      case 1: return {p * nd.u, Integer(1), nd.v};
      default: return {p * nd.u, p * nd.v, Integer(1)};
    }
  };

  // Inspects a surviving node: an exact zero gives a witness, Newton's
  // inequality v(F) > 2 v(dF_i) gives a lifting certificate.
  auto inspect = [&](const std::array<Integer, 3>& pt, const Integer& value) -> bool {
    if (value == 0) {
      out.status = Solvability::Solvable;
      out.witness = ProjectivePoint::from_integers({pt[0], pt[1], pt[2]});
      return true;
    }
    std::array<Integer, 3> grad = g.gradient(pt[0], pt[1], pt[2]);
    PadicValuation t = valuation(value, p);
    for (int i = 0; i < 3; ++i) {
      PadicValuation dv = valuation(grad[static_cast<std::size_t>(i)], p);
      if (!dv.is_infinity() && (dv + dv) < t) {
        out.status = Solvability::Solvable;
        out.certificate = HenselCertificate{{pt[0], pt[1], pt[2]}, p, i};
        return true;
      }
    }
    return false;
  };

  std::deque<Node> queue;
  for (int patch = 0; patch < 3; ++patch) {
    Node root{patch, 0, Integer(0), Integer(0)};
    auto pt = representative(root);
    if (inspect(pt, g.eval(pt[0], pt[1], pt[2]))) return out;
    queue.push_back(root);
  }

  const long p_long = static_cast<long>(p.get_si());
  long evals = 0;
  const long kEvalBudget = 2'000'000;
  int max_live_level = 0;
  bool depth_reached = false;

  while (!queue.empty()) {
    Node nd = queue.front();
    queue.pop_front();
    if (nd.level >= depth) {
      depth_reached = true;
      continue;
    }
    if (evals > kEvalBudget) {
      out.status = Solvability::Undecided;
      out.note = "residue search budget exhausted";
      return out;
    }
    Integer step = pow_int(p, static_cast<unsigned long>(nd.level));
    Integer child_modulus = step * p;
    for (long a = 0; a < p_long; ++a) {
      for (long b = 0; b < p_long; ++b) {
        Node child{nd.patch, nd.level + 1, nd.u + a * step, nd.v + b * step};
        auto pt = representative(child);
        Integer value = g.eval(pt[0], pt[1], pt[2]);
        ++evals;
        if (!mpz_divisible_p(value.get_mpz_t(), child_modulus.get_mpz_t())) continue;
        if (inspect(pt, value)) return out;
        queue.push_back(child);
        max_live_level = std::max(max_live_level, child.level);
      }
    }
  }

  if (depth_reached) {
    out.status = Solvability::Undecided;
    out.note = "survivors alive at the depth limit";
    return out;
  }
  out.status = Solvability::Unsolvable;
  out.refuted_modulus = pow_int(p, static_cast<unsigned long>(max_live_level + 1));
  return out;
}

bool solvable_real_cubic(const TernaryCubicForm& f) {
  if (f.is_zero()) throw precondition_error("solvable_real_cubic: zero form");
  // Odd degree: f(-v) = -f(v), so f changes sign on the sphere and vanishes
  // somewhere on it.
  return true;
}

namespace {

Monomial xyz_monomial(int ex, int ey, int ez) {
  Monomial m;
  m.e[static_cast<std::size_t>(Var::x)] = static_cast<std::uint8_t>(ex);
  m.e[static_cast<std::size_t>(Var::y)] = static_cast<std::uint8_t>(ey);
  m.e[static_cast<std::size_t>(Var::z)] = static_cast<std::uint8_t>(ez);
  return m;
}

// The three partial derivatives of the cubic, as polynomials in x, y, z.
std::array<MultiPoly, 3> partial_derivatives(const TernaryCubicForm& f) {
  const auto& a = f.coeffs();
  auto build = [](std::initializer_list<std::pair<Rational, Monomial>> terms) {
    MultiPoly p;
    for (const auto& [c, m] : terms)
      if (c != 0) p += MultiPoly::monomial(m, c);
    return p;
  };
  MultiPoly dx = build({{3 * a[0], xyz_monomial(2, 0, 0)},
                        {2 * a[3], xyz_monomial(1, 1, 0)},
                        {2 * a[4], xyz_monomial(1, 0, 1)},
                        {a[5], xyz_monomial(0, 2, 0)},
                        {a[7], xyz_monomial(0, 0, 2)},
                        {a[9], xyz_monomial(0, 1, 1)}});
  MultiPoly dy = build({{a[3], xyz_monomial(2, 0, 0)},
                        {3 * a[1], xyz_monomial(0, 2, 0)},
                        {2 * a[5], xyz_monomial(1, 1, 0)},
                        {2 * a[6], xyz_monomial(0, 1, 1)},
                        {a[8], xyz_monomial(0, 0, 2)},
                        {a[9], xyz_monomial(1, 0, 1)}});
  MultiPoly dz = build({{a[4], xyz_monomial(2, 0, 0)},
                        {a[6], xyz_monomial(0, 2, 0)},
                        {3 * a[2], xyz_monomial(0, 0, 2)},
                        {2 * a[7], xyz_monomial(1, 0, 1)},
                        {2 * a[8], xyz_monomial(0, 1, 1)},
                        {a[9], xyz_monomial(1, 1, 0)}});
  return {dx, dy, dz};
}

}  // namespace

RelevantPrimes relevant_primes_cubic(const TernaryCubicForm& f) {
  if (f.is_zero()) throw precondition_error("relevant_primes_cubic: zero form");
  TernaryCubicForm g = f.normalized();
  std::set<Integer> primes;

  if (auto d = g.diagonal_coefficients()) {
    primes = {Integer(2), Integer(3)};
    for (const auto& ai : *d)
      for (const auto& [p, e] : factor(ai)) {
        (void)e;
        primes.insert(p);
      }
    return {true, std::vector<Integer>(primes.begin(), primes.end())};
  }

  for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) primes.insert(Integer(p));

  // Completeness certificate: writing x^4, y^4, z^4 as combinations of the
  // partial derivatives (degree-2 multipliers, degree-4 identity) proves
  // that mod p the partials only vanish together at the origin, for every p
  // that keeps the combination integral. At such p any residue zero of the
  // form is smooth and lifts, so only the spoiled primes can obstruct.
  auto partials = partial_derivatives(g);

  std::vector<Monomial> quartics;
  std::map<Monomial, std::size_t, GrlexGreater> row_of;
  for (int ex = 4; ex >= 0; --ex)
    for (int ey = 4 - ex; ey >= 0; --ey) {
      Monomial m = xyz_monomial(ex, ey, 4 - ex - ey);
      row_of[m] = quartics.size();
      quartics.push_back(m);
    }
  std::vector<Monomial> quadratics;
  for (int ex = 2; ex >= 0; --ex)
    for (int ey = 2 - ex; ey >= 0; --ey) quadratics.push_back(xyz_monomial(ex, ey, 2 - ex - ey));

  QMat system(quartics.size(), QVec(quadratics.size() * 3, Rational(0)));
  std::size_t col = 0;
  for (const auto& partial : partials) {
    for (const auto& mult : quadratics) {
      MultiPoly generator = MultiPoly::monomial(mult, Rational(1)) * partial;
      for (const auto& [mon, coeff] : generator.terms()) system[row_of.at(mon)][col] = coeff;
      ++col;
    }
  }

  bool certified = true;
  for (const Monomial& target : {xyz_monomial(4, 0, 0), xyz_monomial(0, 4, 0), xyz_monomial(0, 0, 4)}) {
    QVec rhs(quartics.size(), Rational(0));
    rhs[row_of.at(target)] = 1;
    auto combo = q_solve(system, rhs);
    if (!combo) {
      certified = false;
      break;
    }
    for (const auto& c : *combo) {
      Integer den = c.get_den();
      if (den == 1) continue;
      for (const auto& [p, e] : factor(den)) {
        (void)e;
        primes.insert(p);
      }
    }
  }

  if (!certified) {
    // Singular form: no finite complete list exists in general. Ship the
    // coefficient support as the useful suspects, marked uncertified.
    for (const auto& c : g.coeffs())
      if (c != 0)
        for (const auto& p : prime_support(c)) primes.insert(p);
    return {false, std::vector<Integer>(primes.begin(), primes.end())};
  }
  return {true, std::vector<Integer>(primes.begin(), primes.end())};
}

EverywhereLocalVerdict everywhere_locally_solvable(const TernaryCubicForm& f, int depth) {
  if (f.is_zero()) throw precondition_error("everywhere_locally_solvable: zero form");
  TernaryCubicForm g = f.normalized();

  EverywhereLocalVerdict out;
  RelevantPrimes relevant = relevant_primes_cubic(g);
  out.prime_set_certified = relevant.certified;
  out.primes_checked = relevant.primes;

  bool any_undecided = false;
  for (const Integer& p : relevant.primes) {
    PadicCubicVerdict verdict = solvable_padic_cubic(g, p, depth);
    out.verdicts.push_back(verdict);
    if (verdict.status == Solvability::Unsolvable) {
      out.status = Solvability::Unsolvable;
      out.failing_prime = p;
      return out;
    }
    if (verdict.status == Solvability::Undecided) any_undecided = true;
    if (verdict.witness && !out.rational_point) out.rational_point = verdict.witness;
  }

  if (any_undecided) {
    out.status = Solvability::Undecided;
    out.note = "some prime left undecided";
    return out;
  }
  if (out.prime_set_certified) {
    out.status = Solvability::Solvable;
    return out;
  }
  // Uncertified prime list: only an exact rational zero can still settle
  // every completion at once.
  if (!out.rational_point) {
    if (auto pt = find_projective_zero(g, Integer(100))) out.rational_point = *pt;
  }
  if (out.rational_point) {
    out.status = Solvability::Solvable;
    out.note = "rational zero settles every place";
    return out;
  }
  out.status = Solvability::Undecided;
  out.note = "prime list not certified complete";
  return out;
}

QMat gram_matrix(const QuadraticForm6& q) {
  QMat m(6, QVec(6, Rational(0)));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = q.entry(i, j);
  return m;
}

}  // namespace tcf
