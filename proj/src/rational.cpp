#include "tcf/rational.hpp"

#include <algorithm>
#include <map>

namespace tcf {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw precondition_error("make_rational: zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const Integer& n) { return n.get_str(); }

Rational parse_rational(const std::string& s) {
  if (s.empty()) throw precondition_error("parse_rational: empty string");
  auto slash = s.find('/');
  auto check_int = [&](const std::string& part) {
    if (part.empty()) throw precondition_error("parse_rational: malformed '" + s + "'");
    std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (i == part.size()) throw precondition_error("parse_rational: malformed '" + s + "'");
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9')
        throw precondition_error("parse_rational: malformed '" + s + "'");
  };
  if (slash == std::string::npos) {
    check_int(s);
    return Rational(Integer(s));
  }
  std::string num = s.substr(0, slash), den = s.substr(slash + 1);
  check_int(num);
  check_int(den);
  Integer d(den);
  if (d == 0) throw precondition_error("parse_rational: zero denominator in '" + s + "'");
  return make_rational(Integer(num), d);
}

bool is_prime(const Integer& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

PadicValuation valuation(const Integer& n, const Integer& p) {
  if (p < 2 || !is_prime(p)) throw precondition_error("valuation: p must be prime");
  if (n == 0) return PadicValuation::infinity();
  Integer rest;
  unsigned long v = mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
  return PadicValuation::finite(static_cast<long>(v));
}

PadicValuation valuation(const Rational& q, const Integer& p) {
  if (p < 2 || !is_prime(p)) throw precondition_error("valuation: p must be prime");
  if (q == 0) return PadicValuation::infinity();
  Integer rest;
  long vn = static_cast<long>(
      mpz_remove(rest.get_mpz_t(), q.get_num().get_mpz_t(), p.get_mpz_t()));
  long vd = static_cast<long>(
      mpz_remove(rest.get_mpz_t(), q.get_den().get_mpz_t(), p.get_mpz_t()));
  return PadicValuation::finite(vn - vd);
}

Rational unit_part(const Rational& q, const Integer& p) {
  if (q == 0) throw precondition_error("unit_part: q must be nonzero");
  long v = valuation(q, p).value();
  Rational pw(pow_int(p, static_cast<unsigned long>(v < 0 ? -v : v)));
  return v >= 0 ? Rational(q / pw) : Rational(q * pw);
}

namespace {

// Pollard rho (Floyd cycle finding). Only reached for composites that
// survive trial division, so inputs are odd and have no factor below 10^4.
// Deterministic: the polynomial increment starts at 1 and is bumped on failure.
Integer pollard_rho(const Integer& n) {
  for (Integer c = 1;; ++c) {
    Integer x = 2, y = 2, d = 1;
    while (d == 1) {
      x = (x * x + c) % n;
      y = (y * y + c) % n;
      y = (y * y + c) % n;
      Integer diff = x > y ? x - y : y - x;
      if (diff == 0) break;
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != 1 && d != n) return d;
  }
}

void factor_into(const Integer& n, std::map<Integer, int>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out[n] += 1;
    return;
  }
  Integer d = pollard_rho(n);
  factor_into(d, out);
  factor_into(Integer(n / d), out);
}

}  // namespace

std::vector<std::pair<Integer, int>> factor(const Integer& n) {
  if (n == 0) throw precondition_error("factor: n must be nonzero");
  Integer m = abs(n);
  std::map<Integer, int> acc;
  for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      acc[Integer(p)] += 1;
      m /= p;
    }
  }
  for (Integer p = 17; p * p <= m && p < 10000; p += 2) {
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
      acc[p] += 1;
      m /= p;
    }
  }
  if (m > 1) factor_into(m, acc);
  return {acc.begin(), acc.end()};
}

std::pair<Integer, Integer> cube_free_part(const Integer& n) {
  if (n == 0) throw precondition_error("cube_free_part: n must be nonzero");
  Integer c = n < 0 ? Integer(-1) : Integer(1), k = 1;
  for (const auto& [p, e] : factor(n)) {
    c *= pow_int(p, e % 3);
    k *= pow_int(p, e / 3);
  }
  return {c, k};
}

std::optional<Rational> exact_sqrt(const Rational& q) {
  if (q < 0) throw precondition_error("exact_sqrt: q must be >= 0");
  if (!mpz_perfect_square_p(q.get_num().get_mpz_t()) ||
      !mpz_perfect_square_p(q.get_den().get_mpz_t()))
    return std::nullopt;
  Integer rn, rd;
  mpz_sqrt(rn.get_mpz_t(), q.get_num().get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), q.get_den().get_mpz_t());
  return make_rational(rn, rd);
}

std::optional<Integer> exact_cbrt(const Integer& n) {
  Integer r;
  Integer m = abs(n);
  int exact = mpz_root(r.get_mpz_t(), m.get_mpz_t(), 3);
  if (!exact) return std::nullopt;
  return n < 0 ? Integer(-r) : r;
}

std::vector<Integer> prime_support(const Rational& q) {
  if (q == 0) return {};
  std::vector<Integer> out;
  for (const auto& [p, e] : factor(Integer(q.get_num() * q.get_den())))
    out.push_back(p);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace tcf
