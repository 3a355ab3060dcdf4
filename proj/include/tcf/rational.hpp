#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tcf {

using Integer = mpz_class;
using Rational = mpq_class;

/// Thrown when an argument violates a documented precondition.
struct precondition_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// num/den as a canonical rational; den must be nonzero.
Rational make_rational(const Integer& num, const Integer& den);

/// Canonical decimal form "p/q" with q > 0 and gcd(p,q) = 1; "/q" omitted when q = 1.
std::string to_string(const Rational& q);
std::string to_string(const Integer& n);

/// Inverse of to_string. Accepts "p" and "p/q" with optional leading '-'.
Rational parse_rational(const std::string& s);

/// A p-adic valuation: an integer or +infinity (the valuation of 0).
/// Kept as an explicit two-state value so the infinity case can never be
/// confused with a large finite valuation.
class PadicValuation {
 public:
  static PadicValuation finite(long v) { return PadicValuation(false, v); }
  static PadicValuation infinity() { return PadicValuation(true, 0); }

  bool is_infinity() const { return infinite_; }
  long value() const {
    if (infinite_) throw std::domain_error("PadicValuation: infinite valuation has no finite value");
    return value_;
  }

  PadicValuation operator+(const PadicValuation& o) const {
    if (infinite_ || o.infinite_) return infinity();
    return finite(value_ + o.value_);
  }
  bool operator==(const PadicValuation& o) const {
    return infinite_ == o.infinite_ && (infinite_ || value_ == o.value_);
  }
  /// Infinity compares greater than every finite valuation.
  bool operator<(const PadicValuation& o) const {
    if (infinite_) return false;
    if (o.infinite_) return true;
    return value_ < o.value_;
  }
  bool operator>(const PadicValuation& o) const { return o < *this; }

 private:
  PadicValuation(bool inf, long v) : infinite_(inf), value_(v) {}
  bool infinite_;
  long value_;
};

/// True if n is prime (Baillie-PSW / Miller-Rabin; exact for any input this
/// artifact will ever see).
bool is_prime(const Integer& n);

/// v_p(q); q = 0 gives infinity. p must be prime.
PadicValuation valuation(const Rational& q, const Integer& p);
PadicValuation valuation(const Integer& n, const Integer& p);

/// Unit part of q at p: q / p^v_p(q). q must be nonzero.
Rational unit_part(const Rational& q, const Integer& p);

/// Prime factorization of |n| as (prime, exponent) pairs, primes ascending.
/// n must be nonzero. Trial division with a Pollard rho fallback.
std::vector<std::pair<Integer, int>> factor(const Integer& n);

/// n = c * k^3 with c cube-free and k > 0; returns (c, k). c keeps the sign
/// of n. n must be nonzero.
std::pair<Integer, Integer> cube_free_part(const Integer& n);

/// Exact rational square root, or nullopt when q is not a square. q must be >= 0.
std::optional<Rational> exact_sqrt(const Rational& q);

/// Exact integer cube root, or nullopt when n is not a perfect cube.
std::optional<Integer> exact_cbrt(const Integer& n);

/// Ascending list of the distinct primes dividing numerator or denominator.
std::vector<Integer> prime_support(const Rational& q);

inline Integer pow_int(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

/// Deterministic 64-bit generator (xorshift-style splitmix) used for seeded
/// test corpora. Portable across platforms, unlike std::uniform_int_distribution.
class Rng64 {
 public:
  explicit Rng64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  /// Uniform-enough integer in [lo, hi] (desk-scale ranges only).
  long next_in(long lo, long hi) {
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::uint64_t state_;
};

}  // namespace tcf
