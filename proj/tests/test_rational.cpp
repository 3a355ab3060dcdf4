#include "tcf/rational.hpp"

#include "doctest.h"

using namespace tcf;

TEST_CASE("make_rational reduces to canonical form") {
  Rational q = make_rational(1555200, 1555200);
  CHECK(q == 1);
  CHECK(to_string(q) == "1");
  CHECK(to_string(make_rational(6, -4)) == "-3/2");
  CHECK(to_string(make_rational(0, 7)) == "0");
  CHECK_THROWS_AS(make_rational(1, 0), precondition_error);
}

TEST_CASE("string round trip") {
  for (const char* s : {"0", "1", "-1", "3/50", "-432", "123456789012345678901234567891/7"}) {
    CHECK(to_string(parse_rational(s)) == s);
  }
  CHECK(parse_rational("4/6") == make_rational(2, 3));
  CHECK_THROWS_AS(parse_rational(""), precondition_error);
  CHECK_THROWS_AS(parse_rational("1/0"), precondition_error);
  CHECK_THROWS_AS(parse_rational("x"), precondition_error);
  CHECK_THROWS_AS(parse_rational("1/2/3"), precondition_error);
  CHECK_THROWS_AS(parse_rational("1.5"), precondition_error);
}

TEST_CASE("valuation") {
  CHECK(valuation(parse_rational("3/50"), 5) == PadicValuation::finite(-2));
  CHECK(valuation(parse_rational("3/50"), 3) == PadicValuation::finite(1));
  CHECK(valuation(parse_rational("3/50"), 7) == PadicValuation::finite(0));
  CHECK(valuation(Rational(0), 5).is_infinity());
  CHECK(valuation(Integer(-432), 2) == PadicValuation::finite(4));
  CHECK(valuation(Integer(-432), 3) == PadicValuation::finite(3));
  CHECK_THROWS_AS(valuation(Rational(1), 6), precondition_error);
  CHECK_THROWS_AS(valuation(Rational(1), 1), precondition_error);
}

TEST_CASE("valuation is additive with infinity absorbing") {
  Rng64 rng(42);
  for (int i = 0; i < 200; ++i) {
    Integer p(std::vector<long>{2, 3, 5, 13}[static_cast<size_t>(rng.next_in(0, 3))]);
    Rational a = make_rational(rng.next_in(-500, 500), rng.next_in(1, 400));
    Rational b = make_rational(rng.next_in(-500, 500), rng.next_in(1, 400));
    PadicValuation lhs = valuation(Rational(a * b), p);
    PadicValuation rhs = valuation(a, p) + valuation(b, p);
    CHECK(lhs == rhs);
  }
  CHECK((valuation(Rational(0), 3) + PadicValuation::finite(5)).is_infinity());

  CHECK(PadicValuation::finite(-3) < PadicValuation::finite(0));
  CHECK(PadicValuation::finite(7) < PadicValuation::infinity());
  CHECK_FALSE(PadicValuation::infinity() < PadicValuation::infinity());
  CHECK(PadicValuation::infinity() > PadicValuation::finite(1L << 40));
}

TEST_CASE("unit_part strips exactly the p-power") {
  Rational u = unit_part(parse_rational("3/50"), 5);
  CHECK(u == parse_rational("3/2"));
  CHECK(valuation(u, 5) == PadicValuation::finite(0));
}

TEST_CASE("factor") {
  auto f = factor(Integer(-432));
  REQUIRE(f.size() == 2);
  CHECK(f[0] == std::pair<Integer, int>(2, 4));
  CHECK(f[1] == std::pair<Integer, int>(3, 3));
  CHECK(factor(Integer(1)).empty());
  // Semiprime beyond the trial division bound exercises the rho path.
  Integer a(1000003), b(1000033);
  auto g = factor(Integer(a * b));
  REQUIRE(g.size() == 2);
  CHECK(g[0].first == a);
  CHECK(g[1].first == b);
  CHECK_THROWS_AS(factor(Integer(0)), precondition_error);
}

TEST_CASE("cube_free_part") {
  auto [c, k] = cube_free_part(Integer(-432));
  CHECK(c == -2);
  CHECK(k == 6);
  CHECK(c * k * k * k == -432);
  CHECK(cube_free_part(Integer(60)) == std::pair<Integer, Integer>(60, 1));
  CHECK(cube_free_part(Integer(8)) == std::pair<Integer, Integer>(1, 2));
  CHECK(cube_free_part(Integer(-1)) == std::pair<Integer, Integer>(-1, 1));

  Rng64 rng(7);
  for (int i = 0; i < 200; ++i) {
    Integer n(rng.next_in(1, 100000));
    auto [cf, cr] = cube_free_part(n);
    CHECK(cf * cr * cr * cr == n);
    for (const auto& [p, e] : factor(cf)) {
      (void)p;
      CHECK(e < 3);
    }
  }
}

TEST_CASE("exact_sqrt") {
  CHECK(exact_sqrt(parse_rational("9/4")) == parse_rational("3/2"));
  CHECK(exact_sqrt(Rational(0)) == Rational(0));
  CHECK(!exact_sqrt(Rational(2)).has_value());
  CHECK(!exact_sqrt(parse_rational("4/3")).has_value());
  CHECK_THROWS_AS(exact_sqrt(Rational(-4)), precondition_error);
}

TEST_CASE("exact_cbrt") {
  CHECK(exact_cbrt(Integer(-27)) == Integer(-3));
  CHECK(exact_cbrt(Integer(1728)) == Integer(12));
  CHECK(!exact_cbrt(Integer(4)).has_value());
}

TEST_CASE("prime_support") {
  auto s = prime_support(parse_rational("-60/7"));
  REQUIRE(s.size() == 4);
  CHECK(s[0] == 2);
  CHECK(s[1] == 3);
  CHECK(s[2] == 5);
  CHECK(s[3] == 7);
  CHECK(prime_support(Rational(0)).empty());
}

TEST_CASE("is_prime") {
  CHECK(is_prime(Integer(2)));
  CHECK(is_prime(Integer(13)));
  CHECK(!is_prime(Integer(1)));
  CHECK(!is_prime(Integer(60)));
}
