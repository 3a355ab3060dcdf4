#include "tcf/search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>

namespace tcf {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

// The root isolation below is written once against this small arithmetic
// interface and instantiated twice: with 128-bit machine integers for the
// hot scan (the caller guarantees no overflow via coefficient and height
// bounds) and with arbitrary-precision integers as the general fallback.

struct I128Ops {
  using I = i128;
  static I from_ll(long long v) { return v; }
  static I from_integer(const Integer& v) { return mpz_get_si(v.get_mpz_t()); }
  static Integer to_integer(const I& v) { return Integer(static_cast<long>(v)); }
  static I isqrt(const I& n) {
    u128 u = static_cast<u128>(n);
    u128 s = static_cast<u128>(sqrtl(static_cast<long double>(u)));
    while (s > 0 && s * s > u) --s;
    while ((s + 1) * (s + 1) <= u) ++s;
    return static_cast<I>(s);
  }
  static I floor_div(const I& n, const I& d) {  // pre: d > 0
    I q = n / d, r = n % d;
    return r < 0 ? q - 1 : q;
  }
};

struct MpzOps {
  using I = Integer;
  static I from_ll(long long v) { return I(static_cast<long>(v)); }
  static const I& from_integer(const Integer& v) { return v; }
  static Integer to_integer(const I& v) { return v; }
  static I isqrt(const I& n) {
    I s;
    mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
    return s;
  }
  static I floor_div(const I& n, const I& d) {
    I q;
    mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    return q;
  }
};

// Integer roots of c3 t^3 + c2 t^2 + c1 t + c0 on [lo, hi], written to
// `out` ascending; returns their number. Pre: not all coefficients zero.
//
// For the genuine cubic case the range is cut at integer brackets of the
// critical points (computed from the integer square root of the
// derivative's reduced discriminant c2^2 - 3 c3 c1, with both neighbours
// included so that no bracket error can hide a critical point), leaving
// segments on which the polynomial is monotone and a sign-change binary
// search is complete.
template <class Ops, class I = typename Ops::I>
int roots_in_range(I c3, I c2, I c1, I c0, const I& lo, const I& hi, I out[3]) {
  int n = 0;
  auto push = [&](const I& r) {
    if (r < lo || r > hi) return;
    for (int i = 0; i < n; ++i)
      if (out[i] == r) return;
    out[n++] = r;
  };

  if (c3 == 0) {
    if (c2 == 0) {
      if (c1 == 0) return 0;  // nonzero constant
      if (c0 % c1 == 0) push(I(-(c0 / c1)));
    } else {
      I d = c1 * c1 - 4 * c2 * c0;
      if (d >= 0) {
        I s = Ops::isqrt(d);
        if (s * s == d) {
          I den = 2 * c2;
          for (int sign : {-1, 1}) {
            I num = -c1 + sign * s;
            if (num % den == 0) push(I(num / den));
          }
        }
      }
    }
    std::sort(out, out + n);
    return n;
  }

  if (c3 < 0) {
    c3 = -c3;
    c2 = -c2;
    c1 = -c1;
    c0 = -c0;
  }
  auto eval = [&](const I& t) { return I(((c3 * t + c2) * t + c1) * t + c0); };

  I bounds[12];
  int nb = 0;
  bounds[nb++] = lo;
  bounds[nb++] = hi;
  I disc = c2 * c2 - 3 * c3 * c1;
  if (disc > 0) {
    I s = Ops::isqrt(disc);
    I den = 3 * c3;
    I nums[4] = {I(-c2 - s - 1), I(-c2 - s), I(-c2 + s), I(-c2 + s + 1)};
    for (const I& num : nums) {
      I q = Ops::floor_div(num, den);
      I cands[2] = {q, I(q + 1)};
      for (const I& cand : cands)
        if (cand > lo && cand < hi) bounds[nb++] = cand;
    }
  }
  std::sort(bounds, bounds + nb);
  nb = static_cast<int>(std::unique(bounds, bounds + nb) - bounds);

  for (int i = 0; i + 1 < nb; ++i) {
    I a = bounds[i], b = bounds[i + 1];
    I fa = eval(a), fb = eval(b);
    if (fa == 0) push(a);
    if (fb == 0) push(b);
    if ((fa < 0) == (fb < 0)) continue;  // monotone segment without a crossing
    while (b - a > 1) {
      I mid = Ops::floor_div(I(a + b), I(2));
      I fm = eval(mid);
      if (fm == 0) {
        push(mid);  // monotone: the only zero in this segment
        break;
      }
      if ((fm < 0) == (fa < 0)) {
        a = mid;
        fa = fm;
      } else {
        b = mid;
      }
    }
  }
  std::sort(out, out + n);
  return n;
}

// Per-modulus congruence table: ok[xr * m + yr] says whether some z makes
// the form vanish mod m. A true integer zero passes every such table, so
// sieving never loses a point.
struct SieveTable {
  int m = 1;
  std::vector<std::uint8_t> ok;
};

SieveTable build_sieve(const std::array<Integer, 10>& A, int m) {
  SieveTable t;
  t.m = m;
  t.ok.assign(static_cast<std::size_t>(m) * m, 0);
  std::array<long long, 10> a;
  for (int i = 0; i < 10; ++i)
    a[i] = static_cast<long long>(mpz_fdiv_ui(A[i].get_mpz_t(), static_cast<unsigned long>(m)));
  for (long long x = 0; x < m; ++x) {
    long long x2 = x * x % m;
    for (long long y = 0; y < m; ++y) {
      long long y2 = y * y % m;
      // Coefficients of the form as a cubic in z, reduced mod m.
      long long d3 = a[2];
      long long d2 = (a[7] * x + a[8] * y) % m;
      long long d1 = (a[4] * x2 + a[6] * y2 + a[9] * x % m * y) % m;
      long long d0 = (a[0] * x2 % m * x + a[1] * y2 % m * y + a[3] * x2 % m * y +
                      a[5] * y2 % m * x) %
                     m;
      std::uint8_t good = 0;
      for (long long z = 0; z < m && !good; ++z)
        good = (((d3 * z + d2) % m * z + d1) % m * z + d0) % m == 0;
      t.ok[static_cast<std::size_t>(x) * m + y] = good;
    }
  }
  return t;
}

constexpr int kSieveModuli[5] = {144, 5, 7, 11, 13};

template <class Ops>
std::optional<ProjectivePoint> scan(const std::array<Integer, 10>& A, long long H) {
  using I = typename Ops::I;
  std::array<I, 10> a;
  for (int i = 0; i < 10; ++i) a[i] = Ops::from_integer(A[i]);

  SieveTable tabs[5];
  for (int i = 0; i < 5; ++i) tabs[i] = build_sieve(A, kSieveModuli[i]);

  auto survive_rest = [&](long long x, long long y) {
    for (int i = 1; i < 5; ++i) {
      long long m = tabs[i].m;
      long long xr = (x % m + m) % m, yr = (y % m + m) % m;
      if (!tabs[i].ok[static_cast<std::size_t>(xr) * m + yr]) return false;
    }
    return true;
  };

  I out[3];
  auto try_pair = [&](long long x, long long y) -> std::optional<ProjectivePoint> {
    I xi = Ops::from_ll(x), yi = Ops::from_ll(y);
    I x2 = xi * xi, y2 = yi * yi;
    I c3 = a[2];
    I c2 = a[7] * xi + a[8] * yi;
    I c1 = a[4] * x2 + a[6] * y2 + a[9] * xi * yi;
    I c0 = a[0] * x2 * xi + a[1] * y2 * yi + a[3] * x2 * yi + a[5] * y2 * xi;
    if (c3 == 0 && c2 == 0 && c1 == 0 && c0 == 0)
      return ProjectivePoint::from_integers(
          {Integer(static_cast<long>(x)), Integer(static_cast<long>(y)), 0});
    int nr = roots_in_range<Ops>(c3, c2, c1, c0, Ops::from_ll(-H), Ops::from_ll(H), out);
    if (nr == 0) return std::nullopt;
    return ProjectivePoint::from_integers(
        {Integer(static_cast<long>(x)), Integer(static_cast<long>(y)), Ops::to_integer(out[0])});
  };

  // (0 : 0 : 1) is a zero exactly when the z^3 coefficient vanishes; with
  // that settled, every remaining pair may take z = -H .. H freely.
  if (A[2] == 0) return ProjectivePoint::from_integers({0, 0, 1});

  const int m0 = tabs[0].m;
  {
    const std::uint8_t* row = &tabs[0].ok[0];
    int yr = 1 % m0;
    for (long long y = 1; y <= H; ++y) {
      if (row[yr] && survive_rest(0, y))
        if (auto p = try_pair(0, y)) return p;
      if (++yr == m0) yr = 0;
    }
  }
  for (long long x = 1; x <= H; ++x) {
    const std::uint8_t* row = &tabs[0].ok[static_cast<std::size_t>(x % m0) * m0];
    int yr = static_cast<int>(((-H) % m0 + m0) % m0);
    for (long long y = -H; y <= H; ++y) {
      if (row[yr] && survive_rest(x, y))
        if (auto p = try_pair(x, y)) return p;
      if (++yr == m0) yr = 0;
    }
  }
  return std::nullopt;
}

// Exhaustive sibling of scan: collects every zero instead of stopping at
// the first. Pairs are still sieved; on a surviving pair all roots of the
// z-cubic are kept, and a pair whose z-polynomial vanishes identically (a
// line on the cubic) contributes the whole z range.
template <class Ops>
std::set<ProjectivePoint> scan_all(const std::array<Integer, 10>& A, long long H) {
  using I = typename Ops::I;
  std::array<I, 10> a;
  for (int i = 0; i < 10; ++i) a[i] = Ops::from_integer(A[i]);

  SieveTable tabs[5];
  for (int i = 0; i < 5; ++i) tabs[i] = build_sieve(A, kSieveModuli[i]);

  auto survives = [&](long long x, long long y) {
    for (int i = 0; i < 5; ++i) {
      long long m = tabs[i].m;
      long long xr = (x % m + m) % m, yr = (y % m + m) % m;
      if (!tabs[i].ok[static_cast<std::size_t>(xr) * m + yr]) return false;
    }
    return true;
  };

  std::set<ProjectivePoint> found;
  I out[3];
  auto collect_pair = [&](long long x, long long y) {
    I xi = Ops::from_ll(x), yi = Ops::from_ll(y);
    I x2 = xi * xi, y2 = yi * yi;
    I c3 = a[2];
    I c2 = a[7] * xi + a[8] * yi;
    I c1 = a[4] * x2 + a[6] * y2 + a[9] * xi * yi;
    I c0 = a[0] * x2 * xi + a[1] * y2 * yi + a[3] * x2 * yi + a[5] * y2 * xi;
    if (c3 == 0 && c2 == 0 && c1 == 0 && c0 == 0) {
      for (long long z = -H; z <= H; ++z)
        if (x != 0 || y != 0 || z != 0)
          found.insert(ProjectivePoint::from_integers({Integer(static_cast<long>(x)),
                                                       Integer(static_cast<long>(y)),
                                                       Integer(static_cast<long>(z))}));
      return;
    }
    int nr = roots_in_range<Ops>(c3, c2, c1, c0, Ops::from_ll(-H), Ops::from_ll(H), out);
    for (int i = 0; i < nr; ++i)
      found.insert(ProjectivePoint::from_integers(
          {Integer(static_cast<long>(x)), Integer(static_cast<long>(y)), Ops::to_integer(out[i])}));
  };

  if (A[2] == 0) found.insert(ProjectivePoint::from_integers({0, 0, 1}));
  for (long long y = 1; y <= H; ++y)
    if (survives(0, y)) collect_pair(0, y);
  for (long long x = 1; x <= H; ++x)
    for (long long y = -H; y <= H; ++y)
      if (survives(x, y)) collect_pair(x, y);
  return found;
}

}  // namespace

std::vector<Integer> integer_cubic_roots(const std::array<Integer, 4>& c, const Integer& lo,
                                         const Integer& hi) {
  if (c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 0)
    throw precondition_error("integer_cubic_roots: zero polynomial");
  if (lo > hi) throw precondition_error("integer_cubic_roots: empty range");
  Integer out[3];
  int n = roots_in_range<MpzOps>(c[0], c[1], c[2], c[3], lo, hi, out);
  return std::vector<Integer>(out, out + n);
}

std::optional<ProjectivePoint> find_projective_zero(const TernaryCubicForm& f,
                                                    const Integer& height) {
  if (height < 1 || mpz_sizeinbase(height.get_mpz_t(), 2) > 62)
    throw precondition_error("find_projective_zero: height must be in [1, 2^62]");
  TernaryCubicForm g = f.normalized();
  std::array<Integer, 10> A;
  for (int i = 0; i < 10; ++i) A[i] = g[i].get_num();

  long long H = mpz_get_si(height.get_mpz_t());
  std::size_t bits_a = 1;
  for (const auto& ci : A)
    bits_a = std::max(bits_a, mpz_sizeinbase(ci.get_mpz_t(), 2));
  std::size_t bits_h = mpz_sizeinbase(height.get_mpz_t(), 2);

  // 128-bit evaluations stay exact well inside these limits (the largest
  // intermediate is bounded by 13 A^2 H^2 for the discriminant and
  // 10 A H^3 for values); anything bigger takes the slow exact path.
  if (2 * bits_a + 2 * bits_h <= 100 && bits_a + 3 * bits_h <= 120)
    return scan<I128Ops>(A, H);
  return scan<MpzOps>(A, H);
}

std::vector<ProjectivePoint> search_points_cubic(const TernaryCubicForm& f,
                                                 const Integer& height) {
  if (height < 1 || mpz_sizeinbase(height.get_mpz_t(), 2) > 62)
    throw precondition_error("search_points_cubic: height must be in [1, 2^62]");
  TernaryCubicForm g = f.normalized();
  std::array<Integer, 10> A;
  for (int i = 0; i < 10; ++i) A[i] = g[i].get_num();

  long long H = mpz_get_si(height.get_mpz_t());
  std::size_t bits_a = 1;
  for (const auto& ci : A)
    bits_a = std::max(bits_a, mpz_sizeinbase(ci.get_mpz_t(), 2));
  std::size_t bits_h = mpz_sizeinbase(height.get_mpz_t(), 2);

  std::set<ProjectivePoint> found;
  if (2 * bits_a + 2 * bits_h <= 100 && bits_a + 3 * bits_h <= 120)
    found = scan_all<I128Ops>(A, H);
  else
    found = scan_all<MpzOps>(A, H);
  return std::vector<ProjectivePoint>(found.begin(), found.end());
}

bool exists_primitive_zero_mod_prime_power(const TernaryCubicForm& f, const Integer& p, int k) {
  if (!is_prime(p)) throw precondition_error("exists_primitive_zero_mod_prime_power: p not prime");
  if (k < 1) throw precondition_error("exists_primitive_zero_mod_prime_power: k must be >= 1");
  Integer pk = pow_int(p, static_cast<unsigned>(k));
  if (pk > (1 << 20))
    throw precondition_error("exists_primitive_zero_mod_prime_power: p^k above 2^20");
  TernaryCubicForm g = f.normalized();

  const long long P = mpz_get_si(p.get_mpz_t());
  const long long M = mpz_get_si(pk.get_mpz_t());
  std::array<long long, 10> a;
  for (int i = 0; i < 10; ++i)
    a[i] = static_cast<long long>(
        mpz_fdiv_ui(g[i].get_num().get_mpz_t(), static_cast<unsigned long>(M)));

  auto mul = [&](long long u, long long v) { return static_cast<long long>(i128(u) * v % M); };
  auto eval_form = [&](long long x, long long y, long long z) {
    long long x2 = mul(x, x), y2 = mul(y, y), z2 = mul(z, z);
    long long v = 0;
    auto acc = [&](long long c, long long t) { v = (v + mul(c, t)) % M; };
    acc(a[0], mul(x2, x));
    acc(a[1], mul(y2, y));
    acc(a[2], mul(z2, z));
    acc(a[3], mul(x2, y));
    acc(a[4], mul(x2, z));
    acc(a[5], mul(y2, x));
    acc(a[6], mul(y2, z));
    acc(a[7], mul(z2, x));
    acc(a[8], mul(z2, y));
    acc(a[9], mul(mul(x, y), z));
    return v;
  };
  // A zero with a unit coordinate can be scaled so that its first unit
  // coordinate is 1, with the earlier coordinates divisible by p; these
  // three shapes cover all cases.
  auto eval_case = [&](int cs, long long u, long long v) {
    switch (cs) {
      case 0: return eval_form(1, u, v);
      case 1: return eval_form(P * u % M, 1, v);
      default: return eval_form(P * u % M, P * v % M, 1);
    }
  };

  long long budget = 10'000'000;
  auto dfs = [&](auto&& self, int cs, int j, long long pj, long long u, long long v) -> bool {
    if (j == k) return true;
    long long pj1 = pj * P;
    for (long long b1 = 0; b1 < P; ++b1)
      for (long long b2 = 0; b2 < P; ++b2) {
        if (--budget < 0)
          throw std::runtime_error("exists_primitive_zero_mod_prime_power: budget exceeded");
        long long u1 = u + b1 * pj, v1 = v + b2 * pj;
        if (eval_case(cs, u1, v1) % pj1 == 0 && self(self, cs, j + 1, pj1, u1, v1)) return true;
      }
    return false;
  };
  for (int cs = 0; cs < 3; ++cs)
    if (dfs(dfs, cs, 0, 1, 0, 0)) return true;
  return false;
}

}  // namespace tcf
