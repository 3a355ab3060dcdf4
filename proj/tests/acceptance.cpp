// Acceptance suite: ten end-to-end checks, one verdict line each.  Every
// check recomputes its expected values through an independent route (plain
// determinants, exhaustive residue scans, brute-force class counting), so a
// pass means two unrelated code paths agree, not that one function equals
// itself.  Exit status is nonzero when any criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tcf/audit.hpp"
#include "tcf/forms.hpp"
#include "tcf/jacobian.hpp"
#include "tcf/json_io.hpp"
#include "tcf/linalg.hpp"
#include "tcf/localfields.hpp"
#include "tcf/poly.hpp"
#include "tcf/rational.hpp"
#include "tcf/reduction.hpp"
#include "tcf/search.hpp"

namespace {

using namespace tcf;

struct Outcome {
  bool ok = false;
  std::string detail;
};

Outcome pass(const std::string& detail) { return {true, detail}; }
Outcome fail(const std::string& detail) { return {false, detail}; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

/// Random nonzero integer in [lo, hi] (the range must contain one).
long nonzero_in(Rng64& rng, long lo, long hi) {
  for (;;) {
    long v = rng.next_in(lo, hi);
    if (v != 0) return v;
  }
}

/// Random nonzero normalized cubic with coefficients in [-9, 9].
TernaryCubicForm random_cubic(Rng64& rng) {
  for (;;) {
    std::array<Rational, 10> a;
    for (auto& c : a) c = Rational(rng.next_in(-9, 9));
    TernaryCubicForm f(a);
    if (!f.is_zero()) return f.normalized();
  }
}

// ---------------------------------------------------------------------------
// 1. Full audit of the Selmer curve 3x^3 + 4y^3 + 5z^3 at default settings.

Outcome criterion_selmer_audit() {
  auto t0 = std::chrono::steady_clock::now();
  TernaryCubicForm f = TernaryCubicForm::diagonal(3, 4, 5);
  AuditConfig cfg;  // depth 12, height 10000
  AuditReport r = audit_curve(f, cfg, "selmer");
  double secs = seconds_since(t0);

  if (r.local.status != Solvability::Solvable)
    return fail("local status is not Solvable");
  if (!r.local.prime_set_certified) return fail("prime set not certified");
  std::vector<Integer> want{Integer(2), Integer(3), Integer(5)};
  if (r.local.primes_checked != want)
    return fail("checked primes differ from {2, 3, 5}");
  for (const auto& v : r.local.verdicts)
    if (v.status != Solvability::Solvable)
      return fail("prime " + to_string(v.prime) + " did not pass");
  if (!solvable_real_cubic(f)) return fail("real place refused");
  if (!r.diagonal) return fail("curve not recognized as diagonal");
  if (!r.search_ran || r.search.height != 10000)
    return fail("point search did not run at height 10000");
  if (!r.search.points.empty())
    return fail("unexpected rational point " + r.search.points[0].str());
  if (secs >= 60.0) {
    std::ostringstream os;
    os << "audit took " << secs << "s, budget is 60s";
    return fail(os.str());
  }
  std::ostringstream os;
  os << "solvable at the real place and {2, 3, 5}, no point to height 10000, "
     << static_cast<int>(secs * 10) / 10.0 << "s";
  return pass(os.str());
}

// ---------------------------------------------------------------------------
// 2. Rational isotropy of seeded diagonal quadratics versus witness search
//    and an exhaustive box refutation.

bool box_has_zero(const std::vector<long>& d, long cap) {
  std::size_t n = d.size();
  std::vector<long> v(n, -cap);
  for (;;) {
    bool all_zero = true;
    long s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (v[i] != 0) all_zero = false;
      s += d[i] * v[i] * v[i];
    }
    if (!all_zero && s == 0) return true;
    std::size_t i = 0;
    while (i < n && v[i] == cap) {
      v[i] = -cap;
      ++i;
    }
    if (i == n) return false;
    ++v[i];
  }
}

Outcome criterion_isotropy() {
  Rng64 rng(0x5EED0002ULL);
  int isotropic = 0, anisotropic = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = static_cast<std::size_t>(rng.next_in(2, 6));
    std::vector<long> dl(n);
    std::vector<Rational> d(n);
    for (std::size_t i = 0; i < n; ++i) {
      dl[i] = nonzero_in(rng, -30, 30);
      d[i] = Rational(dl[i]);
    }
    QMat gram(n, QVec(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) gram[i][i] = d[i];

    bool global = is_isotropic_global(d);
    std::ostringstream who;
    who << "trial " << trial << " dim " << n;

    if (global) {
      ++isotropic;
      std::optional<QVec> w;
      try {
        w = find_isotropic_vector(gram, 10000);
      } catch (const std::runtime_error& e) {
        return fail(who.str() + ": witness search exhausted its cap (" +
                    e.what() + ")");
      }
      if (!w) return fail(who.str() + ": isotropic but no witness returned");
      Rational s(0);
      bool nz = false;
      for (std::size_t i = 0; i < n; ++i) {
        s += d[i] * (*w)[i] * (*w)[i];
        if ((*w)[i] != 0) nz = true;
      }
      if (!nz || s != 0)
        return fail(who.str() + ": returned witness does not vanish");
    } else {
      ++anisotropic;
      if (find_isotropic_vector(gram, 10000))
        return fail(who.str() + ": anisotropic but a witness was produced");
      bool pos = false, neg = false;
      for (long e : dl) (e > 0 ? pos : neg) = true;
      if (pos && neg) {
        // Indefinite in five or more variables is always isotropic over the
        // rationals, so an anisotropic answer there is outright wrong.
        if (n >= 5)
          return fail(who.str() + ": indefinite form in " + std::to_string(n) +
                      " variables reported anisotropic");
        long cap = n == 4 ? 12 : 30;
        if (box_has_zero(dl, cap))
          return fail(who.str() + ": exhaustive box found a zero");
      }
    }
  }

  if (!is_isotropic_global({Rational(1), Rational(1), Rational(-1)}))
    return fail("x^2 + y^2 - z^2 reported anisotropic");
  if (is_isotropic_global({Rational(1), Rational(1), Rational(1)}))
    return fail("x^2 + y^2 + z^2 reported isotropic");
  if (is_isotropic_global({Rational(1), Rational(1), Rational(-3)}))
    return fail("x^2 + y^2 - 3z^2 reported isotropic");

  std::ostringstream os;
  os << "100 forms (" << isotropic << " isotropic, " << anisotropic
     << " anisotropic), every verdict matched its witness or box refutation";
  return pass(os.str());
}

// ---------------------------------------------------------------------------
// 3. Hilbert symbol product formula over seeded nonzero rational pairs.

Outcome criterion_hilbert_product() {
  Rng64 rng(0x5EED0003ULL);
  for (int trial = 0; trial < 300; ++trial) {
    Rational a = make_rational(Integer(nonzero_in(rng, -60, 60)),
                               Integer(rng.next_in(1, 30)));
    Rational b = make_rational(Integer(nonzero_in(rng, -60, 60)),
                               Integer(rng.next_in(1, 30)));

    std::set<Integer> primes{Integer(2)};
    for (const Integer& p : prime_support(a)) primes.insert(p);
    for (const Integer& p : prime_support(b)) primes.insert(p);

    int prod = hilbert_symbol(a, b, Place::real());
    for (const Integer& p : primes)
      prod *= hilbert_symbol(a, b, Place::finite(p));
    if (prod != 1) {
      std::ostringstream os;
      os << "product is " << prod << " for a = " << to_string(a)
         << ", b = " << to_string(b);
      return fail(os.str());
    }
  }
  return pass("product over all contributing places is +1 for 300 pairs");
}

// ---------------------------------------------------------------------------
// 4. Closed form of the 4x4 Sylvester block determinant.

Outcome criterion_sylvester_block() {
  // Symbolic: closed form versus cofactor expansion with indeterminates.
  MultiPoly A1 = MultiPoly::variable(Var::a1), B1 = MultiPoly::variable(Var::a2),
            C1 = MultiPoly::variable(Var::a3), A2 = MultiPoly::variable(Var::b1),
            B2 = MultiPoly::variable(Var::b2), C2 = MultiPoly::variable(Var::b3);
  MultiPoly zero(0);
  PolyMatrix m{{A1, B1, C1, zero},
               {zero, A1, B1, C1},
               {A2, B2, C2, zero},
               {zero, A2, B2, C2}};
  if (sylvester22_det(A1, B1, C1, A2, B2, C2) != determinant(m))
    return fail("symbolic closed form differs from cofactor expansion");

  // Numeric: against exact Gaussian elimination on 1000 seeded tuples.
  Rng64 rng(0x5EED0004ULL);
  for (int trial = 0; trial < 1000; ++trial) {
    std::array<long, 6> t;
    for (auto& v : t) v = rng.next_in(-50, 50);
    MultiPoly closed = sylvester22_det(MultiPoly(t[0]), MultiPoly(t[1]),
                                       MultiPoly(t[2]), MultiPoly(t[3]),
                                       MultiPoly(t[4]), MultiPoly(t[5]));
    QMat q{{Rational(t[0]), Rational(t[1]), Rational(t[2]), Rational(0)},
           {Rational(0), Rational(t[0]), Rational(t[1]), Rational(t[2])},
           {Rational(t[3]), Rational(t[4]), Rational(t[5]), Rational(0)},
           {Rational(0), Rational(t[3]), Rational(t[4]), Rational(t[5])}};
    if (!closed.is_constant() || closed.constant_value() != q_det(q)) {
      std::ostringstream os;
      os << "mismatch at tuple (" << t[0] << ", " << t[1] << ", " << t[2]
         << ", " << t[3] << ", " << t[4] << ", " << t[5] << ")";
      return fail(os.str());
    }
  }

  MultiPoly pin = sylvester22_det(MultiPoly(1), MultiPoly(2), MultiPoly(3),
                                  MultiPoly(4), MultiPoly(5), MultiPoly(6));
  if (!pin.is_constant() || pin.constant_value() != 27)
    return fail("pinned value at (1, 2, 3, 4, 5, 6) is not 27");
  return pass("closed form matches cofactor and Gaussian determinants, pin 27");
}

// ---------------------------------------------------------------------------
// 5. Multiplied-form substitution identities and lift/project round trips.

Outcome criterion_substitution() {
  MultiPoly vx = MultiPoly::variable(Var::x);
  MultiPoly vy = MultiPoly::variable(Var::y);
  MultiPoly vz = MultiPoly::variable(Var::z);
  std::map<Var, MultiPoly> monomial_lift{
      {Var::X, vx * vx}, {Var::Y, vy * vy}, {Var::Z, vz * vz},
      {Var::W, vx * vy}, {Var::M, vx * vz}, {Var::N, vy * vz}};

  Rng64 rng(0x5EED0005ULL);
  for (int trial = 0; trial < 50; ++trial) {
    TernaryCubicForm f = random_cubic(rng);
    MultipliedForms mf = multiplied_forms(f);
    MultiPoly fp = f.to_poly();
    if (mf.fx.to_poly().substitute(monomial_lift) != vx * fp ||
        mf.fy.to_poly().substitute(monomial_lift) != vy * fp ||
        mf.fz.to_poly().substitute(monomial_lift) != vz * fp) {
      return fail("substitution identity broke at trial " +
                  std::to_string(trial));
    }
  }

  int round_trips = 0;
  for (const auto& [name, f] : corpus_forms(AuditConfig{}.corpus_seed)) {
    std::vector<ProjectivePoint> pts = search_points_cubic(f, Integer(20));
    if (pts.size() > 5) pts.erase(pts.begin() + 5, pts.end());
    for (const ProjectivePoint& p : pts) {
      SystemSolution s = lift_point(f, p);
      for (const SystemMember& m : full_system(f).members)
        if (m.form.eval(s.v) != 0)
          return fail(name + ": lifted point misses system member " +
                      std::string(to_cstring(m.role)));
      ProjectionResult back = project_solution(f, s);
      if (!back.point || !(*back.point == p))
        return fail(name + ": projection did not return " + p.str());
      ++round_trips;
    }
  }
  if (round_trips < 5)
    return fail("too few curve points available for round trips");

  std::ostringstream os;
  os << "x*F = Fx(x^2, ..., yz) and cyclic for 50 forms; " << round_trips
     << " lift/project round trips closed";
  return pass(os.str());
}

// ---------------------------------------------------------------------------
// 6. Formal resultant vanishes while the true-degree resultant survives, for
//    every corpus curve and every reduced variant.

Outcome criterion_resultant_contrast() {
  int audited = 0;
  for (const auto& [name, f] : corpus_forms(AuditConfig{}.corpus_seed)) {
    for (ReducedVariant variant :
         {ReducedVariant::X, ReducedVariant::Y, ReducedVariant::Z}) {
      ResultantAudit ra =
          formal_resultant_audit(generic_combinations(reduced_system(f, variant)));
      if (!ra.formal.is_zero())
        return fail(name + " variant " + to_cstring(variant) +
                    ": formal resultant is nonzero");
      if (ra.true_deg.is_zero())
        return fail(name + " variant " + to_cstring(variant) +
                    ": true-degree resultant vanished");
      ++audited;
    }
  }
  std::ostringstream os;
  os << "formal determinant 0 and true-degree resultant nonzero in all "
     << audited << " variant audits";
  return pass(os.str());
}

// ---------------------------------------------------------------------------
// 7. Weierstrass passage identity across small diagonal cubics.

AlgebraMatrix mat_mul(const AlgebraMatrix& a, const AlgebraMatrix& b) {
  const Integer &a1 = a[0][0].a1(), &a2 = a[0][0].a2();
  RadicalAlgebraElement zero(a1, a2);
  AlgebraMatrix out{{{zero, zero, zero}, {zero, zero, zero}, {zero, zero, zero}}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) out[i][j] = out[i][j] + a[i][k] * b[k][j];
  return out;
}

bool is_identity_matrix(const AlgebraMatrix& m) {
  const Integer &a1 = m[0][0].a1(), &a2 = m[0][0].a2();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (!(m[i][j] ==
            RadicalAlgebraElement::constant(a1, a2, Rational(i == j ? 1 : 0))))
        return false;
  return true;
}

Outcome criterion_curve_identity() {
  long checked = 0;
  for (long x = -30; x <= 30; ++x) {
    if (x == 0) continue;
    for (long y = -30; y <= 30; ++y) {
      if (y == 0 || std::abs(x * y) > 30) continue;
      for (long z = -30; z <= 30; ++z) {
        if (z == 0 || std::abs(x * y * z) > 30) continue;
        DiagonalCubic d = DiagonalCubic::make(Integer(x), Integer(y), Integer(z));
        if (!verify_curve_identity(d)) {
          std::ostringstream os;
          os << "identity fails for (" << x << ", " << y << ", " << z << ")";
          return fail(os.str());
        }
        ++checked;
      }
    }
  }

  WeierstrassCurve unit = jacobian_curve(DiagonalCubic::make(1, 1, 1));
  if (unit.a != 0 || unit.b != -432)
    return fail("Jacobian of x^3 + y^3 + z^3 is not Y^2 = X^3 - 432");
  if (!curve_contains(unit, Rational(12), Rational(36)))
    return fail("36^2 = 12^3 - 432 not recognized");

  Rng64 rng(0x5EED0007ULL);
  for (int trial = 0; trial < 20; ++trial) {
    DiagonalCubic d = DiagonalCubic::make(Integer(nonzero_in(rng, -20, 20)),
                                          Integer(nonzero_in(rng, -20, 20)),
                                          Integer(nonzero_in(rng, -20, 20)));
    AlgebraMatrix fwd = forward_matrix(d), inv = inverse_matrix(d);
    if (!is_identity_matrix(mat_mul(fwd, inv)) ||
        !is_identity_matrix(mat_mul(inv, fwd)))
      return fail("matrix times inverse is not the identity for " + d.str());
  }

  std::ostringstream os;
  os << "defect divisible by the cubic for " << checked
     << " coefficient triples; 20 matrix inverses verified; pin 36^2 = 12^3 - 432";
  return pass(os.str());
}

// ---------------------------------------------------------------------------
// 8. Diagonal-cubic enumeration against a brute-force equivalence oracle.

using Triple = std::array<Integer, 3>;

Integer cf(const Integer& n) { return cube_free_part(n).first; }

bool oracle_equivalent(const Triple& a, const Triple& b) {
  static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                  {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (const auto& perm : perms) {
    Triple u{a[perm[0]], a[perm[1]], a[perm[2]]};
    Integer lam = cf(b[0] * u[0] * u[0]);
    bool ok = true;
    for (int i = 0; i < 3; ++i)
      if (cf(lam * u[i]) != b[i]) {
        ok = false;
        break;
      }
    if (ok) return true;
  }
  return false;
}

/// Class count of positive triples with product exactly n, by scanning and
/// pairwise merging; nullopt when the merge ever contradicts transitivity.
std::optional<std::size_t> oracle_class_count(const Integer& n) {
  std::vector<Triple> univ;
  for (Integer a = 1; a <= n; ++a) {
    if (n % a != 0) continue;
    Integer rest = n / a;
    for (Integer b = 1; b <= rest; ++b) {
      if (rest % b != 0) continue;
      univ.push_back({a, b, rest / b});
    }
  }
  std::vector<int> comp(univ.size(), -1);
  std::vector<Triple> reps;
  for (std::size_t i = 0; i < univ.size(); ++i) {
    if (comp[i] >= 0) continue;
    int id = static_cast<int>(reps.size());
    reps.push_back(univ[i]);
    comp[i] = id;
    for (std::size_t j = i + 1; j < univ.size(); ++j)
      if (comp[j] < 0 && oracle_equivalent(univ[i], univ[j])) comp[j] = id;
  }
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = i + 1; j < reps.size(); ++j)
      if (oracle_equivalent(reps[i], reps[j])) return std::nullopt;
  return reps.size();
}

Outcome criterion_enumeration() {
  int compared = 0;
  for (long m = 1; m <= 100; ++m) {
    if (cube_free_part(Integer(m)).second != 1) continue;
    auto got = enumerate_diagonal_cubics(Integer(m));
    auto want = oracle_class_count(Integer(m));
    if (!want)
      return fail("oracle equivalence not transitive at m = " +
                  std::to_string(m));
    if (got.size() != *want) {
      std::ostringstream os;
      os << "m = " << m << ": enumerated " << got.size() << " classes, oracle "
         << *want;
      return fail(os.str());
    }
    ++compared;
  }
  if (enumerate_diagonal_cubics(1).size() != 1)
    return fail("m = 1 must give exactly the Fermat class");
  if (enumerate_diagonal_cubics(2).size() != 1)
    return fail("m = 2 must give exactly one class");
  std::ostringstream os;
  os << "class counts match the oracle for all " << compared
     << " cube-free products up to 100";
  return pass(os.str());
}

// ---------------------------------------------------------------------------
// 9. p-adic solvability versus exhaustive residue search.

Outcome criterion_padic_vs_exhaustive() {
  Rng64 rng(0x5EED0009ULL);
  const std::array<long, 4> primes{2, 3, 5, 7};
  int pairs = 0, undecided = 0, unverifiable = 0;

  for (int trial = 0; trial < 100; ++trial) {
    TernaryCubicForm f = random_cubic(rng);
    for (long pl : primes) {
      Integer p(pl);
      PadicCubicVerdict v = solvable_padic_cubic(f, p);
      ++pairs;
      std::ostringstream who;
      who << "trial " << trial << " at p = " << pl;

      if (v.status == Solvability::Solvable) {
        if (v.witness) {
          if (f.eval(*v.witness) != 0)
            return fail(who.str() + ": witness does not lie on the curve");
        } else if (v.certificate) {
          if (!verify_hensel_certificate(f, *v.certificate))
            return fail(who.str() + ": certificate fails the Newton check");
        } else {
          return fail(who.str() + ": Solvable without evidence");
        }
        if (!exists_primitive_zero_mod_prime_power(f, p, 5))
          return fail(who.str() +
                      ": Solvable, yet no primitive zero exists mod p^5");
      } else if (v.status == Solvability::Unsolvable) {
        if (!v.refuted_modulus)
          return fail(who.str() + ": Unsolvable without a refuted modulus");
        Integer m = *v.refuted_modulus;
        int k = 0;
        while (m % p == 0) {
          m /= p;
          ++k;
        }
        if (m != 1 || k < 1)
          return fail(who.str() + ": refuted modulus is not a power of p");
        if (pow_int(p, static_cast<unsigned long>(k)) <= Integer(1048576)) {
          if (exists_primitive_zero_mod_prime_power(f, p, k))
            return fail(who.str() + ": a primitive zero exists mod the" +
                        " modulus the verdict claims to refute");
        } else {
          ++unverifiable;
        }
      } else {
        ++undecided;
      }
    }
  }

  if (undecided * 20 > pairs) {
    std::ostringstream os;
    os << undecided << " of " << pairs
       << " verdicts undecided, above the 5% budget";
    return fail(os.str());
  }
  std::ostringstream os;
  os << pairs << " form/prime pairs, zero contradictions, " << undecided
     << " undecided";
  if (unverifiable > 0)
    os << ", " << unverifiable << " refutations past the exhaustive range";
  return pass(os.str());
}

// ---------------------------------------------------------------------------
// 10. Corpus audit determinism at default settings.

Outcome criterion_corpus_determinism() {
  AuditConfig cfg;
  auto render = [&cfg]() {
    std::string out;
    for (const AuditReport& r : run_corpus(cfg)) {
      out += report_json(r).dump(2);
      out += '\n';
    }
    return out;
  };
  std::string first = render();
  std::string second = render();
  if (first.empty()) return fail("corpus audit produced no output");
  if (first != second) return fail("two runs produced different bytes");
  std::ostringstream os;
  os << "two full corpus audits serialized to identical bytes ("
     << first.size() << " bytes)";
  return pass(os.str());
}

}  // namespace

int main() {
  struct Entry {
    const char* label;
    Outcome (*fn)();
  };
  const std::vector<Entry> entries{
      {"full audit of the Selmer curve", criterion_selmer_audit},
      {"rational isotropy versus witness search", criterion_isotropy},
      {"Hilbert symbol product formula", criterion_hilbert_product},
      {"Sylvester block determinant closed form", criterion_sylvester_block},
      {"multiplied-form substitution and lift/project", criterion_substitution},
      {"formal versus true-degree resultants on the corpus",
       criterion_resultant_contrast},
      {"Weierstrass passage identity", criterion_curve_identity},
      {"diagonal-cubic enumeration versus oracle", criterion_enumeration},
      {"p-adic verdicts versus exhaustive residue search",
       criterion_padic_vs_exhaustive},
      {"corpus audit determinism", criterion_corpus_determinism},
  };

  int failed = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    Outcome o;
    try {
      o = entries[i].fn();
    } catch (const std::exception& e) {
      o = {false, std::string("unexpected exception: ") + e.what()};
    }
    if (!o.ok) ++failed;
    std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": "
              << entries[i].label << " -- " << o.detail << std::endl;
  }

  if (failed == 0) {
    std::cout << "acceptance: all " << entries.size() << " criteria passed"
              << std::endl;
    return 0;
  }
  std::cout << "acceptance: " << failed << " of " << entries.size()
            << " criteria FAILED" << std::endl;
  return 1;
}
