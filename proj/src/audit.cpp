#include "tcf/audit.hpp"

#include <cstdio>
#include <sstream>

#include "tcf/search.hpp"

namespace tcf {

const char* to_cstring(ClaimVerdict v) {
  switch (v) {
    case ClaimVerdict::Holds: return "holds";
    case ClaimVerdict::Fails: return "fails";
    case ClaimVerdict::NotApplicable: return "not-applicable";
    case ClaimVerdict::Undecided: return "undecided";
  }
  return "?";
}

const std::vector<std::string>& claim_taxonomy() {
  static const std::vector<std::string> ids{
      "everywhere-local",
      "boundary-rootless",
      "diagonal-form",
      "rewrite-reinstates-variables",
      "formal-resultant-vanishes",
      "true-resultant-nonzero",
      "shared-common-factor",
      "jacobian-identity",
      "enumeration-finite",
      "global-point-at-height",
      "hasse-witness-candidate",
  };
  return ids;
}

namespace {

constexpr const char* kSkippedEvidence =
    "skipped: a place refuses the curve, nothing global can exist";

std::string join_integers(const std::vector<Integer>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << v[i];
  }
  return os.str();
}

std::string default_id(const TernaryCubicForm& f) {
  std::ostringstream os;
  os << "cubic(";
  const auto& a = f.coeffs();
  for (int i = 0; i < 10; ++i) {
    if (i) os << ",";
    os << a[i].get_num();
  }
  os << ")";
  return os.str();
}

const char* plane_label(int index) {
  switch (index) {
    case 0: return "z=0";
    case 1: return "y=0";
    default: return "x=0";
  }
}

void push_claim(AuditReport& r, const std::string& id, ClaimVerdict v,
                std::string evidence) {
  r.claims.push_back(ClaimResult{id, v, std::move(evidence)});
}

void build_claims(AuditReport& r, const AuditConfig& config) {
  // everywhere-local
  {
    ClaimVerdict v = ClaimVerdict::Undecided;
    std::string ev;
    switch (r.local.status) {
      case Solvability::Solvable:
        v = ClaimVerdict::Holds;
        if (r.local.rational_point)
          ev = "exact rational zero " + r.local.rational_point->str() +
               " settles every place";
        else
          ev = "real place passes; certified prime set {" +
               join_integers(r.local.primes_checked) + "} all solvable";
        break;
      case Solvability::Unsolvable:
        v = ClaimVerdict::Fails;
        ev = "refused at p = " + r.local.failing_prime->get_str();
        break;
      case Solvability::Undecided:
        v = ClaimVerdict::Undecided;
        ev = r.local.note.empty() ? "local decision incomplete" : r.local.note;
        break;
    }
    push_claim(r, "everywhere-local", v, ev);
  }

  // boundary-rootless
  {
    std::string where;
    for (const auto& b : r.boundary)
      if (b.root) {
        where = std::string(plane_label(b.index)) + " restriction has root, point " +
                b.point->str();
        break;
      }
    if (where.empty())
      push_claim(r, "boundary-rootless", ClaimVerdict::Holds,
                 "no rational root on z=0, y=0 or x=0");
    else
      push_claim(r, "boundary-rootless", ClaimVerdict::Fails, where);
  }

  // diagonal-form
  {
    if (r.diagonal) {
      auto d = *r.form.diagonal_coefficients();
      std::ostringstream os;
      os << "coefficients (" << d[0] << ", " << d[1] << ", " << d[2] << ")";
      push_claim(r, "diagonal-form", ClaimVerdict::Holds, os.str());
    } else {
      push_claim(r, "diagonal-form", ClaimVerdict::Fails,
                 "off-diagonal monomials present");
    }
  }

  // rewrite-reinstates-variables
  if (!r.reduction_ran) {
    push_claim(r, "rewrite-reinstates-variables", ClaimVerdict::NotApplicable,
               kSkippedEvidence);
  } else {
    std::string missing;
    for (const auto& rw : r.rewrites)
      if (!rw.rewritten) {
        if (!missing.empty()) missing += ", ";
        missing += to_cstring(rw.role);
      }
    if (missing.empty()) {
      std::ostringstream os;
      os << "all three multiplied forms involve W, M, N after adding "
            "relation multiples (box "
         << config.rewrite_box << ")";
      push_claim(r, "rewrite-reinstates-variables", ClaimVerdict::Holds,
                 os.str());
    } else {
      std::ostringstream os;
      os << "no combination within box " << config.rewrite_box << " for "
         << missing;
      push_claim(r, "rewrite-reinstates-variables", ClaimVerdict::Fails,
                 os.str());
    }
  }

  // formal-resultant-vanishes / true-resultant-nonzero
  if (!r.reduction_ran) {
    push_claim(r, "formal-resultant-vanishes", ClaimVerdict::NotApplicable,
               kSkippedEvidence);
    push_claim(r, "true-resultant-nonzero", ClaimVerdict::NotApplicable,
               kSkippedEvidence);
  } else {
    std::string formal_bad, true_bad;
    for (const auto& rs : r.resultants) {
      if (!rs.formal_zero) {
        if (!formal_bad.empty()) formal_bad += ", ";
        formal_bad += to_cstring(rs.variant);
      }
      if (!rs.true_degree_nonzero) {
        if (!true_bad.empty()) true_bad += ", ";
        true_bad += to_cstring(rs.variant);
      }
    }
    push_claim(r, "formal-resultant-vanishes",
               formal_bad.empty() ? ClaimVerdict::Holds : ClaimVerdict::Fails,
               formal_bad.empty()
                   ? "stated-degree Sylvester determinant vanishes for all "
                     "three eliminations"
                   : "nonzero formal resultant for variant " + formal_bad);
    push_claim(r, "true-resultant-nonzero",
               true_bad.empty() ? ClaimVerdict::Holds : ClaimVerdict::Fails,
               true_bad.empty()
                   ? "true-degree resultant nonzero for all three eliminations"
                   : "true-degree resultant vanishes for variant " + true_bad);
  }

  // shared-common-factor
  if (!r.reduction_ran) {
    push_claim(r, "shared-common-factor", ClaimVerdict::NotApplicable,
               kSkippedEvidence);
  } else {
    const auto& cf = *r.common_factor;
    switch (cf.kind) {
      case FactorKind::None:
        push_claim(r, "shared-common-factor", ClaimVerdict::Fails,
                   "full-system gcd is constant; no shared factor exists");
        break;
      case FactorKind::Linear:
        push_claim(r, "shared-common-factor", ClaimVerdict::Holds,
                   "linear common factor " + cf.factor.str());
        break;
      case FactorKind::Quadratic:
        push_claim(r, "shared-common-factor", ClaimVerdict::Holds,
                   "quadratic common factor " + cf.factor.str());
        break;
    }
  }

  // jacobian-identity / enumeration-finite
  if (!r.diagonal) {
    push_claim(r, "jacobian-identity", ClaimVerdict::NotApplicable,
               "curve is not diagonal");
    push_claim(r, "enumeration-finite", ClaimVerdict::NotApplicable,
               "curve is not diagonal");
  } else {
    std::ostringstream os;
    os << "curve b = " << r.jacobian->b
       << (*r.curve_identity ? "; map identity verified symbolically"
                             : "; map identity FAILED");
    push_claim(r, "jacobian-identity",
               *r.curve_identity ? ClaimVerdict::Holds : ClaimVerdict::Fails,
               os.str());
    std::ostringstream os2;
    os2 << *r.enumeration_count
        << " equivalence classes share the coefficient-product class";
    push_claim(r, "enumeration-finite", ClaimVerdict::Holds, os2.str());
  }

  // global-point-at-height
  if (!r.search_ran) {
    push_claim(r, "global-point-at-height", ClaimVerdict::NotApplicable,
               "search skipped: a place refuses the curve");
  } else if (!r.search.points.empty()) {
    push_claim(r, "global-point-at-height", ClaimVerdict::Holds,
               "least point " + r.search.points.front().str() +
                   " within height " + r.search.height.get_str());
  } else {
    push_claim(r, "global-point-at-height", ClaimVerdict::Fails,
               "no point with coordinates up to " + r.search.height.get_str() +
                   " (exhaustive)");
  }

  // hasse-witness-candidate
  {
    if (r.local.status == Solvability::Unsolvable) {
      push_claim(r, "hasse-witness-candidate", ClaimVerdict::NotApplicable,
                 "not everywhere locally solvable");
    } else if (r.diagonal) {
      push_claim(r, "hasse-witness-candidate", ClaimVerdict::NotApplicable,
                 "curve is diagonal, the expected shape for a local-global "
                 "failure");
    } else if (r.search_ran && !r.search.points.empty()) {
      push_claim(r, "hasse-witness-candidate", ClaimVerdict::NotApplicable,
                 "global point exists: " + r.search.points.front().str());
    } else if (r.witness_candidate) {
      push_claim(r, "hasse-witness-candidate", ClaimVerdict::Undecided,
                 "WITNESS-CANDIDATE at height " + r.search.height.get_str() +
                     ": everywhere locally solvable, not diagonal, no point "
                     "found; the search is height-bounded, not a disproof");
    } else {
      push_claim(r, "hasse-witness-candidate", ClaimVerdict::Undecided,
                 "local solvability undecided; no point found up to height " +
                     r.search.height.get_str());
    }
  }
}

}  // namespace

AuditReport audit_curve(const TernaryCubicForm& f, const AuditConfig& config,
                        const std::string& id) {
  if (f.is_zero()) throw precondition_error("audit_curve: form is zero");
  if (!f.is_normalized())
    throw precondition_error("audit_curve: form must be normalized");
  if (config.padic_depth <= 0 || config.search_height <= 0 ||
      config.rewrite_box <= 0)
    throw precondition_error("audit_curve: config bounds must be positive");

  AuditReport r;
  r.form = f;
  r.id = id.empty() ? default_id(f) : id;

  r.local = everywhere_locally_solvable(f, config.padic_depth);

  auto restrictions = boundary_restrictions(f);
  for (int k = 0; k < 3; ++k) {
    r.boundary[k].index = k;
    if (restrictions[k].is_zero()) {
      // The whole coordinate line lies on the curve.
      r.boundary[k].root = std::pair<Integer, Integer>{1, 0};
    } else {
      r.boundary[k].root = restrictions[k].rational_root();
    }
    if (r.boundary[k].root)
      r.boundary[k].point = embed_boundary_root(k, *r.boundary[k].root);
  }

  r.diagonal = f.diagonal_coefficients().has_value();
  const bool unsolvable = r.local.status == Solvability::Unsolvable;

  if (!unsolvable) {
    r.reduction_ran = true;
    MultipliedForms mf = multiplied_forms(f);
    const std::array<std::pair<SystemRole, const QuadraticForm6*>, 3> rows{
        {{SystemRole::Fx, &mf.fx},
         {SystemRole::Fy, &mf.fy},
         {SystemRole::Fz, &mf.fz}}};
    for (const auto& [role, q] : rows) {
      RewriteResult rw = rewrite_with_relations(*q, config.rewrite_box);
      r.rewrites.push_back(RewriteReport{role, rw.form.has_value(), rw.lambda});
    }
    for (ReducedVariant v :
         {ReducedVariant::X, ReducedVariant::Y, ReducedVariant::Z}) {
      auto audit = formal_resultant_audit(generic_combinations(reduced_system(f, v)));
      r.resultants.push_back(
          ResultantReport{v, audit.formal.is_zero(), !audit.true_deg.is_zero()});
    }
    r.common_factor = common_factor_analysis(full_system(f));
  }

  if (r.diagonal) {
    auto d = *f.diagonal_coefficients();
    Rational prod = Rational(d[0] * d[1] * d[2]);
    r.jacobian = WeierstrassCurve{Rational(0), Rational(-432) * prod * prod};
    DiagonalCubic dc = DiagonalCubic::make(d[0], d[1], d[2]);
    r.curve_identity = verify_curve_identity(dc);
    r.enumeration_count = enumerate_diagonal_cubics(d[0] * d[1] * d[2]).size();
  }

  r.search.height = config.search_height;
  if (!unsolvable) {
    r.search_ran = true;
    r.search.points = search_points_cubic(f, config.search_height);
  }

  r.witness_candidate = r.search_ran && !r.diagonal &&
                        r.local.status == Solvability::Solvable &&
                        r.search.points.empty();

  build_claims(r, config);
  return r;
}

std::vector<std::pair<std::string, TernaryCubicForm>> corpus_forms(
    std::uint64_t seed) {
  std::vector<std::pair<std::string, TernaryCubicForm>> out;
  out.emplace_back("fermat-cubic", TernaryCubicForm::diagonal(1, 1, 1));
  out.emplace_back("twisted-fermat", TernaryCubicForm::diagonal(1, 1, -2));
  out.emplace_back("selmer-cubic", TernaryCubicForm::diagonal(3, 4, 5));
  out.emplace_back("two-adic-block", TernaryCubicForm::diagonal(1, 2, 4));
  out.emplace_back("fermat-with-xyz",
                   TernaryCubicForm(std::array<Rational, 10>{
                       1, 1, 1, 0, 0, 0, 0, 0, 0, 1}));

  Rng64 rng(seed);
  for (int i = 1; i <= 20; ++i) {
    TernaryCubicForm f;
    do {
      std::array<Rational, 10> a;
      for (auto& q : a) q = Rational(rng.next_in(-9, 9));
      f = TernaryCubicForm(a).normalized();
    } while (f.is_zero());
    char name[16];
    std::snprintf(name, sizeof name, "seeded-%02d", i);
    out.emplace_back(name, f);
  }
  return out;
}

std::vector<AuditReport> run_corpus(const AuditConfig& config) {
  std::vector<AuditReport> out;
  for (const auto& [name, form] : corpus_forms(config.corpus_seed))
    out.push_back(audit_curve(form, config, name));
  return out;
}

}  // namespace tcf
