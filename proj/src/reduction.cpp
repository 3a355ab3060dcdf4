#include "tcf/reduction.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "tcf/localfields.hpp"

namespace tcf {

namespace {

// Variable indices inside QuadraticForm6, in declaration order.
constexpr int kX = 0, kY = 1, kZ = 2, kW = 3, kM = 4, kN = 5;

QuadraticForm6 two_term_relation(int i1, int j1, int i2, int j2) {
  QuadraticForm6 q;
  q.add_term(i1, j1, Rational(1));
  q.add_term(i2, j2, Rational(-1));
  return q;
}

void require_normalized(const TernaryCubicForm& f) {
  if (f.is_zero()) throw precondition_error("the zero form has no quadratic system");
  if (!f.is_normalized())
    throw precondition_error("cubic must be normalized before building its system");
}

/// a + c*b at the matrix level.
QuadraticForm6 add_scaled(const QuadraticForm6& a, const QuadraticForm6& b, const Rational& c) {
  QuadraticForm6 out = a;
  for (int i = 0; i < 6; ++i) {
    for (int j = i; j < 6; ++j) {
      const Rational& e = b.entry(i, j);
      if (e == 0) continue;
      Rational coeff = c * e;
      if (i != j) coeff += coeff;
      out.add_term(i, j, coeff);
    }
  }
  return out;
}

bool involves(const QuadraticForm6& q, int var) {
  for (int j = 0; j < 6; ++j)
    if (q.entry(var, j) != 0) return true;
  return false;
}

std::array<Rational, 9> member_values(const TernaryCubicForm& f, const SystemSolution& s) {
  const QuadraticSystem sys = full_system(f);
  std::array<Rational, 9> out;
  for (std::size_t i = 0; i < 9; ++i) out[i] = sys.members[i].form.eval(s.v);
  return out;
}

}  // namespace

const char* to_cstring(SystemRole r) {
  switch (r) {
    case SystemRole::Fx: return "Fx";
    case SystemRole::Fy: return "Fy";
    case SystemRole::Fz: return "Fz";
    case SystemRole::RelWMminusXN: return "WM-XN";
    case SystemRole::RelMNminusZW: return "MN-ZW";
    case SystemRole::RelWNminusYM: return "WN-YM";
    case SystemRole::RelW2minusXY: return "W2-XY";
    case SystemRole::RelM2minusXZ: return "M2-XZ";
    case SystemRole::RelN2minusYZ: return "N2-YZ";
  }
  return "?";
}

const char* to_cstring(ReducedVariant v) {
  switch (v) {
    case ReducedVariant::X: return "x";
    case ReducedVariant::Y: return "y";
    case ReducedVariant::Z: return "z";
  }
  return "?";
}

QuadraticForm6 relation_form(SystemRole r) {
  switch (r) {
    case SystemRole::RelWMminusXN: return two_term_relation(kW, kM, kX, kN);
    case SystemRole::RelMNminusZW: return two_term_relation(kM, kN, kZ, kW);
    case SystemRole::RelWNminusYM: return two_term_relation(kW, kN, kY, kM);
    case SystemRole::RelW2minusXY: return two_term_relation(kW, kW, kX, kY);
    case SystemRole::RelM2minusXZ: return two_term_relation(kM, kM, kX, kZ);
    case SystemRole::RelN2minusYZ: return two_term_relation(kN, kN, kY, kZ);
    default:
      throw precondition_error("multiplied-form roles carry no fixed relation");
  }
}

bool QuadraticSystem::has_role(SystemRole r) const {
  for (const auto& m : members)
    if (m.role == r) return true;
  return false;
}

const QuadraticForm6& QuadraticSystem::form(SystemRole r) const {
  for (const auto& m : members)
    if (m.role == r) return m.form;
  throw precondition_error("system has no member with the requested role");
}

std::vector<MultiPoly> QuadraticSystem::member_polys() const {
  std::vector<MultiPoly> out;
  out.reserve(members.size());
  for (const auto& m : members) out.push_back(m.form.to_poly());
  return out;
}

bool SystemSolution::is_zero() const {
  return std::all_of(v.begin(), v.end(), [](const Rational& c) { return c == 0; });
}

MultipliedForms multiplied_forms(const TernaryCubicForm& f) {
  require_normalized(f);
  const auto& a = f.coeffs();
  MultipliedForms out;

  // x*F under the substitution: x^4 = X^2, y^3*x = YW, z^3*x = ZM, and so on.
  out.fx.add_term(kX, kX, a[0]);
  out.fx.add_term(kY, kW, a[1]);
  out.fx.add_term(kZ, kM, a[2]);
  out.fx.add_term(kX, kW, a[3]);
  out.fx.add_term(kX, kM, a[4]);
  out.fx.add_term(kX, kY, a[5]);
  out.fx.add_term(kY, kM, a[6]);
  out.fx.add_term(kX, kZ, a[7]);
  out.fx.add_term(kZ, kW, a[8]);
  out.fx.add_term(kX, kN, a[9]);

  out.fy.add_term(kX, kW, a[0]);
  out.fy.add_term(kY, kY, a[1]);
  out.fy.add_term(kZ, kN, a[2]);
  out.fy.add_term(kX, kY, a[3]);
  out.fy.add_term(kX, kN, a[4]);
  out.fy.add_term(kY, kW, a[5]);
  out.fy.add_term(kY, kN, a[6]);
  out.fy.add_term(kZ, kW, a[7]);
  out.fy.add_term(kY, kZ, a[8]);
  out.fy.add_term(kY, kM, a[9]);

  out.fz.add_term(kX, kM, a[0]);
  out.fz.add_term(kY, kN, a[1]);
  out.fz.add_term(kZ, kZ, a[2]);
  out.fz.add_term(kX, kN, a[3]);
  out.fz.add_term(kX, kZ, a[4]);
  out.fz.add_term(kY, kM, a[5]);
  out.fz.add_term(kY, kZ, a[6]);
  out.fz.add_term(kZ, kM, a[7]);
  out.fz.add_term(kZ, kN, a[8]);
  out.fz.add_term(kZ, kW, a[9]);

  return out;
}

QuadraticSystem full_system(const TernaryCubicForm& f) {
  const MultipliedForms mf = multiplied_forms(f);
  QuadraticSystem sys;
  sys.members.push_back({SystemRole::Fx, mf.fx});
  sys.members.push_back({SystemRole::Fy, mf.fy});
  sys.members.push_back({SystemRole::Fz, mf.fz});
  for (SystemRole r : {SystemRole::RelWMminusXN, SystemRole::RelMNminusZW,
                       SystemRole::RelWNminusYM, SystemRole::RelW2minusXY,
                       SystemRole::RelM2minusXZ, SystemRole::RelN2minusYZ})
    sys.members.push_back({r, relation_form(r)});
  return sys;
}

Var eliminated_variable(ReducedVariant variant) {
  switch (variant) {
    case ReducedVariant::X: return Var::N;
    case ReducedVariant::Y: return Var::M;
    case ReducedVariant::Z: return Var::W;
  }
  throw precondition_error("unknown variant");
}

QuadraticSystem reduced_system(const TernaryCubicForm& f, ReducedVariant variant) {
  SystemRole dropped_form = SystemRole::Fz;
  SystemRole dropped_square = SystemRole::RelW2minusXY;
  switch (variant) {
    case ReducedVariant::X:
      dropped_form = SystemRole::Fx;
      dropped_square = SystemRole::RelN2minusYZ;
      break;
    case ReducedVariant::Y:
      dropped_form = SystemRole::Fy;
      dropped_square = SystemRole::RelM2minusXZ;
      break;
    case ReducedVariant::Z:
      break;
  }
  QuadraticSystem sys = full_system(f);
  std::erase_if(sys.members, [&](const SystemMember& m) {
    return m.role == dropped_form || m.role == dropped_square;
  });
  return sys;
}

SystemSolution lift_tuple(const Rational& x, const Rational& y, const Rational& z) {
  if (x == 0 && y == 0 && z == 0)
    throw precondition_error("cannot lift the zero triple");
  return SystemSolution{{x * x, y * y, z * z, x * y, x * z, y * z}};
}

SystemSolution lift_point(const TernaryCubicForm& f, const ProjectivePoint& p) {
  if (p.size() != 3) throw precondition_error("lift_point expects a plane point");
  if (f.eval(p) != 0) throw precondition_error("point is not on the curve");
  return lift_tuple(Rational(p[0]), Rational(p[1]), Rational(p[2]));
}

ProjectionResult project_solution(const TernaryCubicForm& f, const SystemSolution& s) {
  if (s.is_zero()) throw precondition_error("system solutions must be nontrivial");
  for (const Rational& value : member_values(f, s))
    if (value != 0) throw precondition_error("tuple does not solve the full system");

  // The candidate triple is x*(x,y,z), y*(x,y,z) or z*(x,y,z) read off the
  // lift variables, keyed by the first nonzero square coordinate.
  std::vector<Rational> candidate;
  if (s.v[kX] != 0)
    candidate = {s.v[kX], s.v[kW], s.v[kM]};
  else if (s.v[kY] != 0)
    candidate = {s.v[kW], s.v[kY], s.v[kN]};
  else if (s.v[kZ] != 0)
    candidate = {s.v[kM], s.v[kN], s.v[kZ]};
  else
    // X = Y = Z = 0 forces W = M = N = 0 through the square relations.
    throw precondition_error("tuple does not solve the full system");

  ProjectivePoint p = ProjectivePoint::from_rationals(candidate);
  if (f.eval(p) != 0)
    return {std::nullopt,
            "reconstructed triple " + p.str() + " does not lie on the curve"};
  return {p, ""};
}

bool square_relation_redundancy(const TernaryCubicForm& f, const SystemSolution& s) {
  if (s.v[kX] == 0 || s.v[kY] == 0 || s.v[kZ] == 0)
    throw precondition_error("redundancy check needs X0*Y0*Z0 != 0");
  const std::array<Rational, 9> values = member_values(f, s);
  for (std::size_t i = 0; i < 6; ++i)
    if (values[i] != 0)
      throw precondition_error("tuple must satisfy the multiplied forms and cross relations");
  int square_zeros = 0;
  for (std::size_t i = 6; i < 9; ++i)
    if (values[i] == 0) ++square_zeros;
  if (square_zeros < 2)
    throw precondition_error("tuple may violate at most one square relation");
  return square_zeros == 3;
}

GenericCombinations generic_combinations(const QuadraticSystem& sys) {
  if (sys.members.size() != 7)
    throw precondition_error("generic combinations are defined for reduced systems");
  GenericCombinations out;
  if (!sys.has_role(SystemRole::Fz) && !sys.has_role(SystemRole::RelW2minusXY))
    out.eliminated = Var::W;
  else if (!sys.has_role(SystemRole::Fx) && !sys.has_role(SystemRole::RelN2minusYZ))
    out.eliminated = Var::N;
  else if (!sys.has_role(SystemRole::Fy) && !sys.has_role(SystemRole::RelM2minusXZ))
    out.eliminated = Var::M;
  else
    throw precondition_error("member roles do not match any reduced variant");

  for (std::size_t i = 0; i < 7; ++i) {
    const MultiPoly member = sys.members[i].form.to_poly();
    const MultiPoly ai = MultiPoly::variable(static_cast<Var>(static_cast<int>(Var::a1) + i));
    const MultiPoly bi = MultiPoly::variable(static_cast<Var>(static_cast<int>(Var::b1) + i));
    out.f1 += ai * member;
    out.f2 += bi * member;
  }
  return out;
}

ResultantAudit formal_resultant_audit(const GenericCombinations& gc) {
  ResultantAudit out;
  out.formal = resultant_formal(gc.f1, gc.f2, gc.eliminated, 2, 2);
  out.true_deg = resultant(gc.f1, gc.f2, gc.eliminated);
  return out;
}

CommonFactorAnalysis common_factor_analysis(const std::vector<QuadraticForm6>& members) {
  CommonFactorAnalysis out;
  std::vector<MultiPoly> polys;
  polys.reserve(members.size());
  for (const auto& m : members) polys.push_back(m.to_poly());

  out.factor = polys.empty() ? MultiPoly(1) : gcd_many(polys);
  const int deg = out.factor.total_degree();
  out.kind = deg == 1 ? FactorKind::Linear
                      : (deg == 2 ? FactorKind::Quadratic : FactorKind::None);

  if (out.kind == FactorKind::Linear) {
    const std::set<Var> vars = out.factor.support();
    out.linear_in_xy = std::all_of(vars.begin(), vars.end(),
                                   [](Var v) { return v == Var::X || v == Var::Y; });
  }

  if (out.kind == FactorKind::Quadratic) {
    const QMat gram = gram_matrix(QuadraticForm6::from_poly(out.factor));
    out.quadratic_isotropic = is_isotropic_global(gram);
    if (*out.quadratic_isotropic) {
      try {
        out.isotropy_witness = find_isotropic_vector(gram);
      } catch (const std::runtime_error&) {
        out.note = "isotropic factor, but the witness search cap was reached";
      }
    }
  }

  for (const MultiPoly& p : polys) {
    std::optional<MultiPoly> quotient;
    if (!out.factor.is_zero()) quotient = divide_exact(p, out.factor);
    out.proportional.push_back(quotient.has_value() && quotient->is_constant());
  }
  return out;
}

CommonFactorAnalysis common_factor_analysis(const QuadraticSystem& sys) {
  std::vector<QuadraticForm6> members;
  members.reserve(sys.members.size());
  for (const auto& m : sys.members) members.push_back(m.form);
  return common_factor_analysis(members);
}

RewriteResult rewrite_with_relations(const QuadraticForm6& fi,
                                     const std::vector<QuadraticForm6>& relations,
                                     long box) {
  if (box < 0) throw precondition_error("rewrite box must be nonnegative");

  // Candidate multipliers: zero first, then by denominator and numerator.
  std::vector<Rational> values{Rational(0)};
  for (long den = 1; den <= 3; ++den)
    for (long num = 1; num <= box * den; ++num) {
      if (std::gcd(num, den) != 1) continue;
      values.push_back(make_rational(num, den));
      values.push_back(make_rational(-num, den));
    }

  RewriteResult out;
  out.box = box;
  std::vector<std::size_t> idx(relations.size(), 0);
  while (true) {
    QuadraticForm6 candidate = fi;
    for (std::size_t j = 0; j < relations.size(); ++j)
      if (values[idx[j]] != 0) candidate = add_scaled(candidate, relations[j], values[idx[j]]);
    if (involves(candidate, kW) && involves(candidate, kM) && involves(candidate, kN)) {
      out.form = std::move(candidate);
      for (std::size_t j = 0; j < relations.size(); ++j) out.lambda.push_back(values[idx[j]]);
      return out;
    }
    // Odometer step, first multiplier fastest.
    std::size_t j = 0;
    while (j < relations.size() && ++idx[j] == values.size()) idx[j++] = 0;
    if (j == relations.size()) return out;
  }
}

RewriteResult rewrite_with_relations(const QuadraticForm6& fi, long box) {
  return rewrite_with_relations(
      fi,
      {relation_form(SystemRole::RelWMminusXN), relation_form(SystemRole::RelMNminusZW),
       relation_form(SystemRole::RelWNminusYM)},
      box);
}

}  // namespace tcf
