#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tcf/forms.hpp"
#include "tcf/poly.hpp"
#include "tcf/rational.hpp"

namespace tcf {

/// Role of a member inside a quadratic system. The first three are the
/// multiplied forms x*F, y*F, z*F rewritten in the degree-two variables; the
/// remaining six are the fixed monomial relations that hold identically on
/// X = x^2, Y = y^2, Z = z^2, W = xy, M = xz, N = yz.
enum class SystemRole {
  Fx,
  Fy,
  Fz,
  RelWMminusXN,  // W*M - X*N
  RelMNminusZW,  // M*N - Z*W
  RelWNminusYM,  // W*N - Y*M
  RelW2minusXY,  // W^2 - X*Y
  RelM2minusXZ,  // M^2 - X*Z
  RelN2minusYZ,  // N^2 - Y*Z
};

const char* to_cstring(SystemRole r);

/// The fixed quadratic form attached to a relation role.
/// Pre: r is one of the six relation roles.
QuadraticForm6 relation_form(SystemRole r);

struct SystemMember {
  SystemRole role;
  QuadraticForm6 form;
};

/// Ordered list of quadratic forms with unique role tags.
struct QuadraticSystem {
  std::vector<SystemMember> members;

  bool has_role(SystemRole r) const;
  /// Pre: has_role(r).
  const QuadraticForm6& form(SystemRole r) const;
  std::vector<MultiPoly> member_polys() const;
};

/// Candidate common zero (X0, Y0, Z0, W0, M0, N0) of a quadratic system.
struct SystemSolution {
  std::array<Rational, 6> v{};

  bool is_zero() const;
  bool operator==(const SystemSolution& o) const { return v == o.v; }
};

struct MultipliedForms {
  QuadraticForm6 fx, fy, fz;
};

/// The three quadratic forms obtained from x*F, y*F, z*F by substituting
/// X = x^2, ..., N = yz. For F = 3x^3+4y^3+5z^3 these are
/// 3X^2+4YW+5ZM, 3XW+4Y^2+5ZN, 3XM+4YN+5Z^2.
/// Pre: F normalized.
MultipliedForms multiplied_forms(const TernaryCubicForm& f);

/// The nine-member system {Fx, Fy, Fz, WM-XN, MN-ZW, WN-YM, W^2-XY,
/// M^2-XZ, N^2-YZ}, in that order. Its nontrivial rational solutions
/// correspond to rational points of F.
/// Pre: F normalized (in particular nonzero).
QuadraticSystem full_system(const TernaryCubicForm& f);

/// Which multiplied form is dropped from the full system, together with the
/// square relation that mentions only the retained variables.
enum class ReducedVariant { X, Y, Z };
const char* to_cstring(ReducedVariant v);  // "x", "y", "z"

/// The variable all remaining members are (at most) linear in after the drop:
/// W for variant Z, N for variant X, M for variant Y.
Var eliminated_variable(ReducedVariant variant);

/// Seven-member subsystem: variant Z drops {Fz, W^2-XY}, variant X drops
/// {Fx, N^2-YZ}, variant Y drops {Fy, M^2-XZ}. Order follows the full system.
/// Pre: F normalized.
QuadraticSystem reduced_system(const TernaryCubicForm& f, ReducedVariant variant);

/// The monomial lift (x^2, y^2, z^2, xy, xz, yz) of a coordinate triple.
/// Pre: (x, y, z) not all zero.
SystemSolution lift_tuple(const Rational& x, const Rational& y, const Rational& z);

/// Lift of a curve point to a solution of the full system.
/// Pre: p has 3 coordinates and lies on F.
SystemSolution lift_point(const TernaryCubicForm& f, const ProjectivePoint& p);

struct ProjectionResult {
  /// Absent when the reconstructed triple fails to lie on F; that event is
  /// reported, not trusted away, since it would falsify the solution
  /// transfer this construction is supposed to guarantee.
  std::optional<ProjectivePoint> point;
  std::string note;
};

/// Reconstructs a curve point from a system solution: (X0, W0, M0) when
/// X0 != 0, else (W0, Y0, N0) when Y0 != 0, else (M0, N0, Z0). The candidate
/// is verified on F before being returned.
/// Pre: s solves full_system(F); throws precondition_error otherwise.
ProjectionResult project_solution(const TernaryCubicForm& f, const SystemSolution& s);

/// Checks that a solution of the full system minus one square relation also
/// satisfies the omitted square relation, which the cross relations force
/// whenever X0*Y0*Z0 != 0.
/// Pre: s satisfies the three multiplied forms, the three cross relations,
/// and at least two of the three square relations, with X0*Y0*Z0 != 0.
/// Post: true iff all three square relations hold at s.
bool square_relation_redundancy(const TernaryCubicForm& f, const SystemSolution& s);

/// The two generic linear combinations of a reduced system's members, with
/// symbolic weights a1..a7 for the first and b1..b7 for the second, paired
/// with the members in system order.
struct GenericCombinations {
  MultiPoly f1, f2;
  /// The variable both combinations are linear in (see eliminated_variable).
  Var eliminated = Var::W;
};

/// Pre: sys is one of the three reduced systems (seven members).
GenericCombinations generic_combinations(const QuadraticSystem& sys);

struct ResultantAudit {
  /// Sylvester determinant in the eliminated variable at stated degrees
  /// (2, 2). Both combinations lack the square of that variable, so the
  /// leading column is zero and this polynomial vanishes identically.
  MultiPoly formal;
  /// Resultant at the true degrees (1, 1), i.e. B1*C2 - B2*C1 for
  /// combinations Bi*v + Ci. Generically nonzero.
  MultiPoly true_deg;
};

/// Both resultants of the pair, side by side, for reporting. The contrast
/// matters: the formal one vanishes for structural reasons and therefore
/// carries no information about common zeros.
ResultantAudit formal_resultant_audit(const GenericCombinations& gc);

enum class FactorKind { None, Linear, Quadratic };

struct CommonFactorAnalysis {
  FactorKind kind = FactorKind::None;
  /// Primitive-normalized gcd of the members (constant when kind is None).
  MultiPoly factor;
  /// Linear only: factor involves no variables beyond X and Y.
  bool linear_in_xy = false;
  /// Quadratic only: whether the factor, as a rational quadratic form in all
  /// six variables, has a nontrivial rational zero; witness when one was
  /// found within the search cap.
  std::optional<bool> quadratic_isotropic;
  std::optional<std::vector<Rational>> isotropy_witness;
  /// Per member, in order: whether the member is a constant multiple of the
  /// factor. The pattern is reported as observed, never assumed.
  std::vector<bool> proportional;
  std::string note;
};

CommonFactorAnalysis common_factor_analysis(const std::vector<QuadraticForm6>& members);
CommonFactorAnalysis common_factor_analysis(const QuadraticSystem& sys);

struct RewriteResult {
  std::optional<QuadraticForm6> form;
  /// Multipliers of the relations, in order, when a representative was found.
  std::vector<Rational> lambda;
  /// Numerator bound of the searched box (denominators up to 3).
  long box = 0;
};

/// Bounded search for Fi + sum(lambda_j * relation_j) in which W, M and N all
/// occur with nonzero coefficients. Multipliers range over rationals with
/// |lambda| <= box and denominator at most 3, zero first, first hit returned.
/// The X^2, Y^2, Z^2 coefficients are untouched because no relation contains
/// those monomials. Exhaustion yields an absent form with the box recorded;
/// it is a search cap, not an impossibility proof.
RewriteResult rewrite_with_relations(const QuadraticForm6& fi,
                                     const std::vector<QuadraticForm6>& relations,
                                     long box = 3);

/// Same search against the three cross relations WM-XN, MN-ZW, WN-YM.
RewriteResult rewrite_with_relations(const QuadraticForm6& fi, long box = 3);

}  // namespace tcf
