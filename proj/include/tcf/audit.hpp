#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tcf/forms.hpp"
#include "tcf/jacobian.hpp"
#include "tcf/localfields.hpp"
#include "tcf/reduction.hpp"

namespace tcf {

/// Knobs shared by the audit pipeline and the command line.  All bounds must
/// be positive.
struct AuditConfig {
  int padic_depth = 12;
  Integer search_height = Integer(10000);
  long rewrite_box = 3;
  std::uint64_t corpus_seed = 1951;
};

enum class ClaimVerdict { Holds, Fails, NotApplicable, Undecided };
const char* to_cstring(ClaimVerdict v);

/// One entry of the per-curve claim register.  The id comes from the fixed
/// taxonomy below; the evidence string names the operation outputs the
/// verdict was derived from.
struct ClaimResult {
  std::string id;
  ClaimVerdict verdict = ClaimVerdict::Undecided;
  std::string evidence;
};

/// The claim ids in report order.  Frozen: changing this list is a schema
/// bump, because downstream consumers diff reports claim-by-claim.
const std::vector<std::string>& claim_taxonomy();

/// Rational-root outcome for one coordinate-plane restriction.
struct BoundaryRootReport {
  int index = 0;  // 0: z = 0, 1: y = 0, 2: x = 0
  std::optional<std::pair<Integer, Integer>> root;
  std::optional<ProjectivePoint> point;  // root embedded into the plane
};

struct RewriteReport {
  SystemRole role = SystemRole::Fx;
  bool rewritten = false;
  std::vector<Rational> lambda;
};

struct ResultantReport {
  ReducedVariant variant = ReducedVariant::X;
  bool formal_zero = false;
  bool true_degree_nonzero = false;
};

struct SearchReport {
  Integer height = 0;
  std::vector<ProjectivePoint> points;
};

/// Everything the pipeline established about one curve.  Optional blocks are
/// absent exactly when the stage did not run: the reduction and search
/// stages are skipped once a place refuses the curve (nothing global can
/// exist), while the Jacobian block runs for every diagonal curve no matter
/// what the places said.
struct AuditReport {
  std::string id;
  TernaryCubicForm form;
  EverywhereLocalVerdict local;
  std::array<BoundaryRootReport, 3> boundary;
  bool diagonal = false;

  bool reduction_ran = false;
  std::vector<RewriteReport> rewrites;      // Fx, Fy, Fz order
  std::vector<ResultantReport> resultants;  // variant X, Y, Z order
  std::optional<CommonFactorAnalysis> common_factor;

  std::optional<WeierstrassCurve> jacobian;
  std::optional<bool> curve_identity;
  std::optional<std::size_t> enumeration_count;

  bool search_ran = false;
  SearchReport search;
  /// Everywhere locally solvable, not diagonal, and no point within the
  /// height bound.  A candidate only: the search is height-bounded, so this
  /// is never treated as a refutation of anything.
  bool witness_candidate = false;

  std::vector<ClaimResult> claims;  // one per taxonomy id, in order
};

/// Runs the whole pipeline on one curve: local solvability at every relevant
/// place, boundary restrictions, diagonality, the quadratic-system machinery
/// (multiplied-form rewrites, formal versus true-degree resultants, common
/// factor of the full system), the Jacobian block for diagonal curves, and
/// the exhaustive point search.  Deterministic for a fixed config.
/// Pre: f nonzero and normalized.
AuditReport audit_curve(const TernaryCubicForm& f, const AuditConfig& config,
                        const std::string& id = "");

/// The five named curves followed by twenty generated ones.  The names are
/// stable; only the generated forms depend on the seed.
std::vector<std::pair<std::string, TernaryCubicForm>> corpus_forms(
    std::uint64_t seed);

/// audit_curve over corpus_forms(config.corpus_seed), reports in corpus
/// order.
std::vector<AuditReport> run_corpus(const AuditConfig& config);

}  // namespace tcf
