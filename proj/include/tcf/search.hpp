#pragma once

#include <array>
#include <optional>
#include <vector>

#include "tcf/forms.hpp"

namespace tcf {

/// All integer roots of c[0] t^3 + c[1] t^2 + c[2] t + c[3] in [lo, hi],
/// in ascending order. Exact at any coefficient size: the decision path
/// uses integer arithmetic only.
/// Pre: not all four coefficients zero; lo <= hi.
std::vector<Integer> integer_cubic_roots(const std::array<Integer, 4>& c,
                                         const Integer& lo, const Integer& hi);

/// First projective zero of f of height at most `height` in a fixed scan
/// order (x ascends from 0; y ascends, from 0 on the x = 0 line and from
/// -height otherwise; z ascends), or nullopt when there is none. The scan
/// is congruence-sieved but exhaustive: a returned point satisfies f = 0
/// exactly, and nullopt rules out every zero in range.
/// Pre: f nonzero; 1 <= height <= 2^62.
std::optional<ProjectivePoint> find_projective_zero(const TernaryCubicForm& f,
                                                    const Integer& height);

/// Every projective zero of f whose canonical coprime coordinates lie in
/// [-height, height], in ascending point order. The same congruence sieve
/// as find_projective_zero prunes the scan, so the list is exhaustive and
/// exact; results at a height are a subset of results at any larger height.
/// Lines contained in a degenerate cubic contribute all their points in
/// range.
/// Pre: f nonzero; 1 <= height <= 2^62.
std::vector<ProjectivePoint> search_points_cubic(const TernaryCubicForm& f,
                                                 const Integer& height);

/// Whether f vanishes mod p^k at a point with at least one unit
/// coordinate. Exhaustive over the lifting tree, so the answer is exact;
/// intended for moderate moduli.
/// Pre: f nonzero; p prime; k >= 1; p^k <= 2^20.
bool exists_primitive_zero_mod_prime_power(const TernaryCubicForm& f,
                                           const Integer& p, int k);

}  // namespace tcf
