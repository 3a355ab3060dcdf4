#pragma once

#include <string>

#include "json.hpp"
#include "tcf/audit.hpp"

namespace tcf {

/// Order-preserving JSON so that serialized payloads are byte-stable.
using Json = nlohmann::ordered_json;

/// "p/q", with "/q" omitted when the denominator is 1.
std::string rational_str(const Rational& q);

Json cubic_json(const TernaryCubicForm& f);
/// Reads {"cubic": [c1, ..., c10]} with rational strings (bare JSON
/// integers are accepted too).
TernaryCubicForm cubic_from_json(const Json& j);
/// JSON object text, or an inline comma-separated coefficient list.
TernaryCubicForm cubic_from_text(const std::string& text);

Json point_json(const ProjectivePoint& p);
Json matrix_json(const QuadraticForm6& q);
Json system_json(const QuadraticSystem& sys);
Json padic_verdict_json(const PadicCubicVerdict& v);
Json local_verdict_json(const EverywhereLocalVerdict& v);
Json curve_json(const WeierstrassCurve& c);
Json triple_json(const DiagonalCubic& d);
Json common_factor_json(const CommonFactorAnalysis& cf);
Json claim_json(const ClaimResult& c);
Json report_json(const AuditReport& r);

}  // namespace tcf
