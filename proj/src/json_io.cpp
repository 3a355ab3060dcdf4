#include "tcf/json_io.hpp"

#include <sstream>

namespace tcf {

namespace {

const char* factor_kind_label(FactorKind k) {
  switch (k) {
    case FactorKind::None: return "none";
    case FactorKind::Linear: return "linear";
    case FactorKind::Quadratic: return "quadratic";
  }
  return "?";
}

const char* plane_label(int index) {
  switch (index) {
    case 0: return "z=0";
    case 1: return "y=0";
    default: return "x=0";
  }
}

Rational rational_from_element(const Json& e) {
  if (e.is_number_integer()) return Rational(static_cast<long>(e.get<long long>()));
  if (e.is_string()) return parse_rational(e.get<std::string>());
  throw precondition_error("expected a rational string or integer");
}

}  // namespace

std::string rational_str(const Rational& q) { return q.get_str(); }

Json cubic_json(const TernaryCubicForm& f) {
  Json coeffs = Json::array();
  for (const auto& c : f.coeffs()) coeffs.push_back(rational_str(c));
  return Json{{"cubic", coeffs}};
}

TernaryCubicForm cubic_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("cubic"))
    throw precondition_error("cubic_from_json: expected {\"cubic\": [...]}");
  const Json& arr = j.at("cubic");
  if (!arr.is_array() || arr.size() != 10)
    throw precondition_error("cubic_from_json: need exactly 10 coefficients");
  std::array<Rational, 10> a;
  for (int i = 0; i < 10; ++i) a[i] = rational_from_element(arr[i]);
  return TernaryCubicForm(a);
}

TernaryCubicForm cubic_from_text(const std::string& text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos)
    throw precondition_error("cubic_from_text: empty input");
  if (text[first] == '{') {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded())
      throw precondition_error("cubic_from_text: malformed JSON");
    return cubic_from_json(j);
  }
  std::array<Rational, 10> a;
  std::istringstream in(text);
  std::string item;
  int n = 0;
  while (std::getline(in, item, ',')) {
    if (n >= 10)
      throw precondition_error("cubic_from_text: more than 10 coefficients");
    auto l = item.find_first_not_of(" \t\r\n");
    auto r = item.find_last_not_of(" \t\r\n");
    if (l == std::string::npos)
      throw precondition_error("cubic_from_text: empty coefficient");
    a[n++] = parse_rational(item.substr(l, r - l + 1));
  }
  if (n != 10)
    throw precondition_error("cubic_from_text: need exactly 10 coefficients");
  return TernaryCubicForm(a);
}

Json point_json(const ProjectivePoint& p) {
  Json out = Json::array();
  for (const auto& c : p.coords()) out.push_back(c.get_str());
  return out;
}

Json matrix_json(const QuadraticForm6& q) {
  Json rows = Json::array();
  for (int i = 0; i < 6; ++i) {
    Json row = Json::array();
    for (int j = 0; j < 6; ++j) row.push_back(rational_str(q.entry(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Json system_json(const QuadraticSystem& sys) {
  Json members = Json::array();
  for (const auto& m : sys.members)
    members.push_back(
        Json{{"role", to_cstring(m.role)}, {"matrix", matrix_json(m.form)}});
  return Json{{"members", members}};
}

Json padic_verdict_json(const PadicCubicVerdict& v) {
  Json out;
  out["status"] = to_cstring(v.status);
  out["prime"] = v.prime.get_str();
  if (v.witness) out["witness"] = point_json(*v.witness);
  if (v.certificate) {
    Json pt = Json::array();
    for (const auto& c : v.certificate->point) pt.push_back(c.get_str());
    out["certificate"] = Json{{"point", pt},
                              {"prime", v.certificate->prime.get_str()},
                              {"coordinate", v.certificate->coordinate}};
  }
  if (v.refuted_modulus) out["refuted_modulus"] = v.refuted_modulus->get_str();
  if (!v.note.empty()) out["note"] = v.note;
  return out;
}

Json local_verdict_json(const EverywhereLocalVerdict& v) {
  Json out;
  out["status"] = to_cstring(v.status);
  out["prime_set_certified"] = v.prime_set_certified;
  Json primes = Json::array();
  for (const auto& p : v.primes_checked) primes.push_back(p.get_str());
  out["primes"] = primes;
  Json verdicts = Json::array();
  for (const auto& pv : v.verdicts) verdicts.push_back(padic_verdict_json(pv));
  out["verdicts"] = verdicts;
  if (v.failing_prime) out["failing_prime"] = v.failing_prime->get_str();
  if (v.rational_point) out["rational_point"] = point_json(*v.rational_point);
  if (!v.note.empty()) out["note"] = v.note;
  return out;
}

Json curve_json(const WeierstrassCurve& c) {
  return Json{{"a", rational_str(c.a)}, {"b", rational_str(c.b)}};
}

Json triple_json(const DiagonalCubic& d) {
  return Json::array({d.a1().get_str(), d.a2().get_str(), d.a3().get_str()});
}

Json common_factor_json(const CommonFactorAnalysis& cf) {
  Json out;
  out["kind"] = factor_kind_label(cf.kind);
  int degree = cf.kind == FactorKind::None ? 0
               : cf.kind == FactorKind::Linear ? 1
                                               : 2;
  out["degree"] = degree;
  if (cf.kind != FactorKind::None) out["factor"] = cf.factor.str();
  if (cf.kind == FactorKind::Linear) out["linear_in_xy"] = cf.linear_in_xy;
  if (cf.quadratic_isotropic) out["isotropic"] = *cf.quadratic_isotropic;
  if (cf.isotropy_witness) {
    Json w = Json::array();
    for (const auto& c : *cf.isotropy_witness) w.push_back(rational_str(c));
    out["isotropy_witness"] = w;
  }
  Json prop = Json::array();
  for (bool b : cf.proportional) prop.push_back(b);
  out["proportional"] = prop;
  if (!cf.note.empty()) out["note"] = cf.note;
  return out;
}

Json claim_json(const ClaimResult& c) {
  return Json{{"id", c.id},
              {"verdict", to_cstring(c.verdict)},
              {"evidence", c.evidence}};
}

Json report_json(const AuditReport& r) {
  Json out;
  out["schema"] = "v1";
  out["id"] = r.id;
  out["form"] = cubic_json(r.form);
  out["local"] = local_verdict_json(r.local);

  Json boundary = Json::array();
  for (const auto& b : r.boundary) {
    Json e;
    e["plane"] = plane_label(b.index);
    e["has_root"] = b.root.has_value();
    if (b.root) {
      e["root"] = Json::array({b.root->first.get_str(), b.root->second.get_str()});
      e["point"] = point_json(*b.point);
    }
    boundary.push_back(e);
  }
  out["boundary"] = boundary;

  out["diagonal"] = r.diagonal;

  Json red;
  red["ran"] = r.reduction_ran;
  if (r.reduction_ran) {
    Json rewrites = Json::array();
    for (const auto& rw : r.rewrites) {
      Json e;
      e["role"] = to_cstring(rw.role);
      e["rewritten"] = rw.rewritten;
      Json lam = Json::array();
      for (const auto& l : rw.lambda) lam.push_back(rational_str(l));
      e["lambda"] = lam;
      rewrites.push_back(e);
    }
    red["rewrites"] = rewrites;
    Json res = Json::array();
    for (const auto& rs : r.resultants)
      res.push_back(Json{{"variant", to_cstring(rs.variant)},
                         {"formal_zero", rs.formal_zero},
                         {"true_degree_nonzero", rs.true_degree_nonzero}});
    red["resultants"] = res;
    red["common_factor"] = common_factor_json(*r.common_factor);
  }
  out["reduction"] = red;

  if (r.jacobian) {
    out["jacobian"] = curve_json(*r.jacobian);
    out["curve_identity"] = *r.curve_identity;
    out["enumeration_count"] = static_cast<std::int64_t>(*r.enumeration_count);
  }

  Json search;
  search["ran"] = r.search_ran;
  search["height"] = r.search.height.get_str();
  if (r.search_ran) {
    Json pts = Json::array();
    for (const auto& p : r.search.points) pts.push_back(point_json(p));
    search["points"] = pts;
  }
  out["search"] = search;

  out["witness_candidate"] = r.witness_candidate;

  Json claims = Json::array();
  for (const auto& c : r.claims) claims.push_back(claim_json(c));
  out["claims"] = claims;
  return out;
}

}  // namespace tcf
