// tcf: command-line front end. Every subcommand reads exact data, calls one
// library entry point, and prints either a schema-versioned JSON document or
// a plain-text table. Outputs carry no timestamps, so identical invocations
// produce identical bytes.
//
// Exit codes: 0 success, 2 invalid input, 3 result dominated by Undecided
// verdicts (bounded procedures that ran out of depth, not errors).

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tcf/audit.hpp"
#include "tcf/jacobian.hpp"
#include "tcf/json_io.hpp"
#include "tcf/localfields.hpp"
#include "tcf/reduction.hpp"
#include "tcf/search.hpp"

namespace {

using tcf::AuditConfig;
using tcf::Integer;
using tcf::Json;
using tcf::Rational;
using tcf::TernaryCubicForm;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitUndecided = 3;

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos)
      throw tcf::precondition_error("empty entry in list '" + s + "'");
    out.push_back(item.substr(b, e - b + 1));
  }
  if (out.empty()) throw tcf::precondition_error("empty list");
  return out;
}

std::vector<Rational> rational_list(const std::string& s) {
  std::vector<Rational> out;
  for (const auto& item : split_commas(s)) out.push_back(tcf::parse_rational(item));
  return out;
}

Integer integer_arg(const std::string& s) {
  Rational q = tcf::parse_rational(s);
  if (q.get_den() != 1)
    throw tcf::precondition_error("expected an integer, got '" + s + "'");
  return q.get_num();
}

TernaryCubicForm form_arg(const std::string& text) {
  TernaryCubicForm f = tcf::cubic_from_text(text);
  if (f.is_zero()) throw tcf::precondition_error("--form: the zero form");
  return f.normalized();
}

bool is_prime(const Integer& p) {
  return p >= 2 && mpz_probab_prime_p(p.get_mpz_t(), 30) > 0;
}

// Environment overrides for the config fields. Values are validated here,
// loudly: a malformed or out-of-range value exits 2 instead of being
// silently replaced by the default. Explicit flags still win.
template <typename T>
T env_number(const char* name, T fallback, T lo, T hi) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return fallback;
  std::string s(raw);
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || value < lo ||
      value > hi)
    throw tcf::precondition_error(std::string(name) + ": invalid value '" + s +
                                  "'");
  return value;
}

std::string env_choice(const char* name, const std::string& fallback,
                       std::initializer_list<const char*> allowed) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return fallback;
  std::string s(raw);
  for (const char* a : allowed)
    if (s == a) return s;
  throw tcf::precondition_error(std::string(name) + ": invalid value '" + s +
                                "'");
}

void print_payload(const Json& payload, const std::string& table,
                   const std::string& output) {
  if (output == "json")
    std::cout << payload.dump(2) << '\n';
  else
    std::cout << table;
}

std::string verdict_table(const tcf::PadicCubicVerdict& v) {
  std::ostringstream t;
  t << "place: " << v.prime << '\n';
  t << "status: " << tcf::to_cstring(v.status) << '\n';
  if (v.witness) t << "witness: " << v.witness->str() << '\n';
  if (v.certificate) {
    t << "certificate point: (" << v.certificate->point[0] << ", "
      << v.certificate->point[1] << ", " << v.certificate->point[2] << ")\n";
    t << "certificate coordinate: " << v.certificate->coordinate << '\n';
  }
  if (v.refuted_modulus) t << "refuted modulus: " << *v.refuted_modulus << '\n';
  if (!v.note.empty()) t << "note: " << v.note << '\n';
  return t.str();
}

int cmd_local(const std::string& form_text, const std::string& place_text,
              int depth, const std::string& output) {
  TernaryCubicForm f = form_arg(form_text);
  if (place_text == "inf") {
    bool ok = tcf::solvable_real_cubic(f);
    Json out{{"schema", "v1"},
             {"place", "inf"},
             {"status", ok ? "solvable" : "unsolvable"}};
    std::ostringstream t;
    t << "place: inf\nstatus: " << (ok ? "solvable" : "unsolvable") << '\n';
    print_payload(out, t.str(), output);
    return kExitOk;
  }
  Integer p = integer_arg(place_text);
  if (!is_prime(p))
    throw tcf::precondition_error("--place: '" + place_text +
                                  "' is neither inf nor a prime");
  auto v = tcf::solvable_padic_cubic(f, p, depth);
  Json out{{"schema", "v1"}, {"place", p.get_str()}};
  Json vj = tcf::padic_verdict_json(v);
  for (auto& [k, val] : vj.items()) out[k] = val;
  print_payload(out, verdict_table(v), output);
  return v.status == tcf::Solvability::Undecided ? kExitUndecided : kExitOk;
}

int cmd_quadratic(const std::string& diag_text, const std::string& output) {
  auto d = rational_list(diag_text);
  bool iso = tcf::is_isotropic_global(d);
  Json out{{"schema", "v1"}, {"isotropic", iso}};
  std::ostringstream t;
  t << "isotropic: " << (iso ? "true" : "false") << '\n';
  print_payload(out, t.str(), output);
  return kExitOk;
}

int cmd_reduce(const std::string& form_text, const std::string& variant,
               const std::string& emit, const std::string& output) {
  TernaryCubicForm f = form_arg(form_text);
  std::vector<tcf::ReducedVariant> variants;
  if (variant.empty() || variant == "x") variants.push_back(tcf::ReducedVariant::X);
  if (variant.empty() || variant == "y") variants.push_back(tcf::ReducedVariant::Y);
  if (variant.empty() || variant == "z") variants.push_back(tcf::ReducedVariant::Z);

  if (emit == "system") {
    auto sys = variant.empty() ? tcf::full_system(f)
                               : tcf::reduced_system(f, variants.front());
    Json out{{"schema", "v1"}, {"variant", variant.empty() ? "full" : variant}};
    out["members"] = tcf::system_json(sys)["members"];
    std::ostringstream t;
    t << "variant: " << (variant.empty() ? "full" : variant) << '\n';
    for (const auto& m : sys.members)
      t << tcf::to_cstring(m.role) << ": " << m.form.to_poly().str() << '\n';
    print_payload(out, t.str(), output);
    return kExitOk;
  }

  if (emit == "resultants") {
    Json rows = Json::array();
    std::ostringstream t;
    for (auto v : variants) {
      auto audit = tcf::formal_resultant_audit(
          tcf::generic_combinations(tcf::reduced_system(f, v)));
      bool formal_zero = audit.formal.is_zero();
      bool true_nonzero = !audit.true_deg.is_zero();
      rows.push_back(Json{{"variant", tcf::to_cstring(v)},
                          {"formal_is_zero", formal_zero},
                          {"true_degree_nonzero", true_nonzero},
                          {"true_resultant", audit.true_deg.str()}});
      t << "variant " << tcf::to_cstring(v)
        << ": formal resultant vanishes: " << (formal_zero ? "yes" : "no")
        << ", true-degree resultant nonzero: " << (true_nonzero ? "yes" : "no")
        << '\n';
    }
    Json out{{"schema", "v1"}, {"resultants", rows}};
    print_payload(out, t.str(), output);
    return kExitOk;
  }

  // emit == "gcd"
  auto analysis = variant.empty()
                      ? tcf::common_factor_analysis(tcf::full_system(f))
                      : tcf::common_factor_analysis(
                            tcf::reduced_system(f, variants.front()));
  Json out{{"schema", "v1"}};
  Json gj = tcf::common_factor_json(analysis);
  for (auto& [k, val] : gj.items()) out[k] = val;
  std::ostringstream t;
  for (auto& [k, val] : out.items()) {
    if (k == "schema") continue;
    t << k << ": " << (val.is_string() ? val.get<std::string>() : val.dump())
      << '\n';
  }
  print_payload(out, t.str(), output);
  return kExitOk;
}

int cmd_jacobian(const std::string& diag_text, const std::string& output) {
  auto entries = split_commas(diag_text);
  if (entries.size() != 3)
    throw tcf::precondition_error("--diagonal: expected three integers");
  auto d = tcf::DiagonalCubic::make(integer_arg(entries[0]),
                                    integer_arg(entries[1]),
                                    integer_arg(entries[2]));
  auto curve = tcf::jacobian_curve(d);
  Json out{{"schema", "v1"}};
  Json cj = tcf::curve_json(curve);
  for (auto& [k, val] : cj.items()) out[k] = val;
  std::ostringstream t;
  t << "a: " << tcf::rational_str(curve.a) << '\n';
  t << "b: " << tcf::rational_str(curve.b) << '\n';
  print_payload(out, t.str(), output);
  return kExitOk;
}

int cmd_enumerate(const std::string& product_text, const std::string& output) {
  Integer m = integer_arg(product_text);
  if (m == 0) throw tcf::precondition_error("--product: zero has no classes");
  auto classes = tcf::enumerate_diagonal_cubics(m);
  Json rows = Json::array();
  for (const auto& c : classes) rows.push_back(tcf::triple_json(c));
  Json out{{"schema", "v1"},
           {"product", m.get_str()},
           {"count", classes.size()},
           {"classes", rows}};
  std::ostringstream t;
  t << "product: " << m << '\n' << "count: " << classes.size() << '\n';
  for (const auto& c : classes) t << c.str() << '\n';
  print_payload(out, t.str(), output);
  return kExitOk;
}

int cmd_search(const std::string& form_text, long height,
               const std::string& output) {
  TernaryCubicForm f = form_arg(form_text);
  Integer h(height);
  auto points = tcf::search_points_cubic(f, h);
  Json rows = Json::array();
  for (const auto& p : points) rows.push_back(tcf::point_json(p));
  Json out{{"schema", "v1"},
           {"height", h.get_str()},
           {"count", points.size()},
           {"points", rows}};
  std::ostringstream t;
  t << "height: " << h << '\n' << "count: " << points.size() << '\n';
  for (const auto& p : points) t << p.str() << '\n';
  print_payload(out, t.str(), output);
  return kExitOk;
}

void filter_claims(Json& report, const std::vector<std::string>& keep) {
  Json kept = Json::array();
  for (auto& c : report["claims"])
    if (std::find(keep.begin(), keep.end(), c["id"].get<std::string>()) !=
        keep.end())
      kept.push_back(c);
  report["claims"] = kept;
}

std::string report_table(const tcf::AuditReport& r) {
  std::ostringstream t;
  t << "== " << r.id << " ==\n";
  t << "form: " << r.form.to_poly().str() << '\n';
  t << "local: " << tcf::to_cstring(r.local.status) << '\n';
  t << "diagonal: " << (r.diagonal ? "yes" : "no") << '\n';
  if (r.jacobian)
    t << "jacobian: a = " << tcf::rational_str(r.jacobian->a)
      << ", b = " << tcf::rational_str(r.jacobian->b) << '\n';
  if (r.enumeration_count)
    t << "classes sharing the jacobian: " << *r.enumeration_count << '\n';
  if (r.search_ran)
    t << "points at height " << r.search.height << ": "
      << r.search.points.size() << '\n';
  t << "claims:\n";
  std::size_t width = 0;
  for (const auto& c : r.claims) width = std::max(width, c.id.size());
  for (const auto& c : r.claims) {
    std::string id = c.id;
    id.append(width + 2 - id.size(), ' ');
    std::string verdict = tcf::to_cstring(c.verdict);
    if (verdict.size() < 16) verdict.append(16 - verdict.size(), ' ');
    t << "  " << id << verdict << c.evidence << '\n';
  }
  return t.str();
}

int cmd_audit(const std::string& form_text, bool corpus,
              const std::vector<std::string>& claim_filter,
              const AuditConfig& cfg, const std::string& output) {
  for (const auto& id : claim_filter) {
    const auto& ids = tcf::claim_taxonomy();
    if (std::find(ids.begin(), ids.end(), id) == ids.end())
      throw tcf::precondition_error("--claims: unknown claim id '" + id + "'");
  }

  std::vector<tcf::AuditReport> reports;
  if (corpus) {
    reports = tcf::run_corpus(cfg);
  } else {
    reports.push_back(tcf::audit_curve(form_arg(form_text), cfg));
  }

  bool undecided = false;
  for (const auto& r : reports)
    if (r.local.status == tcf::Solvability::Undecided) undecided = true;

  std::ostringstream t;
  Json payload;
  if (corpus) {
    Json rows = Json::array();
    for (const auto& r : reports) {
      Json j = tcf::report_json(r);
      if (!claim_filter.empty()) filter_claims(j, claim_filter);
      rows.push_back(std::move(j));
      t << report_table(r) << '\n';
    }
    payload = Json{{"schema", "v1"},
                   {"corpus_seed", cfg.corpus_seed},
                   {"count", reports.size()},
                   {"reports", rows}};
  } else {
    payload = tcf::report_json(reports.front());
    if (!claim_filter.empty()) filter_claims(payload, claim_filter);
    t << report_table(reports.front());
  }
  print_payload(payload, t.str(), output);
  return undecided ? kExitUndecided : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "tcf: exact local-global analysis of ternary cubic forms.\n"
      "Forms are given as JSON {\"cubic\": [A1..A10]} or as ten comma-"
      "separated\ncoefficients in the monomial order x^3, y^3, z^3, x^2*y, "
      "x^2*z, y^2*x,\ny^2*z, z^2*x, z^2*y, x*y*z."};
  app.require_subcommand(1);

  AuditConfig defaults;
  std::string output;
  int env_depth;
  long env_height, env_box;
  std::uint64_t env_seed;
  try {
    output = env_choice("TCF_OUTPUT", "json", {"json", "table"});
    env_depth = env_number("TCF_PADIC_DEPTH", defaults.padic_depth, 1, 60);
    env_height = env_number<long>("TCF_SEARCH_HEIGHT", 10000, 1,
                                  std::numeric_limits<long>::max());
    env_box = env_number<long>("TCF_REWRITE_BOX", defaults.rewrite_box, 1,
                               std::numeric_limits<long>::max());
    env_seed = env_number<std::uint64_t>(
        "TCF_CORPUS_SEED", defaults.corpus_seed, 0,
        std::numeric_limits<std::uint64_t>::max());
  } catch (const tcf::precondition_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }

  app.add_option("--output", output, "Rendering: json or table (TCF_OUTPUT)")
      ->check(CLI::IsMember({"json", "table"}))
      ->capture_default_str();

  auto* local = app.add_subcommand("local", "Solvability over one completion");
  local->fallthrough();
  std::string local_form, local_place;
  int local_depth = env_depth;
  local->add_option("--form", local_form, "The cubic form")->required();
  local->add_option("--place", local_place, "inf or a prime")->required();
  local->add_option("--depth", local_depth, "p-adic lifting depth (TCF_PADIC_DEPTH)")
      ->check(CLI::Range(1, 60))
      ->capture_default_str();

  auto* quadratic =
      app.add_subcommand("quadratic", "Global isotropy of a diagonal quadratic");
  quadratic->fallthrough();
  std::string quad_diag;
  quadratic->add_option("--diag", quad_diag, "Diagonal entries, comma-separated")
      ->required();

  auto* reduce =
      app.add_subcommand("reduce", "Quadratic systems attached to a cubic");
  reduce->fallthrough();
  std::string reduce_form, reduce_variant, reduce_emit = "system";
  reduce->add_option("--form", reduce_form, "The cubic form")->required();
  reduce->add_option("--variant", reduce_variant, "Reduced variant: x, y, or z")
      ->check(CLI::IsMember({"x", "y", "z"}));
  reduce->add_option("--emit", reduce_emit, "system, resultants, or gcd")
      ->check(CLI::IsMember({"system", "resultants", "gcd"}))
      ->capture_default_str();

  auto* jacobian =
      app.add_subcommand("jacobian", "Jacobian curve of a diagonal cubic");
  jacobian->fallthrough();
  std::string jac_diag;
  jacobian->add_option("--diagonal", jac_diag, "A1,A2,A3")->required();

  auto* enumerate = app.add_subcommand(
      "enumerate", "Diagonal cubics sharing a coefficient product");
  enumerate->fallthrough();
  std::string enum_product;
  enumerate->add_option("--product", enum_product, "Target product")->required();

  auto* search =
      app.add_subcommand("search", "Exhaustive point listing up to a height");
  search->fallthrough();
  std::string search_form;
  long search_height = env_height;
  search->add_option("--form", search_form, "The cubic form")->required();
  search->add_option("--height", search_height, "Height bound (TCF_SEARCH_HEIGHT)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* audit =
      app.add_subcommand("audit", "Full claim-by-claim audit of a curve");
  audit->fallthrough();
  std::string audit_form, audit_claims;
  bool audit_corpus = false;
  int audit_depth = env_depth;
  long audit_height = env_height;
  long audit_box = env_box;
  std::uint64_t audit_seed = env_seed;
  auto* audit_form_opt =
      audit->add_option("--form", audit_form, "Audit this one form");
  auto* audit_corpus_opt =
      audit->add_flag("--corpus", audit_corpus, "Audit the fixed corpus");
  audit_form_opt->excludes(audit_corpus_opt);
  audit_corpus_opt->excludes(audit_form_opt);
  audit->add_option("--claims", audit_claims,
                    "Only report these claim ids (comma-separated)");
  audit->add_option("--depth", audit_depth, "p-adic lifting depth (TCF_PADIC_DEPTH)")
      ->check(CLI::Range(1, 60))
      ->capture_default_str();
  audit->add_option("--height", audit_height, "Point search height (TCF_SEARCH_HEIGHT)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  audit->add_option("--box", audit_box, "Rewrite coefficient box (TCF_REWRITE_BOX)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  audit->add_option("--seed", audit_seed, "Corpus seed (TCF_CORPUS_SEED)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return kExitInvalid;
  }

  try {
    if (app.got_subcommand(local))
      return cmd_local(local_form, local_place, local_depth, output);
    if (app.got_subcommand(quadratic)) return cmd_quadratic(quad_diag, output);
    if (app.got_subcommand(reduce))
      return cmd_reduce(reduce_form, reduce_variant, reduce_emit, output);
    if (app.got_subcommand(jacobian)) return cmd_jacobian(jac_diag, output);
    if (app.got_subcommand(enumerate)) return cmd_enumerate(enum_product, output);
    if (app.got_subcommand(search))
      return cmd_search(search_form, search_height, output);
    if (app.got_subcommand(audit)) {
      if (!audit_corpus && audit_form.empty()) {
        std::cerr << "audit needs --form or --corpus\n\n" << app.help();
        return kExitInvalid;
      }
      AuditConfig cfg;
      cfg.padic_depth = audit_depth;
      cfg.search_height = Integer(audit_height);
      cfg.rewrite_box = audit_box;
      cfg.corpus_seed = audit_seed;
      std::vector<std::string> claim_filter;
      if (!audit_claims.empty()) claim_filter = split_commas(audit_claims);
      return cmd_audit(audit_form, audit_corpus, claim_filter, cfg, output);
    }
  } catch (const tcf::precondition_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}
