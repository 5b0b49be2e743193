#pragma once

// Command-line front end. Reports go to `out`, diagnostics to `err`.
// Exit codes: 0 success, 1 domain error (error JSON on `out`), 2 usage or
// parse error.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "akg/bounds.hpp"
#include "akg/cone.hpp"
#include "akg/divisors.hpp"
#include "akg/errors.hpp"
#include "akg/json_io.hpp"
#include "akg/selfcheck.hpp"
#include "akg/special_rings.hpp"

namespace akg::cli {

using nlohmann::json;

enum Exit : int { kOk = 0, kDomain = 1, kUsage = 2 };

/// Thrown by a handler that has already decided on a domain-error report.
struct DomainReport {
  json body;
};

inline json read_document(const std::string& path, const std::string& inline_json) {
  if (!path.empty() && !inline_json.empty()) throw io::SchemaError("give either -i or --json, not both");
  std::string text = inline_json;
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw io::SchemaError("cannot read " + path);
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  if (text.empty()) return json::object();
  return json::parse(text);
}

// ---------------------------------------------------------------------------
// Handlers: document in, report out.

inline json with_saturation(json report, const json& doc, const MonoidSpec& m, const FacetSystem& f) {
  if (!doc.contains("saturation_bound")) return report;
  const std::size_t bound = io::count_from_json(doc.at("saturation_bound"));
  if (bound > 16) throw DomainError(ErrorCode::FormatViolation, "saturation_bound must be <= 16");
  SaturationReport s = saturation_check(m, f, static_cast<int>(bound));
  json sat{{"saturated", s.saturated}, {"points_checked", s.points_checked}};
  if (s.witness_ambient) sat["witness"] = io::to_json(*s.witness_ambient);
  report["saturation"] = sat;
  return report;
}

inline json monoid_facets(const json& doc) {
  MonoidSpec m = io::monoid_from_json(doc);
  FacetSystem f = facet_valuations(m);
  json report = io::facet_report(m, f);
  if (doc.contains("segre")) {
    const auto mm = io::count_from_json(doc.at("segre")[0]);
    const auto nn = io::count_from_json(doc.at("segre")[1]);
    json labels = json::array();
    for (const auto& l : segre_facet_labels(mm, nn, m, f))
      labels.push_back(json{{"sort", l.sort == SegreSort::Row ? "row" : "col"}, {"index", l.index}});
    report["segre_labels"] = labels;
  }
  return with_saturation(report, doc, m, f);
}

inline json monoid_dkg(const json& doc) {
  MonoidSpec m = io::monoid_from_json(doc);
  FacetSystem f = facet_valuations(m);
  ClassGroupData cg = divisor_class_group(f);
  return json{{"facets", f.count()}, {"rank", m.dim}, {"dkg", io::to_json(cg.dkg)}};
}

inline json monoid_akg(const json& doc) {
  MonoidSpec m = io::monoid_from_json(doc);
  FacetSystem f = facet_valuations(m);
  SimplicialityReport s = simpliciality_report(m, f);
  ClassGroupData cg = divisor_class_group(f);
  return json{{"akg", io::to_json(cg.akg)},
              {"dkg", io::to_json(cg.dkg)},
              {"simplicial", s.simplicial},
              {"dkg_torsion", s.dkg_is_torsion},
              {"akg_zero", s.akg_zero}};
}

/// For a Segre monoid the divisor may name primes as {"rows": [...], "cols": [...]}.
inline MonomialDivisor segre_divisor(const json& doc, const MonoidSpec& m, const FacetSystem& f) {
  const json& div = doc.at("divisor");
  const auto mm = io::count_from_json(doc.at("segre")[0]);
  const auto nn = io::count_from_json(doc.at("segre")[1]);
  const auto rows = div.contains("rows") ? io::indices_from_json(div.at("rows")) : std::vector<std::size_t>{};
  const auto cols = div.contains("cols") ? io::indices_from_json(div.at("cols")) : std::vector<std::size_t>{};
  segre_union_affine(mm, nn, rows, cols);  // index validation
  auto labels = segre_facet_labels(mm, nn, m, f);
  FacetSet s;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto& chosen = labels[i].sort == SegreSort::Row ? rows : cols;
    if (std::find(chosen.begin(), chosen.end(), labels[i].index) != chosen.end()) s.push_back(i);
  }
  return MonomialDivisor::from_support(s, f.count());
}

inline json monoid_affine(const json& doc) {
  MonoidSpec m = io::monoid_from_json(doc);
  FacetSystem f = facet_valuations(m);
  const json& div = io::require(doc, "divisor");
  const bool by_prime = doc.contains("segre") && div.is_object() && (div.contains("rows") || div.contains("cols"));
  MonomialDivisor d = by_prime ? segre_divisor(doc, m, f) : io::divisor_from_json(div, f.count());
  RealizabilityReport r = support_realizable(m, f, support(d));
  json report{{"affine", r.realizable},
              {"support", r.support},
              {"affine_trivial", is_affine_trivial(f, d)},
              {"class", io::to_json(class_of(embedding_matrix(f), d.coeffs).free_part)}};
  if (r.realizable) {
    report["witness"] = io::to_json(m.to_ambient(r.witness));
    report["witness_valuation"] = io::to_json(r.witness_valuation);
  }
  return report;
}

inline HyperbolaData hyperbola_from_json(const json& doc) {
  HyperbolaData h;
  h.d = io::vector_from_json(io::require(doc, "d"));
  if (doc.contains("local")) {
    if (!doc.at("local").is_boolean()) throw io::SchemaError("\"local\" must be a boolean");
    h.base_local = doc.at("local").get<bool>();
  }
  if (doc.contains("comaximal")) {
    const json& c = doc.at("comaximal");
    if (!c.is_array()) throw io::SchemaError("\"comaximal\" must be an array of boolean arrays");
    std::vector<std::vector<bool>> rel;
    for (const auto& row : c) {
      if (!row.is_array()) throw io::SchemaError("\"comaximal\" must be an array of boolean arrays");
      std::vector<bool> r;
      for (const auto& x : row) {
        if (!x.is_boolean()) throw io::SchemaError("\"comaximal\" entries must be booleans");
        r.push_back(x.get<bool>());
      }
      rel.push_back(std::move(r));
    }
    h.comaximal = std::move(rel);
  }
  return h;
}

inline json hyperbola(const json& doc) {
  HyperbolaData h = hyperbola_from_json(doc);
  json report{{"dkg", io::to_json(hyperbola_dkg(h))}, {"local", h.base_local}};
  if (h.base_local || h.comaximal) report["akg_zero"] = hyperbola_akg_zero(h);
  if (h.base_local) report["akg"] = io::to_json(hyperbola_akg(h));
  if (doc.contains("n")) {
    Vector n = io::vector_from_json(doc.at("n"));
    report["coaffine"] = hyperbola_is_coaffine(h, n);
    report["affine_trivial"] = hyperbola_is_affine_trivial(h, n);
  }
  return report;
}

inline json determinantal(const json& doc) {
  DeterminantalData dd{io::int_from_json(io::require(doc, "m")), io::int_from_json(io::require(doc, "n")),
                       io::int_from_json(io::require(doc, "k"))};
  return json{{"dimension", det_dimension(dd)},
              {"ideal_height", det_ideal_height(dd)},
              {"dkg", io::to_json(det_dkg(dd))},
              {"akg", io::to_json(det_akg(dd))},
              {"extension_height", det_extension_height(dd)},
              {"generator_complement_affine", false}};
}

inline json segre(const json& doc) {
  const std::size_t m = io::count_from_json(io::require(doc, "m"));
  const std::size_t n = io::count_from_json(io::require(doc, "n"));
  const auto rows = doc.contains("rows") ? io::indices_from_json(doc.at("rows")) : std::vector<std::size_t>{};
  const auto cols = doc.contains("cols") ? io::indices_from_json(doc.at("cols")) : std::vector<std::size_t>{};
  return json{{"affine", segre_union_affine(m, n, rows, cols)},
              {"row_superheight", segre_superheight(m, n, SegrePrimeSort::Row)},
              {"column_superheight", segre_superheight(m, n, SegrePrimeSort::Column)},
              {"dimension", m + n - 1}};
}

inline bounds::KnowledgeBase knowledge_from_json(const json& doc) {
  using namespace bounds;
  Configuration config = Configuration::Ideal;
  if (doc.contains("configuration")) {
    const json& c = doc.at("configuration");
    if (c == "ideal") {
      config = Configuration::Ideal;
    } else if (c == "scheme") {
      config = Configuration::Scheme;
    } else {
      throw io::SchemaError("\"configuration\" must be \"ideal\" or \"scheme\"");
    }
  }
  KnowledgeBase kb(config);
  if (doc.contains("flags")) {
    if (!doc.at("flags").is_array()) throw io::SchemaError("\"flags\" must be an array of names");
    for (const auto& f : doc.at("flags")) {
      auto flag = f.is_string() ? parse_flag(f.get<std::string>()) : std::nullopt;
      if (!flag) throw io::SchemaError("unknown flag " + f.dump());
      kb = kb.with_flag(*flag);
    }
  }
  if (doc.contains("facts")) {
    if (!doc.at("facts").is_array()) throw io::SchemaError("\"facts\" must be an array");
    for (const auto& fact : doc.at("facts")) {
      const json& inv = io::require(fact, "invariant");
      const json& rel = io::require(fact, "rel");
      auto i = inv.is_string() ? parse_invariant(inv.get<std::string>()) : std::nullopt;
      auto r = rel.is_string() ? parse_relation(rel.get<std::string>()) : std::nullopt;
      if (!i) throw io::SchemaError("unknown invariant " + inv.dump());
      if (!r) throw io::SchemaError("unknown relation " + rel.dump());
      kb = assert_fact(kb, *i, *r, io::int_from_json(io::require(fact, "value")));
    }
  }
  return kb;
}

inline json bounds_report(const json& doc) {
  using namespace bounds;
  PropagationResult result = propagate(knowledge_from_json(doc));
  if (const auto* c = std::get_if<Contradiction>(&result)) {
    json witness{{"rule", c->rule},
                 {"anchor", c->anchor},
                 {"invariant", std::string(name(c->invariant))},
                 {"lo", c->lo},
                 {"hi", c->hi},
                 {"trace", io::to_json(c->trace)}};
    json body = io::error_json("Contradiction", "rule " + c->rule + " forces " + std::string(name(c->invariant)) +
                                                    " into an empty interval");
    body["witness"] = witness;
    throw DomainReport{body};
  }
  const auto& p = std::get<Propagated>(result);
  return json{{"status", "consistent"}, {"intervals", io::intervals_json(p.kb)}, {"trace", io::to_json(p.trace)}};
}

/// "RULE:+k" or "RULE:-k": shifts every edge offset of RULE by k.
inline void apply_mutation(bounds::RuleBook& rules, const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw io::SchemaError("mutation must look like R2:+1");
  const std::string id = spec.substr(0, colon);
  std::int64_t delta = 0;
  try {
    std::size_t used = 0;
    delta = std::stoll(spec.substr(colon + 1), &used);
    if (used != spec.size() - colon - 1) throw std::invalid_argument(spec);
  } catch (const std::exception&) {
    throw io::SchemaError("bad mutation offset in " + spec);
  }
  for (auto& rule : rules) {
    if (rule.id != id) continue;
    for (auto& e : rule.edges) e.offset += delta;
    return;
  }
  throw io::SchemaError("no rule named " + id);
}

inline json selfcheck_report(const std::vector<std::string>& mutations) {
  bounds::RuleBook rules = bounds::default_rules();
  for (const auto& m : mutations) apply_mutation(rules, m);
  json items = json::array();
  std::size_t passed = 0;
  for (const auto& item : selfcheck::run_all(rules)) {
    items.push_back(json{{"id", item.id}, {"name", item.name}, {"pass", item.pass}, {"detail", item.detail}});
    if (item.pass) ++passed;
  }
  json report{{"items", items}, {"passed", passed}, {"total", items.size()}};
  if (passed != items.size()) throw DomainReport{report};
  return report;
}

// ---------------------------------------------------------------------------

inline std::string render(const json& j, const std::string& format) {
  return format == "text" ? io::to_text(j) : j.dump(2) + "\n";
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Class groups, affine complements and height bounds", "akg"};
  app.require_subcommand(1);
  std::string path, inline_json, format = "json";
  std::vector<std::string> mutations;

  struct Entry {
    const char* name;
    const char* help;
    json (*handler)(const json&);
  };
  const std::vector<Entry> entries = {
      {"monoid-facets", "facet normals of a normal affine monoid", monoid_facets},
      {"monoid-dkg", "divisor class group of K[M]", monoid_dkg},
      {"monoid-akg", "affine class group of K[M]", monoid_akg},
      {"monoid-affine", "does the monomial divisor have affine complement", monoid_affine},
      {"hyperbola", "hyperbola ring class groups and coaffinity", hyperbola},
      {"determinantal", "determinantal ring invariants", determinantal},
      {"segre", "Segre ring affinity rule and superheights", segre},
      {"bounds", "propagate height and dimension bounds", bounds_report},
  };
  std::vector<CLI::App*> subs;
  for (const auto& e : entries) {
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    sub->add_option("-i,--input", path, "input JSON file");
    sub->add_option("--json", inline_json, "inline JSON input");
    sub->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}));
    subs.push_back(sub);
  }
  CLI::App* check = app.add_subcommand("selfcheck", "run the regression set");
  check->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}));
  check->add_option("--mutate", mutations, "shift a rule's constant, e.g. R2:+1");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "akg: " << e.what() << "\n" << "run 'akg --help' for usage\n";
    return kUsage;
  }

  try {
    json report;
    if (check->parsed()) {
      report = selfcheck_report(mutations);
    } else {
      for (std::size_t i = 0; i < subs.size(); ++i)
        if (subs[i]->parsed()) report = entries[i].handler(read_document(path, inline_json));
    }
    out << render(report, format);
    return kOk;
  } catch (const DomainReport& r) {
    out << render(r.body, format);
    return kDomain;
  } catch (const DomainError& e) {
    out << render(io::error_json(to_string(e.code()), e.what()), format);
    return kDomain;
  } catch (const io::SchemaError& e) {
    err << "akg: invalid input: " << e.what() << "\n";
    return kUsage;
  } catch (const json::exception& e) {
    err << "akg: invalid input: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace akg::cli
