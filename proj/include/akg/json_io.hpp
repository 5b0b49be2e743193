#pragma once

// JSON encodings of inputs and reports. Integers that fit in 64 bits are
// written as JSON numbers, larger ones as decimal strings; both forms are
// accepted on input.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "akg/bounds.hpp"
#include "akg/cone.hpp"
#include "akg/divisors.hpp"
#include "akg/errors.hpp"
#include "akg/lattice.hpp"

namespace akg::io {

using nlohmann::json;

/// Malformed JSON document (as opposed to a well-formed request the
/// mathematics rejects).
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline json to_json(const BigInt& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max()) {
    return json(static_cast<std::int64_t>(x));
  }
  return json(x.str());
}

inline json to_json(const Vector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline json to_json(const std::vector<Vector>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(to_json(v));
  return a;
}

inline json to_json(const AbelianGroup& g) {
  return json{{"free_rank", g.free_rank}, {"invariant_factors", to_json(g.invariant_factors)}, {"text", g.to_string()}};
}

inline json to_json(const bounds::Interval& iv) {
  return json{{"lo", iv.lo}, {"hi", iv.bounded() ? json(iv.hi) : json(nullptr)}};
}

inline json to_json(const bounds::Trace& trace) {
  json a = json::array();
  for (const auto& s : trace) {
    a.push_back(json{{"rule", s.rule},
                     {"anchor", s.anchor},
                     {"invariant", std::string(bounds::name(s.invariant))},
                     {"before", to_json(s.before)},
                     {"after", to_json(s.after)}});
  }
  return a;
}

inline json intervals_json(const bounds::KnowledgeBase& kb) {
  json o = json::object();
  for (std::size_t i = 0; i < bounds::kInvariantCount; ++i) {
    auto inv = static_cast<bounds::Invariant>(i);
    o[std::string(bounds::name(inv))] = to_json(kb.interval(inv));
  }
  return o;
}

inline const json& require(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw SchemaError(std::string("missing field \"") + key + "\"");
  }
  return doc.at(key);
}

inline BigInt big_from_json(const json& j) {
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  if (j.is_number_unsigned()) return BigInt(j.get<std::uint64_t>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos) {
      throw SchemaError("not an integer: \"" + s + "\"");
    }
    return BigInt(s);
  }
  throw SchemaError("expected an integer, got " + j.dump());
}

inline std::int64_t int_from_json(const json& j) {
  if (!j.is_number_integer()) throw SchemaError("expected an integer, got " + j.dump());
  return j.get<std::int64_t>();
}

inline std::size_t count_from_json(const json& j) {
  std::int64_t v = int_from_json(j);
  if (v < 0) throw SchemaError("expected a nonnegative integer, got " + j.dump());
  return static_cast<std::size_t>(v);
}

inline Vector vector_from_json(const json& j) {
  if (!j.is_array()) throw SchemaError("expected an array of integers, got " + j.dump());
  Vector v;
  for (const auto& x : j) v.push_back(big_from_json(x));
  return v;
}

inline std::vector<Vector> vectors_from_json(const json& j) {
  if (!j.is_array()) throw SchemaError("expected an array of integer arrays");
  std::vector<Vector> out;
  for (const auto& v : j) out.push_back(vector_from_json(v));
  return out;
}

inline std::vector<std::size_t> indices_from_json(const json& j) {
  if (!j.is_array()) throw SchemaError("expected an array of indices");
  std::vector<std::size_t> out;
  for (const auto& x : j) out.push_back(count_from_json(x));
  return out;
}

/// {"dim": d, "generators": [[...], ...], "lattice"?: [[...], ...]}
/// or {"segre": [m, n]}.
inline MonoidSpec monoid_from_json(const json& doc) {
  if (doc.is_object() && doc.contains("segre")) {
    const json& s = doc.at("segre");
    if (!s.is_array() || s.size() != 2) throw SchemaError("\"segre\" must be [m, n]");
    return segre_monoid(count_from_json(s[0]), count_from_json(s[1]));
  }
  const std::size_t dim = count_from_json(require(doc, "dim"));
  std::vector<Vector> gens = vectors_from_json(require(doc, "generators"));
  if (doc.contains("lattice")) return build_monoid_in_lattice(dim, gens, vectors_from_json(doc.at("lattice")));
  return build_monoid(dim, gens);
}

/// {"coeffs": [...]} or {"support": [...]} (0-based facet indices).
inline MonomialDivisor divisor_from_json(const json& j, std::size_t facet_count) {
  if (j.is_object() && j.contains("coeffs")) {
    MonomialDivisor d{vector_from_json(j.at("coeffs"))};
    if (d.coeffs.size() != facet_count) {
      throw DomainError(ErrorCode::DimensionMismatch, "divisor has " + std::to_string(d.coeffs.size()) +
                                                          " coefficients, monoid has " + std::to_string(facet_count) +
                                                          " facets");
    }
    return d;
  }
  if (j.is_object() && j.contains("support")) {
    return MonomialDivisor::from_support(indices_from_json(j.at("support")), facet_count);
  }
  throw SchemaError("divisor must have \"coeffs\" or \"support\"");
}

inline json facet_report(const MonoidSpec& m, const FacetSystem& f) {
  return json{{"dim", m.dim},
              {"lattice_basis", to_json(m.lattice_basis.column_list())},
              {"normals", to_json(f.normals)},
              {"simplicial", is_simplicial(f, m)}};
}

inline json error_json(const std::string& code, const std::string& message) {
  return json{{"code", code}, {"message", message}};
}

/// Human-readable projection of a report: one "path: value" line per leaf.
inline void to_text(const json& j, const std::string& prefix, std::string& out) {
  if (j.is_object()) {
    if (j.empty()) out += prefix + ": {}\n";
    for (auto it = j.begin(); it != j.end(); ++it)
      to_text(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_array() && std::any_of(j.begin(), j.end(), [](const json& e) { return e.is_object(); })) {
    for (std::size_t i = 0; i < j.size(); ++i) to_text(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out += prefix + ": " + (j.is_string() ? j.get<std::string>() : j.dump()) + "\n";
  }
}

inline std::string to_text(const json& j) {
  std::string out;
  to_text(j, "", out);
  return out;
}

}  // namespace akg::io
