#pragma once

// Interval propagation over the inequalities linking height, altitude,
// superheight, arithmetic rank, affine covering number, cohomological
// dimension and projective dimension of one configuration (an ideal in a
// noetherian ring, or a scheme).

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "akg/errors.hpp"

namespace akg::bounds {

enum class Invariant : std::size_t {
  ht,
  alt,
  supht_end,
  supht,
  ara,
  afra,
  kohoht,
  cd,
  pd_height,
  dim_ring,
};
inline constexpr std::size_t kInvariantCount = 10;

inline constexpr std::array<std::string_view, kInvariantCount> kInvariantNames = {
    "ht", "alt", "supht_end", "supht", "ara", "afra", "kohoht", "cd", "pd_height", "dim_ring"};

inline std::string_view name(Invariant i) { return kInvariantNames[static_cast<std::size_t>(i)]; }

inline std::optional<Invariant> parse_invariant(std::string_view s) {
  for (std::size_t i = 0; i < kInvariantCount; ++i)
    if (kInvariantNames[i] == s) return static_cast<Invariant>(i);
  return std::nullopt;
}

enum class Flag : std::size_t {
  ring_local,
  ideal_maximal,
  ring_regular,
  finite_type_over_field,
  normal_domain,
  finite_pd,
  char_p,
  open_set_affine,
  punctured_local,
};
inline constexpr std::size_t kFlagCount = 9;

inline constexpr std::array<std::string_view, kFlagCount> kFlagNames = {
    "ring_local",    "ideal_maximal", "ring_regular",    "finite_type_over_field", "normal_domain",
    "finite_pd",     "char_p",        "open_set_affine", "punctured_local"};

inline std::string_view name(Flag f) { return kFlagNames[static_cast<std::size_t>(f)]; }

inline std::optional<Flag> parse_flag(std::string_view s) {
  for (std::size_t i = 0; i < kFlagCount; ++i)
    if (kFlagNames[i] == s) return static_cast<Flag>(i);
  return std::nullopt;
}

/// Ideal: an ideal a in a noetherian ring A (open set D(a) of an affine
/// scheme). Scheme: a general noetherian scheme.
enum class Configuration { Ideal, Scheme };

enum class Relation { eq, le, ge };

inline std::optional<Relation> parse_relation(std::string_view s) {
  if (s == "eq") return Relation::eq;
  if (s == "le") return Relation::le;
  if (s == "ge") return Relation::ge;
  return std::nullopt;
}

inline constexpr std::int64_t kInfinity = std::numeric_limits<std::int64_t>::max();

/// [lo, hi] over N ∪ {infinity}; hi == kInfinity means unbounded.
struct Interval {
  std::int64_t lo = 0;
  std::int64_t hi = kInfinity;

  bool empty() const { return lo > hi; }
  bool is_point() const { return lo == hi; }
  bool bounded() const { return hi != kInfinity; }
  bool subset_of(const Interval& o) const { return lo >= o.lo && hi <= o.hi; }

  friend bool operator==(const Interval&, const Interval&) = default;

  std::string to_string() const {
    return "[" + std::to_string(lo) + ", " + (bounded() ? std::to_string(hi) : std::string("inf")) + "]";
  }
};

class KnowledgeBase {
 public:
  KnowledgeBase() = default;
  explicit KnowledgeBase(Configuration c) : configuration_(c) {}

  const Interval& interval(Invariant i) const { return intervals_[static_cast<std::size_t>(i)]; }
  bool has(Flag f) const { return flags_[static_cast<std::size_t>(f)]; }
  Configuration configuration() const { return configuration_; }

  KnowledgeBase with_flag(Flag f) const {
    KnowledgeBase kb = *this;
    kb.flags_[static_cast<std::size_t>(f)] = true;
    return kb;
  }

  KnowledgeBase with_configuration(Configuration c) const {
    KnowledgeBase kb = *this;
    kb.configuration_ = c;
    return kb;
  }

  /// Intervals, flags and configuration; the trace does not take part.
  bool same_state(const KnowledgeBase& o) const {
    return intervals_ == o.intervals_ && flags_ == o.flags_ && configuration_ == o.configuration_;
  }

  friend class Propagator;
  friend KnowledgeBase assert_fact(const KnowledgeBase&, Invariant, Relation, std::int64_t);
  friend KnowledgeBase with_interval(const KnowledgeBase&, Invariant, Interval);

 private:
  std::array<Interval, kInvariantCount> intervals_{};
  std::array<bool, kFlagCount> flags_{};
  Configuration configuration_ = Configuration::Ideal;
};

/// Intersects the interval of `kind` with the relation; no propagation.
inline KnowledgeBase assert_fact(const KnowledgeBase& kb, Invariant kind, Relation rel, std::int64_t value) {
  if (value < 0) {
    throw DomainError(ErrorCode::FormatViolation, "asserted values must be nonnegative");
  }
  KnowledgeBase out = kb;
  Interval& iv = out.intervals_[static_cast<std::size_t>(kind)];
  if (rel != Relation::le) iv.lo = std::max(iv.lo, value);
  if (rel != Relation::ge) iv.hi = std::min(iv.hi, value);
  if (iv.empty()) {
    throw DomainError(ErrorCode::ImmediateContradiction,
                      std::string(name(kind)) + " asserted outside its current interval " +
                          kb.interval(kind).to_string());
  }
  return out;
}

/// Replaces an interval outright (used by the cross-configuration combinator).
inline KnowledgeBase with_interval(const KnowledgeBase& kb, Invariant kind, Interval iv) {
  KnowledgeBase out = kb;
  out.intervals_[static_cast<std::size_t>(kind)] = iv;
  return out;
}

inline Interval query(const KnowledgeBase& kb, Invariant kind) { return kb.interval(kind); }

/// lhs <= rhs + offset, or lhs <= offset when rhs is empty.
struct Edge {
  Invariant lhs;
  std::optional<Invariant> rhs;
  std::int64_t offset = 0;
};

using IntervalView = std::array<Interval, kInvariantCount>;

struct Rule {
  std::string id;
  std::string anchor;  // the statement the rule encodes
  std::vector<Flag> required_flags;
  std::optional<Configuration> configuration;
  std::vector<Edge> edges;
  /// Extra applicability test on the current intervals. Must be monotone:
  /// once true it stays true as intervals narrow.
  std::function<bool(const IntervalView&)> premise;
};

using RuleBook = std::vector<Rule>;

namespace detail {

inline std::vector<Edge> equal(Invariant a, Invariant b, std::int64_t offset = 0) {
  // a = b + offset
  return {Edge{a, b, offset}, Edge{b, a, -offset}};
}

inline std::vector<Edge> concat(std::initializer_list<std::vector<Edge>> parts) {
  std::vector<Edge> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

inline const Interval& at(const IntervalView& v, Invariant i) { return v[static_cast<std::size_t>(i)]; }

}  // namespace detail

/// The rule set, applied in this order within each sweep.
inline RuleBook default_rules() {
  using I = Invariant;
  using detail::concat;
  using detail::equal;
  RuleBook rules;
  rules.push_back({"R1", "ht <= alt <= supht_end <= supht <= ara for an ideal", {}, std::nullopt,
                   {{I::ht, I::alt, 0}, {I::alt, I::supht_end, 0}, {I::supht_end, I::supht, 0}, {I::supht, I::ara, 0}},
                   {}});
  rules.push_back({"R2", "the superheight of an ideal is at most the ring dimension", {}, Configuration::Ideal,
                   {{I::supht, I::dim_ring, 0}}, {}});
  rules.push_back({"R3", "ara >= afra >= kohoht >= supht for an open subset", {}, std::nullopt,
                   {{I::afra, I::ara, 0}, {I::kohoht, I::afra, 0}, {I::supht, I::kohoht, 0}}, {}});
  rules.push_back({"R4", "cohomological height = cohomological dimension + 1", {}, std::nullopt,
                   equal(I::kohoht, I::cd, 1), {}});
  rules.push_back({"R5a", "cd X <= dim X (Grothendieck vanishing)", {}, std::nullopt, {{I::cd, I::dim_ring, 0}}, {}});
  rules.push_back({"R5b", "cd U < dim A for an open subset U of Spec A", {}, Configuration::Ideal,
                   {{I::cd, I::dim_ring, -1}},
                   [](const IntervalView& v) { return detail::at(v, I::dim_ring).lo >= 1; }});
  rules.push_back({"R6", "all heights coincide with the dimension for the maximal ideal of a local ring",
                   {Flag::ring_local, Flag::ideal_maximal}, std::nullopt,
                   concat({equal(I::ht, I::dim_ring), equal(I::alt, I::dim_ring), equal(I::supht_end, I::dim_ring),
                           equal(I::supht, I::dim_ring), equal(I::ara, I::dim_ring), equal(I::afra, I::dim_ring),
                           equal(I::kohoht, I::dim_ring)}),
                   {}});
  rules.push_back({"R7", "alt = supht in a regular ring", {Flag::ring_regular}, std::nullopt,
                   equal(I::alt, I::supht), {}});
  rules.push_back({"R8", "supht_end = supht for algebras of finite type over a field", {Flag::finite_type_over_field},
                   std::nullopt, equal(I::supht_end, I::supht), {}});
  rules.push_back({"R9", "projective dimension bounds the superheight of the annihilator", {Flag::finite_pd},
                   std::nullopt, {{I::supht, I::pd_height, 0}}, {}});
  rules.push_back({"R10", "in positive characteristic projective dimension bounds the cohomological height",
                   {Flag::finite_pd, Flag::char_p}, std::nullopt, {{I::kohoht, I::pd_height, 0}}, {}});
  rules.push_back({"R11", "a separated noetherian scheme is affine iff cd = 0", {Flag::open_set_affine}, std::nullopt,
                   {{I::cd, std::nullopt, 0}}, {}});
  rules.push_back({"R12", "the punctured spectrum of a local ring has cd = dim - 1", {Flag::punctured_local},
                   std::nullopt, equal(I::cd, I::dim_ring, -1), {}});
  rules.push_back({"R13", "in a normal domain, alt < dim forces supht_end < dim", {Flag::normal_domain},
                   std::nullopt, {{I::supht_end, I::dim_ring, -1}},
                   [](const IntervalView& v) {
                     const Interval& alt = detail::at(v, I::alt);
                     return alt.bounded() && alt.hi + 1 <= detail::at(v, I::dim_ring).lo;
                   }});
  rules.push_back({"R14", "the superheight of a scheme is at most dim + 1", {}, Configuration::Scheme,
                   {{I::supht, I::dim_ring, 1}}, {}});
  return rules;
}

struct TraceStep {
  std::string rule;
  std::string anchor;
  Invariant invariant;
  Interval before;
  Interval after;
};

using Trace = std::vector<TraceStep>;

struct Contradiction {
  std::string rule;
  std::string anchor;
  Invariant invariant;
  std::int64_t lo;  // conflicting bounds: lo > hi
  std::int64_t hi;
  Trace trace;  // ends with the violating step
};

struct Propagated {
  KnowledgeBase kb;
  Trace trace;
};

using PropagationResult = std::variant<Propagated, Contradiction>;

inline bool is_consistent(const PropagationResult& r) { return std::holds_alternative<Propagated>(r); }

class Propagator {
 public:
  explicit Propagator(const RuleBook& rules) : rules_(rules) {
    order_.resize(rules_.size());
    for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = i;
  }

  /// Rule indices in application order.
  Propagator& with_order(std::vector<std::size_t> order) {
    order_ = std::move(order);
    return *this;
  }

  PropagationResult run(const KnowledgeBase& input) const {
    KnowledgeBase kb = input;
    Trace trace;
    for (std::size_t sweep = 0;; ++sweep) {
      if (sweep > kMaxSweeps) {
        const Interval& iv = kb.interval(Invariant::dim_ring);
        return Contradiction{"divergence", "bounds grow without limit", Invariant::dim_ring, iv.lo, iv.hi,
                             std::move(trace)};
      }
      bool changed = false;
      for (std::size_t idx : order_) {
        const Rule& rule = rules_.at(idx);
        if (!active(rule, kb)) continue;
        for (const Edge& e : rule.edges) {
          if (auto c = apply(rule, e, kb, trace, changed)) return std::move(*c);
        }
      }
      if (!changed) break;
    }
    return Propagated{std::move(kb), std::move(trace)};
  }

 private:
  static constexpr std::size_t kMaxSweeps = 4096;

  static bool active(const Rule& rule, const KnowledgeBase& kb) {
    for (Flag f : rule.required_flags)
      if (!kb.has(f)) return false;
    if (rule.configuration && *rule.configuration != kb.configuration()) return false;
    if (rule.premise && !rule.premise(kb.intervals_)) return false;
    return true;
  }

  static std::int64_t add(std::int64_t bound, std::int64_t offset) {
    if (bound == kInfinity) return kInfinity;
    return bound + offset;
  }

  static std::optional<Contradiction> narrow(const Rule& rule, Invariant which, Interval updated, KnowledgeBase& kb,
                                             Trace& trace, bool& changed) {
    Interval& cur = kb.intervals_[static_cast<std::size_t>(which)];
    updated.lo = std::max<std::int64_t>(updated.lo, 0);
    if (updated == cur) return std::nullopt;
    trace.push_back(TraceStep{rule.id, rule.anchor, which, cur, updated});
    cur = updated;
    changed = true;
    if (cur.empty()) return Contradiction{rule.id, rule.anchor, which, cur.lo, cur.hi, trace};
    return std::nullopt;
  }

  static std::optional<Contradiction> apply(const Rule& rule, const Edge& e, KnowledgeBase& kb, Trace& trace,
                                            bool& changed) {
    // lhs <= rhs + offset: hi(lhs) <= hi(rhs) + offset, lo(rhs) >= lo(lhs) - offset.
    Interval lhs = kb.interval(e.lhs);
    const std::int64_t cap = e.rhs ? add(kb.interval(*e.rhs).hi, e.offset) : e.offset;
    if (cap < lhs.hi) {
      lhs.hi = cap;
      if (auto c = narrow(rule, e.lhs, lhs, kb, trace, changed)) return c;
    }
    if (!e.rhs) return std::nullopt;
    Interval rhs = kb.interval(*e.rhs);
    const std::int64_t floor = kb.interval(e.lhs).lo - e.offset;
    if (floor > rhs.lo) {
      rhs.lo = floor;
      if (auto c = narrow(rule, *e.rhs, rhs, kb, trace, changed)) return c;
    }
    return std::nullopt;
  }

  const RuleBook& rules_;
  std::vector<std::size_t> order_;
};

/// Least fixpoint of interval narrowing under the active rules, or the first
/// violated rule.
inline PropagationResult propagate(const KnowledgeBase& kb, const RuleBook& rules) {
  return Propagator(rules).run(kb);
}

inline PropagationResult propagate(const KnowledgeBase& kb) {
  static const RuleBook rules = default_rules();
  return propagate(kb, rules);
}

/// Steps that led to the fixpoint (or to the contradiction).
inline const Trace& explain(const PropagationResult& r) {
  if (const auto* p = std::get_if<Propagated>(&r)) return p->trace;
  return std::get<Contradiction>(r).trace;
}

// ---------------------------------------------------------------------------
// Cross-configuration subadditivity: for X with a closed part Y and open
// complement U (or an open cover), supht X <= supht Y + supht U and
// kohoht X <= kohoht U + kohoht Y.

struct Decomposition {
  KnowledgeBase whole;
  KnowledgeBase part_a;
  KnowledgeBase part_b;
};

using DecompositionResult = std::variant<Decomposition, Contradiction>;

inline DecompositionResult combine_subadditive(const Decomposition& input, Invariant kind,
                                               const RuleBook& rules = default_rules()) {
  if (kind != Invariant::supht && kind != Invariant::kohoht) {
    throw DomainError(ErrorCode::FormatViolation, "subadditivity is available for supht and kohoht only");
  }
  const std::string id = kind == Invariant::supht ? "S1" : "S2";
  const std::string anchor = kind == Invariant::supht ? "supht X <= supht Y + supht (X - Y)"
                                                      : "kohoht X <= kohoht U + kohoht (X - U)";
  auto sum = [](std::int64_t a, std::int64_t b) { return (a == kInfinity || b == kInfinity) ? kInfinity : a + b; };
  auto minus = [](std::int64_t a, std::int64_t b) { return b == kInfinity ? std::int64_t{0} : a - b; };

  Decomposition d = input;
  for (;;) {
    std::array<KnowledgeBase*, 3> parts = {&d.whole, &d.part_a, &d.part_b};
    for (KnowledgeBase* kb : parts) {
      PropagationResult r = propagate(*kb, rules);
      if (auto* c = std::get_if<Contradiction>(&r)) return std::move(*c);
      *kb = std::get<Propagated>(r).kb;
    }
    const Interval w = d.whole.interval(kind);
    const Interval a = d.part_a.interval(kind);
    const Interval b = d.part_b.interval(kind);
    Interval nw = w, na = a, nb = b;
    nw.hi = std::min(w.hi, sum(a.hi, b.hi));
    na.lo = std::max(a.lo, minus(w.lo, b.hi));
    nb.lo = std::max(b.lo, minus(w.lo, a.hi));
    if (nw == w && na == a && nb == b) return d;
    for (auto [iv, kb] : {std::pair{nw, &d.whole}, std::pair{na, &d.part_a}, std::pair{nb, &d.part_b}}) {
      if (iv.empty()) return Contradiction{id, anchor, kind, iv.lo, iv.hi, {}};
      *kb = with_interval(*kb, kind, iv);
    }
  }
}

}  // namespace akg::bounds
