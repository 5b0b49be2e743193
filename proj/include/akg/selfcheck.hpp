#pragma once

// Regression set of worked computations and property suites. Every item is
// exact; items with a time budget fail when they exceed it.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "akg/bounds.hpp"
#include "akg/cone.hpp"
#include "akg/divisors.hpp"
#include "akg/lattice.hpp"
#include "akg/oracle.hpp"
#include "akg/special_rings.hpp"

namespace akg::selfcheck {

struct Item {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Deterministic draws in [lo, hi] that do not depend on the standard
/// library's distribution implementation.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}
  std::int64_t operator()(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<std::int64_t>(rng_() % span);
  }
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

namespace detail {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void fail(const std::string& why) {
    if (pass) detail << why;
    pass = false;
  }
  void expect(bool cond, const std::string& what) {
    if (!cond) fail(what);
  }
};

inline Item run_item(int id, std::string name, double budget_seconds, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.fail(std::string("exception: ") + e.what());
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (budget_seconds > 0 && elapsed > budget_seconds) {
    out.fail("exceeded time budget of " + std::to_string(static_cast<int>(budget_seconds)) + " s");
  }
  return Item{id, std::move(name), out.pass, out.pass && out.detail.str().empty() ? "ok" : out.detail.str()};
}

inline std::vector<std::size_t> subset_from_mask(std::size_t mask, std::size_t r) {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < r; ++i)
    if (mask & (std::size_t{1} << i)) s.push_back(i);
  return s;
}

}  // namespace detail

inline Item segre_two_by_two() {
  return detail::run_item(1, "Segre 2x2: 4 facets, DKG = Z, AKG = Z, single facets not realizable", 1.0,
                          [](detail::Outcome& out) {
                            MonoidSpec m = segre_monoid(2, 2);
                            FacetSystem f = facet_valuations(m);
                            out.expect(f.count() == 4, "facet count != 4");
                            ClassGroupData cg = divisor_class_group(f);
                            out.expect(cg.dkg == AbelianGroup{1, {}}, "DKG = " + cg.dkg.to_string());
                            out.expect(cg.akg == AbelianGroup{1, {}}, "AKG = " + cg.akg.to_string());
                            for (std::size_t i = 0; i < f.count(); ++i) {
                              out.expect(!support_realizable(m, f, {i}).realizable,
                                         "facet " + std::to_string(i) + " alone is realizable");
                              out.expect(!complement_is_affine(m, f, MonomialDivisor::from_support({i}, f.count())),
                                         "complement of facet " + std::to_string(i) + " reported affine");
                            }
                          });
}

inline Item segre_both_sorts() {
  return detail::run_item(2, "Segre both-sorts rule vs toric realizability, m, n <= 3, all facet subsets", 10.0,
                          [](detail::Outcome& out) {
                            std::size_t checked = 0;
                            for (std::size_t m = 1; m <= 3; ++m)
                              for (std::size_t n = 1; n <= 3; ++n) {
                                MonoidSpec mon = segre_monoid(m, n);
                                FacetSystem f = facet_valuations(mon);
                                auto labels = segre_facet_labels(m, n, mon, f);
                                const std::size_t expected = (m >= 2 && n >= 2) ? m + n : std::max(m, n);
                                out.expect(f.count() == expected, "unexpected facet count for Segre(" +
                                                                      std::to_string(m) + "," + std::to_string(n) + ")");
                                for (std::size_t mask = 0; mask < (std::size_t{1} << f.count()); ++mask) {
                                  auto s = detail::subset_from_mask(mask, f.count());
                                  std::vector<std::size_t> rows, cols;
                                  for (std::size_t i : s)
                                    (labels[i].sort == SegreSort::Row ? rows : cols).push_back(labels[i].index);
                                  const bool toric = support_realizable(mon, f, s).realizable;
                                  const bool closed = segre_union_affine(m, n, rows, cols);
                                  out.expect(toric == closed, "disagreement at Segre(" + std::to_string(m) + "," +
                                                                  std::to_string(n) + ") mask " + std::to_string(mask));
                                  ++checked;
                                }
                              }
                            out.detail << checked << " subsets agree";
                          });
}

inline Item hyperbola_three_three() {
  return detail::run_item(3, "Hyperbola d = (3,3): (1,1) affine-trivial, (1,2) coaffine only, (2,3) not coaffine",
                          1.0, [](detail::Outcome& out) {
                            HyperbolaData h{{3, 3}, true, std::nullopt};
                            out.expect(hyperbola_is_affine_trivial(h, {1, 1}), "(1,1) not affine-trivial");
                            out.expect(hyperbola_is_coaffine(h, {1, 1}), "(1,1) not coaffine");
                            out.expect(hyperbola_is_coaffine(h, {1, 2}), "(1,2) not coaffine");
                            out.expect(!hyperbola_is_affine_trivial(h, {1, 2}), "(1,2) affine-trivial");
                            out.expect(!hyperbola_is_coaffine(h, {2, 3}), "(2,3) coaffine");
                            out.expect(hyperbola_dkg(h) == AbelianGroup{1, {3}}, "DKG != Z + Z/3");
                            out.expect(hyperbola_akg(h) == AbelianGroup{1, {}}, "AKG != Z");
                          });
}

inline Item hyperbola_grid() {
  return detail::run_item(4, "Hyperbola closed form vs window scan, r <= 3, d_i <= 4, |n_i| <= 6", 30.0,
                          [](detail::Outcome& out) {
                            std::size_t cases = 0;
                            for (std::size_t r = 1; r <= 3; ++r) {
                              std::vector<std::int64_t> d(r, 1), n(r, -6);
                              // odometer over d in [1,4]^r
                              for (;;) {
                                std::fill(n.begin(), n.end(), -6);
                                HyperbolaData h{to_vector(d), true, std::nullopt};
                                for (;;) {
                                  const bool closed = hyperbola_is_coaffine(h, to_vector(n));
                                  const bool scan = oracle::hyperbola_coaffine_by_scan(d, n);
                                  if (closed != scan) {
                                    out.fail("disagreement at d=" + to_string(to_vector(d)) +
                                             " n=" + to_string(to_vector(n)));
                                  }
                                  ++cases;
                                  std::size_t k = 0;
                                  while (k < r && n[k] == 6) n[k++] = -6;
                                  if (k == r) break;
                                  ++n[k];
                                }
                                std::size_t k = 0;
                                while (k < r && d[k] == 4) d[k++] = 1;
                                if (k == r) break;
                                ++d[k];
                              }
                            }
                            out.detail << cases << " cases, 0 disagreements";
                          });
}

/// Random pointed full-dimensional cones: first coordinate >= 1 on every
/// generator keeps the cone pointed.
inline std::vector<Vector> random_cone_generators(Draw& draw, std::size_t dim, std::size_t count) {
  std::vector<Vector> gens;
  for (std::size_t i = 0; i < count; ++i) {
    Vector g(dim);
    g[0] = draw(1, 3);
    for (std::size_t k = 1; k < dim; ++k) g[k] = draw(-2, 3);
    gens.push_back(std::move(g));
  }
  return gens;
}

inline Item simpliciality_property() {
  return detail::run_item(5, "Simplicial <=> DKG torsion <=> AKG = 0 on 120 random cones, d <= 4, <= 8 generators",
                          60.0, [](detail::Outcome& out) {
                            Draw draw(0x5eedc0de);
                            std::size_t accepted = 0, simplicial = 0;
                            while (accepted < 120) {
                              const auto dim = static_cast<std::size_t>(draw(2, 4));
                              const auto count = static_cast<std::size_t>(draw(static_cast<std::int64_t>(dim), 8));
                              auto gens = random_cone_generators(draw, dim, count);
                              if (rank_of(gens, dim) < dim) continue;
                              MonoidSpec m = build_monoid_in_lattice(dim, gens, {});
                              FacetSystem f = facet_valuations(m);
                              SimplicialityReport rep = simpliciality_report(m, f);
                              out.expect(rep.simplicial == rep.dkg_is_torsion && rep.dkg_is_torsion == rep.akg_zero,
                                         "booleans disagree");
                              if (rep.simplicial) ++simplicial;
                              ++accepted;
                            }
                            out.detail << accepted << " cones (" << simplicial << " simplicial), all agree";
                          });
}

inline Item determinantal() {
  return detail::run_item(6, "Determinantal (2,2,2): dim 3, height 1, AKG = Z, extension height 2; n-k+2 >= 2", 0.0,
                          [](detail::Outcome& out) {
                            DeterminantalData dd{2, 2, 2};
                            out.expect(det_dimension(dd) == 3, "dimension != 3");
                            out.expect(det_ideal_height(dd) == 1, "height != 1");
                            out.expect(det_akg(dd) == AbelianGroup{1, {}}, "AKG != Z");
                            out.expect(det_extension_height(dd) == 2, "extension height != 2");
                            MonoidSpec seg = segre_monoid(2, 2);
                            out.expect(affine_class_group(facet_valuations(seg)) == det_akg(dd),
                                       "toric AKG of the 2x2 Segre ring differs");
                            std::size_t triples = 0;
                            for (std::int64_t m = 2; m <= 6; ++m)
                              for (std::int64_t n = 2; n <= 6; ++n)
                                for (std::int64_t k = 2; k <= std::min(m, n); ++k) {
                                  DeterminantalData t{m, n, k};
                                  const auto h = det_extension_height(t);
                                  out.expect(h == n - k + 2 && h >= 2, "extension height wrong at (" +
                                                                           std::to_string(m) + "," + std::to_string(n) +
                                                                           "," + std::to_string(k) + ")");
                                  out.expect(det_dimension(t) + det_ideal_height(t) == m * n, "dim + height != mn");
                                  ++triples;
                                }
                            out.detail << triples << " admissible triples checked";
                          });
}

inline Item bounds_scenarios(const bounds::RuleBook& rules) {
  return detail::run_item(7, "Bounds: local maximal ideal, cohomological-height example, supht > dim contradiction",
                          0.0, [&rules](detail::Outcome& out) {
                            using namespace bounds;
                            // (a)
                            KnowledgeBase a = KnowledgeBase{}.with_flag(Flag::ring_local).with_flag(Flag::ideal_maximal);
                            a = assert_fact(a, Invariant::dim_ring, Relation::eq, 3);
                            PropagationResult ra = propagate(a, rules);
                            if (auto* p = std::get_if<Propagated>(&ra)) {
                              for (Invariant i : {Invariant::ht, Invariant::alt, Invariant::supht_end, Invariant::supht,
                                                  Invariant::ara, Invariant::afra, Invariant::kohoht})
                                out.expect(p->kb.interval(i) == Interval{3, 3}, "(a) " + std::string(name(i)) + " = " +
                                                                                    p->kb.interval(i).to_string());
                              out.expect(p->kb.interval(Invariant::cd) == Interval{2, 2}, "(a) cd != 2");
                            } else {
                              out.fail("(a) contradiction via " + std::get<Contradiction>(ra).rule);
                            }
                            // (b)
                            KnowledgeBase b;
                            b = assert_fact(b, Invariant::ht, Relation::eq, 2);
                            b = assert_fact(b, Invariant::supht, Relation::eq, 2);
                            b = assert_fact(b, Invariant::kohoht, Relation::eq, 3);
                            b = assert_fact(b, Invariant::ara, Relation::eq, 3);
                            PropagationResult rb = propagate(b, rules);
                            if (auto* p = std::get_if<Propagated>(&rb)) {
                              out.expect(p->kb.interval(Invariant::afra) == Interval{3, 3}, "(b) afra not forced to 3");
                              out.expect(p->kb.interval(Invariant::cd) == Interval{2, 2}, "(b) cd != 2");
                            } else {
                              out.fail("(b) contradiction via " + std::get<Contradiction>(rb).rule);
                            }
                            // (c)
                            KnowledgeBase c;
                            c = assert_fact(c, Invariant::supht, Relation::eq, 3);
                            c = assert_fact(c, Invariant::dim_ring, Relation::eq, 2);
                            PropagationResult rc = propagate(c, rules);
                            if (auto* k = std::get_if<Contradiction>(&rc)) {
                              out.expect(k->rule == "R2", "(c) contradiction named " + k->rule + ", expected R2");
                            } else {
                              out.fail("(c) no contradiction");
                            }
                          });
}

/// Random fact set: a few flags, a configuration and up to six facts.
struct RandomFacts {
  bounds::KnowledgeBase base;
  std::vector<std::tuple<bounds::Invariant, bounds::Relation, std::int64_t>> facts;
};

inline RandomFacts random_facts(Draw& draw) {
  using namespace bounds;
  RandomFacts rf;
  rf.base = KnowledgeBase(draw(0, 3) == 0 ? Configuration::Scheme : Configuration::Ideal);
  for (std::size_t f = 0; f < kFlagCount; ++f)
    if (draw(0, 3) == 0) rf.base = rf.base.with_flag(static_cast<Flag>(f));
  const auto n = draw(0, 6);
  for (std::int64_t i = 0; i < n; ++i) {
    rf.facts.emplace_back(static_cast<Invariant>(draw(0, kInvariantCount - 1)), static_cast<Relation>(draw(0, 2)),
                          draw(0, 6));
  }
  return rf;
}

/// Asserts the first `count` facts; nullopt when an assertion is immediately
/// contradictory.
inline std::optional<bounds::KnowledgeBase> assert_prefix(const RandomFacts& rf, std::size_t count) {
  bounds::KnowledgeBase kb = rf.base;
  for (std::size_t i = 0; i < count && i < rf.facts.size(); ++i) {
    auto [inv, rel, v] = rf.facts[i];
    try {
      kb = bounds::assert_fact(kb, inv, rel, v);
    } catch (const DomainError&) {
      return std::nullopt;
    }
  }
  return kb;
}

inline Item engine_algebra(const bounds::RuleBook& rules) {
  return detail::run_item(8, "Bounds engine: idempotence, monotonicity, order confluence on 1000 random fact sets", 0.0,
                          [&rules](detail::Outcome& out) {
                            using namespace bounds;
                            Draw draw(0xb0057ed);
                            std::size_t consistent = 0;
                            for (int trial = 0; trial < 1000; ++trial) {
                              RandomFacts rf = random_facts(draw);
                              auto full = assert_prefix(rf, rf.facts.size());
                              if (!full) continue;
                              PropagationResult r = propagate(*full, rules);

                              // order confluence
                              for (int s = 0; s < 3; ++s) {
                                std::vector<std::size_t> order(rules.size());
                                for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
                                std::shuffle(order.begin(), order.end(), draw.engine());
                                PropagationResult alt = Propagator(rules).with_order(order).run(*full);
                                if (is_consistent(alt) != is_consistent(r)) {
                                  out.fail("trial " + std::to_string(trial) + ": status depends on rule order");
                                } else if (is_consistent(r) && !std::get<Propagated>(alt).kb.same_state(
                                                                   std::get<Propagated>(r).kb)) {
                                  out.fail("trial " + std::to_string(trial) + ": fixpoint depends on rule order");
                                }
                              }
                              if (!is_consistent(r)) continue;
                              ++consistent;
                              const KnowledgeBase& fixed = std::get<Propagated>(r).kb;

                              // idempotence
                              PropagationResult again = propagate(fixed, rules);
                              if (!is_consistent(again) || !std::get<Propagated>(again).kb.same_state(fixed) ||
                                  !std::get<Propagated>(again).trace.empty()) {
                                out.fail("trial " + std::to_string(trial) + ": propagate not idempotent");
                              }

                              // monotonicity: every prefix gives a wider (or equal) fixpoint
                              for (std::size_t p = 0; p < rf.facts.size(); ++p) {
                                auto prefix = assert_prefix(rf, p);
                                PropagationResult rp = propagate(*prefix, rules);
                                if (!is_consistent(rp)) {
                                  out.fail("trial " + std::to_string(trial) + ": fewer facts but contradictory");
                                  continue;
                                }
                                const KnowledgeBase& wide = std::get<Propagated>(rp).kb;
                                for (std::size_t i = 0; i < kInvariantCount; ++i) {
                                  auto inv = static_cast<Invariant>(i);
                                  if (!fixed.interval(inv).subset_of(wide.interval(inv))) {
                                    out.fail("trial " + std::to_string(trial) + ": adding facts widened " +
                                             std::string(name(inv)));
                                  }
                                }
                              }
                            }
                            out.detail << "1000 fact sets, " << consistent << " consistent";
                          });
}

inline Item smith_vs_minors() {
  return detail::run_item(9, "Smith form vs determinantal divisors on 200 random 3x3 matrices", 0.0,
                          [](detail::Outcome& out) {
                            Draw draw(0x5317);
                            for (int t = 0; t < 200; ++t) {
                              IntegerMatrix a(3, 3);
                              for (std::size_t i = 0; i < 3; ++i)
                                for (std::size_t j = 0; j < 3; ++j) a(i, j) = draw(-3, 3);
                              SmithForm s = smith_normal_form(a);
                              out.expect(s.U * a * s.V == s.D, "U A V != D for " + a.to_string());
                              out.expect(abs_value(determinant(s.U)) == 1 && abs_value(determinant(s.V)) == 1,
                                         "transform not unimodular for " + a.to_string());
                              out.expect(s.diagonal() == oracle::invariant_factors_by_minors(a),
                                         "invariant factors differ for " + a.to_string());
                              for (std::size_t i = 0; i < 3; ++i)
                                for (std::size_t j = 0; j < 3; ++j)
                                  if (i != j) out.expect(s.D(i, j) == 0, "D not diagonal");
                            }
                            out.detail << "200 matrices agree";
                          });
}

inline Item saturation() {
  return detail::run_item(10, "Saturation oracle: Segre 2x2 and N^d saturated; {(2,0),(0,2)} in the (1,1)-lattice not",
                          30.0, [](detail::Outcome& out) {
                            MonoidSpec seg = segre_monoid(2, 2);
                            out.expect(saturation_check(seg, facet_valuations(seg), 3).saturated,
                                       "Segre 2x2 reported unsaturated");
                            for (std::size_t d = 1; d <= 4; ++d) {
                              std::vector<Vector> unit;
                              for (std::size_t i = 0; i < d; ++i) {
                                Vector e(d, BigInt(0));
                                e[i] = 1;
                                unit.push_back(e);
                              }
                              MonoidSpec nd = build_monoid(d, unit);
                              out.expect(saturation_check(nd, facet_valuations(nd), 3).saturated,
                                         "N^" + std::to_string(d) + " reported unsaturated");
                            }
                            const std::vector<Vector> full = {{2, 0}, {1, 1}, {0, 2}};
                            MonoidSpec whole = build_monoid_in_lattice(2, full, full);
                            out.expect(saturation_check(whole, facet_valuations(whole), 3).saturated,
                                       "full generator set reported unsaturated");
                            MonoidSpec holed = build_monoid_in_lattice(2, {{2, 0}, {0, 2}}, full);
                            SaturationReport rep = saturation_check(holed, facet_valuations(holed), 3);
                            out.expect(!rep.saturated && rep.witness_ambient.has_value(), "no witness produced");
                            if (rep.witness_ambient) {
                              out.expect(*rep.witness_ambient == Vector{1, 1},
                                         "witness " + to_string(*rep.witness_ambient) + " != (1,1)");
                            }
                          });
}

inline std::vector<Item> run_all(const bounds::RuleBook& rules) {
  return {segre_two_by_two(), segre_both_sorts(), hyperbola_three_three(), hyperbola_grid(),
          simpliciality_property(), determinantal(), bounds_scenarios(rules), engine_algebra(rules),
          smith_vs_minors(), saturation()};
}

inline std::vector<Item> run_all() { return run_all(bounds::default_rules()); }

}  // namespace akg::selfcheck
