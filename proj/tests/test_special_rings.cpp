#include <gtest/gtest.h>

#include "akg/bounds.hpp"
#include "akg/cone.hpp"
#include "akg/divisors.hpp"
#include "akg/oracle.hpp"
#include "akg/special_rings.hpp"

using namespace akg;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const DomainError& e) {
    return e.code();
  }
  ADD_FAILURE() << "no DomainError";
  return ErrorCode::InternalInconsistency;
}

HyperbolaData local(Vector d) { return HyperbolaData{std::move(d), true, std::nullopt}; }

}  // namespace

TEST(Hyperbola, ClassGroups) {
  EXPECT_EQ(hyperbola_dkg(local({3, 3})), (AbelianGroup{1, {3}}));
  EXPECT_EQ(hyperbola_dkg(local({2, 4})), (AbelianGroup{1, {2}}));
  EXPECT_EQ(hyperbola_dkg(local({5})), (AbelianGroup{0, {5}}));
  EXPECT_EQ(hyperbola_dkg(local({1, 2, 3})), (AbelianGroup{2, {}}));
  EXPECT_EQ(hyperbola_akg(local({3, 3})), (AbelianGroup{1, {}}));
  EXPECT_FALSE(hyperbola_akg_zero(local({3, 3})));
  EXPECT_TRUE(hyperbola_akg_zero(local({7})));
}

TEST(Hyperbola, ComaximalBase) {
  HyperbolaData h{{2, 3}, false, std::vector<std::vector<bool>>{{false, true}, {true, false}}};
  EXPECT_TRUE(hyperbola_akg_zero(h));
  h.comaximal = std::vector<std::vector<bool>>{{false, false}, {false, false}};
  EXPECT_FALSE(hyperbola_akg_zero(h));
  HyperbolaData missing{{2, 3}, false, std::nullopt};
  EXPECT_EQ(code_of([&] { hyperbola_akg_zero(missing); }), ErrorCode::MissingComaximalData);
  EXPECT_EQ(code_of([&] { hyperbola_is_coaffine(missing, {1, 1}); }), ErrorCode::RequiresLocalBase);
  EXPECT_EQ(code_of([&] { hyperbola_akg(missing); }), ErrorCode::RequiresLocalBase);
  HyperbolaData local_comax{{2, 3}, true, std::vector<std::vector<bool>>{{false, true}, {true, false}}};
  EXPECT_EQ(code_of([&] { hyperbola_akg_zero(local_comax); }), ErrorCode::FormatViolation);
  HyperbolaData asym{{2, 3}, false, std::vector<std::vector<bool>>{{false, true}, {false, false}}};
  EXPECT_EQ(code_of([&] { hyperbola_dkg(asym); }), ErrorCode::FormatViolation);
}

TEST(Hyperbola, InputValidation) {
  EXPECT_EQ(code_of([] { hyperbola_dkg(local({})); }), ErrorCode::FormatViolation);
  EXPECT_EQ(code_of([] { hyperbola_dkg(local({0, 2})); }), ErrorCode::FormatViolation);
  EXPECT_EQ(code_of([] { hyperbola_is_coaffine(local({2, 2}), {1}); }), ErrorCode::DimensionMismatch);
}

TEST(Hyperbola, ThreeThreeExample) {
  HyperbolaData h = local({3, 3});
  EXPECT_TRUE(hyperbola_is_affine_trivial(h, {1, 1}));
  EXPECT_TRUE(hyperbola_is_coaffine(h, {1, 1}));
  EXPECT_TRUE(hyperbola_is_coaffine(h, {1, 2}));
  EXPECT_FALSE(hyperbola_is_affine_trivial(h, {1, 2}));
  EXPECT_FALSE(hyperbola_is_coaffine(h, {2, 3}));
  EXPECT_TRUE(hyperbola_is_coaffine(h, {3, 3}));
  EXPECT_TRUE(hyperbola_is_coaffine(h, {-3, -3}));
}

TEST(Hyperbola, ClosedFormMatchesWindowScan) {
  for (std::int64_t d0 = 1; d0 <= 4; ++d0)
    for (std::int64_t d1 = 1; d1 <= 4; ++d1)
      for (std::int64_t n0 = -6; n0 <= 6; ++n0)
        for (std::int64_t n1 = -6; n1 <= 6; ++n1)
          EXPECT_EQ(hyperbola_is_coaffine(local({d0, d1}), {n0, n1}), oracle::hyperbola_coaffine_by_scan({d0, d1}, {n0, n1}))
              << d0 << " " << d1 << " " << n0 << " " << n1;
}

TEST(Hyperbola, AffineTrivialMeansTorsionAndCoaffineMultiples) {
  for (std::int64_t d0 = 1; d0 <= 4; ++d0)
    for (std::int64_t d1 = 1; d1 <= 4; ++d1)
      for (std::int64_t d2 = 1; d2 <= 3; ++d2) {
        HyperbolaData h = local({d0, d1, d2});
        for (std::int64_t n0 = -6; n0 <= 6; ++n0)
          for (std::int64_t n1 = -6; n1 <= 6; ++n1)
            for (std::int64_t n2 = -3; n2 <= 3; ++n2) {
              const bool trivial = hyperbola_is_affine_trivial(h, {n0, n1, n2});
              EXPECT_EQ(trivial, oracle::hyperbola_torsion_by_scan({d0, d1, d2}, {n0, n1, n2}, 24));
              if (!trivial) continue;
              for (std::int64_t t = -4; t <= 4; ++t)
                EXPECT_TRUE(hyperbola_is_coaffine(h, {t * n0, t * n1, t * n2}));
            }
      }
}

TEST(Hyperbola, DkgMatchesTheToricPresentation) {
  // K[U1, U2, X, Y]/(XY - U1^d1 U2^d2) is the monoid ring of <e1, e2, e3, d1 e1 + d2 e2 - e3>.
  for (std::int64_t d1 = 1; d1 <= 4; ++d1)
    for (std::int64_t d2 = 1; d2 <= 4; ++d2) {
      MonoidSpec m = build_monoid(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {d1, d2, -1}});
      EXPECT_EQ(divisor_class_group(facet_valuations(m)).dkg, hyperbola_dkg(local({d1, d2})));
    }
  MonoidSpec a = build_monoid(2, {{1, 0}, {0, 1}, {3, -1}});
  EXPECT_EQ(divisor_class_group(facet_valuations(a)).dkg, hyperbola_dkg(local({3})));
}

TEST(Determinantal, Formulas) {
  DeterminantalData q{2, 2, 2};
  EXPECT_EQ(det_dimension(q), 3);
  EXPECT_EQ(det_ideal_height(q), 1);
  EXPECT_EQ(det_akg(q), (AbelianGroup{1, {}}));
  EXPECT_EQ(det_dkg(q), (AbelianGroup{1, {}}));
  EXPECT_EQ(det_extension_height(q), 2);
  EXPECT_EQ(det_extension_height({3, 3, 2}), 3);
  EXPECT_EQ(det_dimension({3, 3, 2}), 5);
  EXPECT_EQ(det_ideal_height({3, 4, 3}), 2);
  for (std::int64_t m = 2; m <= 7; ++m)
    for (std::int64_t n = 2; n <= 7; ++n)
      for (std::int64_t k = 2; k <= std::min(m, n); ++k) {
        EXPECT_EQ(det_dimension({m, n, k}) + det_ideal_height({m, n, k}), m * n);
        EXPECT_GE(det_extension_height({m, n, k}), 2);
      }
  EXPECT_EQ(code_of([] { det_dimension({2, 2, 1}); }), ErrorCode::FormatViolation);
  EXPECT_EQ(code_of([] { det_dimension({2, 3, 3}); }), ErrorCode::FormatViolation);
  EXPECT_EQ(code_of([] { det_akg({0, 3, 2}); }), ErrorCode::FormatViolation);
}

TEST(Determinantal, TwoMinorsOfTwoByNAreSegre) {
  // R_2 of a 2 x n matrix is the Segre ring K[T_i S_j] with 2 and n factors.
  for (std::int64_t n = 2; n <= 4; ++n) {
    MonoidSpec seg = segre_monoid(static_cast<std::size_t>(n), 2);
    EXPECT_EQ(static_cast<std::int64_t>(seg.dim), det_dimension({2, n, 2}));
    EXPECT_EQ(affine_class_group(facet_valuations(seg)), det_akg({2, n, 2}));
  }
}

TEST(Segre, UnionRuleExamples) {
  EXPECT_FALSE(segre_union_affine(2, 2, {0}, {}));
  EXPECT_TRUE(segre_union_affine(2, 2, {0}, {1}));
  EXPECT_TRUE(segre_union_affine(2, 2, {}, {}));
  EXPECT_FALSE(segre_union_affine(3, 2, {}, {0, 1, 2}));
  EXPECT_TRUE(segre_union_affine(1, 3, {0, 2}, {}));
  EXPECT_EQ(code_of([] { segre_union_affine(2, 2, {2}, {}); }), ErrorCode::FormatViolation);
  EXPECT_EQ(code_of([] { segre_union_affine(2, 3, {}, {2}); }), ErrorCode::FormatViolation);
}

TEST(Segre, UnionRuleMatchesToricCriterion) {
  for (std::size_t m = 1; m <= 3; ++m)
    for (std::size_t n = 1; n <= 3; ++n) {
      MonoidSpec mon = segre_monoid(m, n);
      FacetSystem f = facet_valuations(mon);
      auto labels = segre_facet_labels(m, n, mon, f);
      for (std::size_t mask = 0; mask < (std::size_t{1} << f.count()); ++mask) {
        FacetSet s;
        std::vector<std::size_t> rows, cols;
        for (std::size_t i = 0; i < f.count(); ++i)
          if (mask & (std::size_t{1} << i)) {
            s.push_back(i);
            (labels[i].sort == SegreSort::Row ? rows : cols).push_back(labels[i].index);
          }
        EXPECT_EQ(complement_is_affine(mon, f, MonomialDivisor::from_support(s, f.count())),
                  segre_union_affine(m, n, rows, cols))
            << m << "x" << n << " mask " << mask;
      }
    }
}

TEST(Segre, Superheights) {
  EXPECT_EQ(segre_superheight(2, 2, SegrePrimeSort::Row), 2);
  EXPECT_EQ(segre_superheight(3, 5, SegrePrimeSort::Column), 5);
  EXPECT_EQ(segre_superheight(3, 5, SegrePrimeSort::Row), 3);
  EXPECT_EQ(code_of([] { segre_superheight(0, 5, SegrePrimeSort::Row); }), ErrorCode::FormatViolation);
}

TEST(Segre, SuperheightFeedsTheBoundsEngine) {
  using namespace akg::bounds;
  for (std::int64_t m = 2; m <= 5; ++m)
    for (std::int64_t n = 2; n <= 5; ++n) {
      KnowledgeBase kb;
      kb = assert_fact(kb, Invariant::supht, Relation::eq,
                       segre_superheight(static_cast<std::size_t>(m), static_cast<std::size_t>(n), SegrePrimeSort::Row));
      kb = assert_fact(kb, Invariant::ht, Relation::eq, 1);
      kb = assert_fact(kb, Invariant::dim_ring, Relation::eq, m + n - 1);
      EXPECT_TRUE(is_consistent(propagate(kb)));
    }
}
