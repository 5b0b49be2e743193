#include <gtest/gtest.h>

#include <random>

#include "akg/lattice.hpp"
#include "akg/oracle.hpp"

using namespace akg;

namespace {

IntegerMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int lo, int hi) {
  IntegerMatrix a(r, c);
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) a(i, j) = lo + static_cast<int>(rng() % span);
  return a;
}

void expect_smith_invariants(const IntegerMatrix& a) {
  SmithForm s = smith_normal_form(a);
  EXPECT_EQ(s.U * a * s.V, s.D) << a.to_string();
  EXPECT_EQ(abs_value(determinant(s.U)), 1);
  EXPECT_EQ(abs_value(determinant(s.V)), 1);
  for (std::size_t i = 0; i < s.D.rows(); ++i)
    for (std::size_t j = 0; j < s.D.cols(); ++j)
      if (i != j || i >= s.rank) {
        EXPECT_EQ(s.D(i, j), 0);
      }
  for (std::size_t i = 0; i < s.rank; ++i) {
    EXPECT_GT(s.D(i, i), 0);
    if (i + 1 < s.rank) {
      EXPECT_EQ(s.D(i + 1, i + 1) % s.D(i, i), 0);
    }
  }
  EXPECT_EQ(s.rank, rank(a));
  EXPECT_EQ(s.diagonal(), oracle::invariant_factors_by_minors(a)) << a.to_string();
}

}  // namespace

TEST(Smith, SmallExamples) {
  IntegerMatrix a = IntegerMatrix::from_rows({{2, 4}, {6, 8}}, 2);
  EXPECT_EQ(smith_normal_form(a).diagonal(), (Vector{2, 4}));

  IntegerMatrix b = IntegerMatrix::from_rows({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}, 3);
  EXPECT_EQ(smith_normal_form(b).diagonal(), (Vector{2, 6, 12}));

  EXPECT_EQ(smith_normal_form(IntegerMatrix(2, 3)).rank, 0u);
  EXPECT_EQ(smith_normal_form(IntegerMatrix::identity(4)).diagonal(), (Vector{1, 1, 1, 1}));
}

TEST(Smith, RandomRectangularAgainstMinors) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 150; ++t) {
    const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    expect_smith_invariants(random_matrix(rng, r, c, -5, 5));
  }
}

TEST(Smith, LargeEntriesStayExact) {
  BigInt big("1000000000000000000000000000000");
  IntegerMatrix a = IntegerMatrix::from_rows({{big, big + 1}, {big * 3, big * 3 + 6}}, 2);
  SmithForm s = smith_normal_form(a);
  EXPECT_EQ(s.U * a * s.V, s.D);
  EXPECT_EQ(s.diagonal(), oracle::invariant_factors_by_minors(a));
}

TEST(Determinant, MatchesLeibniz) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + rng() % 4;
    IntegerMatrix a = random_matrix(rng, n, n, -4, 4);
    EXPECT_EQ(determinant(a), oracle::leibniz_determinant(a.row_list()));
  }
}

TEST(Cokernel, Examples) {
  EXPECT_EQ(cokernel(IntegerMatrix::from_columns({{3, 3}}, 2)), (AbelianGroup{1, {3}}));
  EXPECT_EQ(cokernel(IntegerMatrix::from_columns({}, 2)), (AbelianGroup{2, {}}));
  EXPECT_TRUE(cokernel(IntegerMatrix::identity(3)).is_trivial());
  EXPECT_EQ(cokernel(IntegerMatrix::from_columns({{2, 0}, {0, 4}}, 2)), (AbelianGroup{0, {2, 4}}));
  EXPECT_EQ((AbelianGroup{1, {3}}).to_string(), "Z + Z/3");
  EXPECT_EQ((AbelianGroup{2, {}}).to_string(), "Z^2");
  EXPECT_EQ((AbelianGroup{}).to_string(), "0");
}

TEST(ClassOf, CoordinatesInCokernel) {
  IntegerMatrix a = IntegerMatrix::from_columns({{3, 3}}, 2);
  EXPECT_TRUE(class_of(a, {3, 3}).is_zero());
  EXPECT_TRUE(class_of(a, {0, 0}).is_zero());
  ClassCoordinates diag = class_of(a, {1, 1});
  EXPECT_TRUE(diag.is_torsion());
  EXPECT_FALSE(diag.is_zero());
  EXPECT_FALSE(class_of(a, {1, 0}).is_torsion());
  EXPECT_EQ(class_of(a, {1, 0}), class_of(a, {4, 3}));
  EXPECT_THROW(class_of(a, {1, 0, 0}), DomainError);
}

TEST(ClassOf, IsAdditive) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    IntegerMatrix a = random_matrix(rng, 3, 2, -3, 3);
    SmithForm s = smith_normal_form(a);
    Vector u{static_cast<int>(rng() % 7) - 3, static_cast<int>(rng() % 7) - 3, static_cast<int>(rng() % 7) - 3};
    Vector img = a.apply({static_cast<int>(rng() % 5) - 2, static_cast<int>(rng() % 5) - 2});
    Vector shifted = u;
    for (std::size_t i = 0; i < 3; ++i) shifted[i] += img[i];
    EXPECT_EQ(class_of(s, u), class_of(s, shifted));
  }
}

TEST(Hermite, BasisSpansSameLatticeWithIndexFromMinors) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 60; ++t) {
    const std::size_t dim = 2 + rng() % 2;
    std::vector<Vector> gens;
    for (std::size_t k = 0; k < dim + 1; ++k) gens.push_back(random_matrix(rng, 1, dim, -4, 4).row(0));
    if (rank_of(gens, dim) < dim) continue;
    IntegerMatrix basis = sublattice_basis(gens, dim);
    ASSERT_EQ(basis.cols(), dim);
    // index of the generated lattice = gcd of maximal minors of the generator matrix
    BigInt g = 0;
    oracle::detail::for_each_subset(gens.size(), dim, [&](const std::vector<std::size_t>& idx) {
      std::vector<Vector> rows;
      for (std::size_t i : idx) rows.push_back(gens[i]);
      g = gcd(g, oracle::leibniz_determinant(rows));
    });
    EXPECT_EQ(abs_value(determinant(basis)), g);
    for (const auto& v : gens) EXPECT_EQ(basis.apply(lattice_coordinates(basis, v)), v);
  }
}

TEST(Hermite, ShapeIsLowerTriangularWithReducedRows) {
  IntegerMatrix a = IntegerMatrix::from_columns({{4, 2, 1}, {6, 0, 3}, {2, 2, 2}}, 3);
  HermiteForm h = hermite_column_form(a);
  EXPECT_EQ(a * h.W, h.H);
  EXPECT_EQ(abs_value(determinant(h.W)), 1);
  for (std::size_t j = 0; j < h.rank; ++j) {
    std::size_t pivot = 0;
    while (h.H(pivot, j) == 0) ++pivot;
    EXPECT_GT(h.H(pivot, j), 0);
    for (std::size_t k = 0; k < j; ++k) {
      EXPECT_GE(h.H(pivot, k), 0);
      EXPECT_LT(h.H(pivot, k), h.H(pivot, j));
    }
  }
}

TEST(Lattice, CoordinatesRejectOutsidePoints) {
  IntegerMatrix basis = IntegerMatrix::from_columns({{2, 0}, {0, 2}}, 2);
  EXPECT_EQ(lattice_coordinates(basis, {4, -2}), (Vector{2, -1}));
  try {
    lattice_coordinates(basis, {1, 0});
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotInLattice);
  }
  IntegerMatrix line = IntegerMatrix::from_columns({{1, 1, 0}}, 3);
  EXPECT_THROW(lattice_coordinates(line, {1, 0, 0}), DomainError);
}

TEST(Lattice, KernelBasis) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 40; ++t) {
    IntegerMatrix a = random_matrix(rng, 2, 4, -3, 3);
    IntegerMatrix k = kernel_basis(a);
    EXPECT_EQ(k.cols(), 4 - rank(a));
    EXPECT_EQ(rank(k), k.cols());
    IntegerMatrix zero(2, k.cols());
    EXPECT_EQ(a * k, zero);
  }
}

TEST(Vectors, Helpers) {
  EXPECT_EQ(gcd(-12, 18), 6);
  EXPECT_EQ(gcd(0, 0), 0);
  EXPECT_EQ(floor_div(-7, 2), -4);
  EXPECT_EQ(mod_floor(-7, 3), 2);
  EXPECT_EQ(primitive({4, -6, 0}), (Vector{2, -3, 0}));
  EXPECT_EQ(content({0, 0}), 0);
}
