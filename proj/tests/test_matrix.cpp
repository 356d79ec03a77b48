#include <gtest/gtest.h>

#include "sgc/error.hpp"
#include "sgc/matrix.hpp"

namespace sgc {
namespace {

const FieldModulus kQ7 = make_field(7);
const FieldModulus kBig = make_field(2147483647);

TEST(Rank, Basics) {
  EXPECT_EQ(rank(FieldMatrix::identity(3, kQ7)), 3u);
  EXPECT_EQ(rank(FieldMatrix(2, 5, kQ7)), 0u);
  EXPECT_EQ(rank(FieldMatrix::from_rows({{1, 2}, {2, 4}}, kQ7)), 1u);
  EXPECT_EQ(rank(FieldMatrix(0, 4, kQ7)), 0u);
}

TEST(Rank, EqualsTransposeRank) {
  SeededRng rng(1);
  for (std::uint64_t qv : {2ull, 3ull, 7ull, 2147483647ull}) {
    const auto q = make_field(qv);
    for (int t = 0; t < 50; ++t) {
      const std::size_t r = 1 + rng.uniform_below(8), c = 1 + rng.uniform_below(8);
      auto a = FieldMatrix::random(r, c, q, rng);
      // Low-rank products too.
      if (t % 2) a = FieldMatrix::random(r, 2, q, rng) * FieldMatrix::random(2, c, q, rng);
      ASSERT_EQ(rank(a), rank(a.transpose()));
      ASSERT_EQ(rank(a), rref(a).rank());
    }
  }
}

TEST(Rref, IsReduced) {
  SeededRng rng(2);
  const auto a = FieldMatrix::random(5, 3, kQ7, rng) * FieldMatrix::random(3, 8, kQ7, rng);
  const auto e = rref(a);
  for (std::size_t i = 0; i < e.rank(); ++i) {
    EXPECT_EQ(e.reduced(i, e.pivot_cols[i]), 1u);
    for (std::size_t k = 0; k < e.reduced.rows(); ++k)
      if (k != i) EXPECT_EQ(e.reduced(k, e.pivot_cols[i]), 0u);
  }
  for (std::size_t i = e.rank(); i < e.reduced.rows(); ++i)
    for (std::size_t j = 0; j < e.reduced.cols(); ++j) EXPECT_EQ(e.reduced(i, j), 0u);
}

TEST(Solve, Examples) {
  const auto b = FieldMatrix::from_rows({{3, 4}, {5, 6}}, kQ7);
  EXPECT_EQ(solve_linear(FieldMatrix::identity(2, kQ7), b), b);
  EXPECT_THROW(solve_linear(FieldMatrix::from_rows({{1, 1}, {2, 2}}, kQ7), FieldMatrix::from_rows({{1}, {3}}, kQ7)),
               Unsolvable);
  EXPECT_FALSE(try_solve_linear(FieldMatrix::from_rows({{1, 1}, {2, 2}}, kQ7), FieldMatrix::from_rows({{1}, {3}}, kQ7)));
  EXPECT_EQ(solve_linear(FieldMatrix::from_rows({{1, 0, 0}}, kQ7), FieldMatrix::from_rows({{5}}, kQ7)),
            FieldMatrix::from_rows({{5}, {0}, {0}}, kQ7));
  EXPECT_THROW(solve_linear(FieldMatrix::identity(2, kQ7), FieldMatrix(3, 1, kQ7)), DimensionMismatch);
}

TEST(Solve, SolvableSystemsRoundTrip) {
  SeededRng rng(3);
  for (int t = 0; t < 100; ++t) {
    const std::size_t r = 1 + rng.uniform_below(7), c = 1 + rng.uniform_below(7), k = 1 + rng.uniform_below(3);
    const auto q = t % 2 ? kBig : kQ7;
    const auto a = FieldMatrix::random(r, c, q, rng);
    const auto x0 = FieldMatrix::random(c, k, q, rng);
    const auto b = a * x0;  // solvable by construction
    const auto x = solve_linear(a, b);
    ASSERT_EQ(a * x, b);
  }
}

TEST(Solve, FreeVariablesAreZero) {
  // x1 + 2 x3 = 4 ; x2 = 1 ; x3 free.
  const auto a = FieldMatrix::from_rows({{1, 0, 2}, {0, 1, 0}}, kQ7);
  const auto x = solve_linear(a, FieldMatrix::from_rows({{4}, {1}}, kQ7));
  EXPECT_EQ(x, FieldMatrix::from_rows({{4}, {1}, {0}}, kQ7));
}

TEST(Invert, Examples) {
  EXPECT_EQ(invert(FieldMatrix::identity(4, kQ7)), FieldMatrix::identity(4, kQ7));
  const auto swap = FieldMatrix::from_rows({{0, 1}, {1, 0}}, kQ7);
  EXPECT_EQ(invert(swap), swap);
  EXPECT_THROW(invert(FieldMatrix::from_rows({{1, 2}, {2, 4}}, kQ7)), Singular);
  EXPECT_THROW(invert(FieldMatrix(2, 3, kQ7)), DimensionMismatch);
}

TEST(Invert, RandomMultipliesBack) {
  SeededRng rng(4);
  const auto a = FieldMatrix::random(6, 6, kBig, rng);
  ASSERT_EQ(rank(a), 6u);
  const auto b = invert(a);
  EXPECT_EQ(a * b, FieldMatrix::identity(6, kBig));
  EXPECT_EQ(b * a, FieldMatrix::identity(6, kBig));
}

TEST(Invert, FailsExactlyWhenRankDeficient) {
  SeededRng rng(5);
  const auto q = make_field(3);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng.uniform_below(4);
    const auto a = FieldMatrix::random(n, n, q, rng);
    const auto inv = try_invert(a);
    ASSERT_EQ(inv.has_value(), rank(a) == n);
    if (inv) ASSERT_EQ(*inv * a, FieldMatrix::identity(n, q));
  }
}

TEST(Nullspace, Annihilates) {
  SeededRng rng(6);
  const auto a = FieldMatrix::random(3, 2, kQ7, rng) * FieldMatrix::random(2, 6, kQ7, rng);
  const auto ns = nullspace(a);
  EXPECT_EQ(ns.rows(), 6 - rank(a));
  EXPECT_TRUE((a * ns.transpose()).is_zero());
  EXPECT_EQ(rank(ns), ns.rows());
}

TEST(Blocks, Assemble) {
  const auto I2 = FieldMatrix::identity(2, kQ7);
  const auto z21 = FieldMatrix(2, 1, kQ7), z12 = FieldMatrix(1, 2, kQ7);
  EXPECT_EQ(assemble_blocks({{I2, z21}, {z12, FieldMatrix::identity(1, kQ7)}}), FieldMatrix::identity(3, kQ7));
  SeededRng rng(7);
  const auto m = FieldMatrix::random(3, 4, kQ7, rng);
  EXPECT_EQ(assemble_blocks({{m}}), m);
  // Shapes of the worked example's demand matrix.
  const auto F = assemble_blocks({{FieldMatrix(3, 9, kQ7), FieldMatrix(3, 3, kQ7)},
                                  {FieldMatrix(3, 9, kQ7), FieldMatrix::identity(3, kQ7)}});
  EXPECT_EQ(F.rows(), 6u);
  EXPECT_EQ(F.cols(), 12u);
  EXPECT_THROW(assemble_blocks({{I2, FieldMatrix(3, 1, kQ7)}}), DimensionMismatch);
  EXPECT_THROW(vstack({I2, FieldMatrix(1, 3, kQ7)}), DimensionMismatch);
  EXPECT_THROW(hstack({I2, FieldMatrix(3, 1, kQ7)}), DimensionMismatch);
}

TEST(Matrix, SelectAndBlock) {
  const auto m = FieldMatrix::from_rows({{1, 2, 3}, {4, 5, 6}, {0, 1, 2}}, kQ7);
  const std::vector<std::size_t> rows{2, 0}, cols{1};
  EXPECT_EQ(m.select(rows, cols), FieldMatrix::from_rows({{1}, {2}}, kQ7));
  EXPECT_EQ(m.block(1, 1, 2, 2), FieldMatrix::from_rows({{5, 6}, {1, 2}}, kQ7));
  EXPECT_EQ(m + (-m), FieldMatrix(3, 3, kQ7));
  EXPECT_EQ(FieldMatrix::from_rows({{-1, 8}}, kQ7), FieldMatrix::from_rows({{6, 1}}, kQ7));
}

TEST(Matrix, ModulusMismatchThrows) {
  EXPECT_THROW(FieldMatrix::identity(2, kQ7) * FieldMatrix::identity(2, kBig), DimensionMismatch);
  EXPECT_THROW(FieldMatrix::identity(2, kQ7) * FieldMatrix::identity(3, kQ7), DimensionMismatch);
}

}  // namespace
}  // namespace sgc
