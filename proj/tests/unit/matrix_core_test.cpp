#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "oracles.hpp"
#include "pixcode/errors.hpp"
#include "pixcode/grid_io.hpp"
#include "pixcode/matrix_core.hpp"

namespace pixcode {
namespace {

TEST(PixelMatrix, RejectsBadTritsAndShapes) {
  EXPECT_THROW(PixelMatrix::from_rows({{1, 2}, {0, 1}}), InvalidInputError);
  EXPECT_THROW(PixelMatrix::from_rows({{1, 1}, {1}}), DimensionError);
  EXPECT_THROW(PixelMatrix::from_rows({{1, 1, 1}, {1, 1, 1}}), DimensionError);
  const auto m = PixelMatrix::from_rows({{1, 0}, {0, -1}});
  EXPECT_FALSE(m.is_binary());
  EXPECT_EQ(m.nonzero_count(), 2);
  EXPECT_THROW(require_binary(m, "m"), InvalidInputError);
}

TEST(ElementwiseProduct, Examples) {
  const auto a = PixelMatrix::from_rows({{1, 1}, {1, -1}});
  EXPECT_EQ(elementwise_product(a, mate(a)),
            PixelMatrix::from_rows({{-1, -1}, {-1, -1}}));
  EXPECT_EQ(elementwise_product(a, a), PixelMatrix::constant(2, 1));
  EXPECT_EQ(elementwise_product(PixelMatrix::from_rows({{1, 0}, {0, -1}}),
                                PixelMatrix::constant(2, 1)),
            PixelMatrix::from_rows({{1, 0}, {0, -1}}));
  EXPECT_THROW(elementwise_product(a, sylvester(2)), DimensionError);
}

TEST(NormalizedScore, MateSelfAndZero) {
  const auto h = sylvester(3);
  EXPECT_EQ(normalized_score(h, mate(h)), -1.0);
  EXPECT_EQ(normalized_score(h, h), 1.0);
  EXPECT_EQ(normalized_score(h, PixelMatrix::zeros(8)), 0.0);
  // Always divided by N^2, even with zeros present.
  EXPECT_EQ(normalized_score(PixelMatrix::from_rows({{1, 0}, {0, 0}}),
                             PixelMatrix::constant(2, 1)),
            0.25);
  EXPECT_THROW(normalized_score(h, sylvester(2)), DimensionError);
}

TEST(Mate, Examples) {
  EXPECT_EQ(mate(PixelMatrix::from_rows({{1, -1}, {-1, 1}})),
            PixelMatrix::from_rows({{-1, 1}, {1, -1}}));
  EXPECT_EQ(mate(PixelMatrix::zeros(3)), PixelMatrix::zeros(3));
  const auto h = sylvester(3);
  EXPECT_EQ(mate(mate(h)), h);
  // The mate of H_8 is the light/dark inverse: first row all -1.
  for (int j = 0; j < 8; ++j) EXPECT_EQ(mate(h)(0, j), -1);
}

TEST(IsHadamard, Examples) {
  EXPECT_TRUE(is_hadamard(PixelMatrix::from_rows({{1, 1}, {1, -1}})));
  EXPECT_FALSE(is_hadamard(PixelMatrix::from_rows({{1, 1}, {1, 1}})));
  EXPECT_THROW(is_hadamard(PixelMatrix::from_rows({{1, 0}, {1, -1}})),
               InvalidInputError);
}

TEST(Sylvester, SmallOrders) {
  EXPECT_EQ(sylvester(0), PixelMatrix::from_rows({{1}}));
  EXPECT_EQ(sylvester(1), PixelMatrix::from_rows({{1, 1}, {1, -1}}));
  const auto h8 = sylvester(3);
  ASSERT_EQ(h8.order(), 8);
  EXPECT_TRUE(oracle::hadamard(oracle::to_grid(h8)));
  for (int i = 0; i < 8; ++i) {
    EXPECT_EQ(h8(0, i), 1);
    EXPECT_EQ(h8(i, 0), 1);
  }
  EXPECT_EQ(sylvester(4).order(), 16);
}

TEST(Sylvester, BlockRecursion) {
  for (int k = 1; k <= 6; ++k) {
    const auto h = sylvester(k);
    const auto prev = sylvester(k - 1);
    const int half = prev.order();
    for (int i = 0; i < half; ++i)
      for (int j = 0; j < half; ++j) {
        EXPECT_EQ(h(i, j), prev(i, j));
        EXPECT_EQ(h(i, j + half), prev(i, j));
        EXPECT_EQ(h(i + half, j), prev(i, j));
        EXPECT_EQ(h(i + half, j + half), -prev(i, j));
      }
    EXPECT_TRUE(is_hadamard(h));
  }
}

TEST(Sylvester, Limits) {
  EXPECT_THROW(sylvester(11), CapacityError);
  EXPECT_THROW(sylvester(-1), InvalidInputError);
  EXPECT_THROW(sylvester(5, 4), CapacityError);
}

TEST(EnumerateBinary, CountsAndBitOrder) {
  EXPECT_EQ(std::ranges::distance(enumerate_binary(2)), 16);
  EXPECT_EQ(std::ranges::distance(enumerate_binary(4)), 65536);
  EXPECT_THROW(enumerate_binary(6), CapacityError);
  // Bit 0 is cell (0,0); a 0 bit is -1.
  EXPECT_EQ(binary_matrix_from_index(2, 0), PixelMatrix::constant(2, -1));
  EXPECT_EQ(binary_matrix_from_index(2, 1),
            PixelMatrix::from_rows({{1, -1}, {-1, -1}}));
  EXPECT_EQ(binary_matrix_from_index(2, 0b0100),
            PixelMatrix::from_rows({{-1, -1}, {1, -1}}));
}

TEST(EnumerateBinary, AllDistinct) {
  std::set<PixelMatrix> seen;
  for (const auto& m : enumerate_binary(3)) seen.insert(m);
  EXPECT_EQ(seen.size(), 512u);
}

TEST(EnumerateBinary, Order4HadamardCensus) {
  long lib = 0, brute = 0;
  for (const auto& m : enumerate_binary(4)) {
    lib += is_hadamard(m);
    brute += oracle::hadamard(oracle::to_grid(m));
  }
  EXPECT_EQ(lib, 768);
  EXPECT_EQ(brute, 768);
}

TEST(RowPermutations, Counts) {
  EXPECT_EQ(std::ranges::distance(row_permutations(sylvester(0))), 1);
  int n2 = 0;
  for (const auto& m : row_permutations(sylvester(1))) {
    EXPECT_TRUE(is_hadamard(m));
    ++n2;
  }
  EXPECT_EQ(n2, 2);
  EXPECT_EQ(row_permutations(sylvester(3)).size(), 40320u);
}

TEST(RowPermutations, Order8AllHadamardAndDistinct) {
  std::set<PixelMatrix> seen;
  for (const auto& m : row_permutations(sylvester(3))) {
    ASSERT_TRUE(is_hadamard(m));
    seen.insert(m);
  }
  EXPECT_EQ(seen.size(), 40320u);
}

TEST(RowPermutations, LexicographicOrder) {
  const auto h = sylvester(2);
  std::vector<int> perm(4);
  std::iota(perm.begin(), perm.end(), 0);
  for (const auto& m : row_permutations(h)) {
    EXPECT_EQ(m, permute_rows(h, perm));
    std::next_permutation(perm.begin(), perm.end());
  }
}

TEST(HadamardClosure, PermutationsAndMates) {
  std::mt19937_64 rng(7);
  const auto h = sylvester(3);
  std::vector<int> perm(8);
  std::iota(perm.begin(), perm.end(), 0);
  for (int t = 0; t < 50; ++t) {
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto p = permute_rows(h, perm);
    EXPECT_TRUE(is_hadamard(p));
    EXPECT_TRUE(is_hadamard(mate(p)));
  }
}

TEST(GridIo, RoundTripAndFormat) {
  const auto m = PixelMatrix::from_rows({{1, -1, 0}, {0, 1, 1}, {-1, -1, -1}});
  const std::string text = to_grid_text(m);
  EXPECT_EQ(text, "order 3\n1 -1 0\n0 1 1\n-1 -1 -1\n");
  EXPECT_EQ(parse_grid_text(text), m);
}

TEST(GridIo, RejectsMalformed) {
  EXPECT_THROW(parse_grid_text("order 2\n1 1\n1 2\n"), InvalidInputError);
  EXPECT_THROW(parse_grid_text("order 2\n1 1\n1\n"), Error);
  EXPECT_THROW(parse_grid_text("2\n1 1\n1 1\n"), InvalidInputError);
  EXPECT_THROW(parse_grid_text("order 2\n1 1 \n1 1\n"), InvalidInputError);
  EXPECT_THROW(parse_grid_text("order 2\n+1 1\n1 1\n"), InvalidInputError);
  EXPECT_THROW(read_grid_file("/nonexistent/x.grid"), IoError);
}

}  // namespace
}  // namespace pixcode
