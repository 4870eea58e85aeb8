#include "helpers.hpp"

#include <gtest/gtest.h>

using namespace pvforge;
using namespace pvforge::test;

TEST(Factor, OverRationals) {
  Field Q = Field::Q();
  auto fs = factor(Q, upoly(Q, {"-6", "11", "-6", "1"}));
  ASSERT_EQ(fs.size(), 3u);
  for (auto& f : fs) EXPECT_EQ(f.f.size(), 2u);
  EXPECT_TRUE(is_irreducible(Q, upoly(Q, {"-2", "0", "1"})));
  EXPECT_EQ(roots(Q, upoly(Q, {"-2", "0", "1"})).size(), 0u);
}

TEST(Factor, SquarefreeDecomposition) {
  Field Q = Field::Q();
  // (x-1)^2 (x+2)
  auto sq = squarefree_decomposition(Q, upoly(Q, {"2", "-3", "0", "1"}));
  int total = 0;
  for (auto& f : sq) total += f.mult * (static_cast<int>(f.f.size()) - 1);
  EXPECT_EQ(total, 3);
  EXPECT_EQ(squarefree_part(Q, upoly(Q, {"2", "-3", "0", "1"})).size(), 3u);
}

TEST(Factor, OverRationalFunctions) {
  Field K = Field::Qt();
  // x^2 - t is irreducible; x^2 - t^2 splits
  EXPECT_TRUE(is_irreducible(K, upoly(K, {"-t", "0", "1"})));
  EXPECT_EQ(factor(K, upoly(K, {"-t^2", "0", "1"})).size(), 2u);
}

TEST(Factor, OverRadicalExtension) {
  Field K = radical_field(2);
  auto rs = roots(K, upoly(K, {"-t", "0", "1"}));
  ASSERT_EQ(rs.size(), 2u);
  for (auto& r : rs) EXPECT_TRUE(K.eq(K.mul(r, r), K.t()));
}

TEST(Factor, CyclotomicOverRationals) {
  Field Q = Field::Q();
  auto fs = factor(Q, upoly(Q, {"-1", "0", "0", "1"}));
  ASSERT_EQ(fs.size(), 2u);
  Field W = adjoin_root(Q, "w", upoly(Q, {"1", "1", "1"}));
  EXPECT_EQ(roots(W, upoly(W, {"-1", "0", "0", "1"})).size(), 3u);
}
