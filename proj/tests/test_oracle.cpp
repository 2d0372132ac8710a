#include <gtest/gtest.h>

#include "cf/oracle.hpp"

using namespace cf;

TEST(Census, CommutativeUnitalRingCounts) {
  const std::vector<std::size_t> expected{1, 1, 1, 4, 1, 1, 1, 10, 4, 1, 1, 4, 1, 1, 1, 37};
  for (int n = 1; n <= 16; ++n) EXPECT_EQ(oracle::commutative_unital_rings(n).size(), expected[static_cast<std::size_t>(n - 1)]) << n;
}

TEST(Oracle, Determinant) {
  EXPECT_EQ(oracle::determinant(make_matrix({{2, 4}, {6, 8}})), -8);
  EXPECT_EQ(oracle::determinant(make_matrix({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}})), -1);
}

TEST(Oracle, EndomorphismCount) {
  EXPECT_EQ(oracle::endomorphism_count(oracle::Group{{2, 4}}), 32u);
}
