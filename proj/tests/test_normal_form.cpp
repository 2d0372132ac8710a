#include <gtest/gtest.h>

#include "cf/linear.hpp"
#include "cf/module.hpp"
#include "cf/normal_form.hpp"

using namespace cf;

TEST(SmithNormalForm, TwoByTwo) {
  Matrix m = make_matrix({{2, 4}, {6, 8}});
  SmithForm<Integer> s = smith_normal_form(m);
  EXPECT_EQ(s.D, make_matrix({{2, 0}, {0, 4}}));
  EXPECT_EQ(Matrix(s.U * m * s.V), s.D);
  EXPECT_EQ(Matrix(s.V * s.V_inverse), identity(2));
}

TEST(SolveLinear, ModSix) {
  LinearSolution s = solve_linear(make_matrix({{2}}), make_vector({4}), Scalars::modular(6));
  ASSERT_TRUE(s.solvable);
  EXPECT_EQ(s.particular, make_vector({2}));
  EXPECT_EQ(s.kernel, make_matrix({{3}}));
}

TEST(EndModule, ZTwoPlusZFour) {
  FgModule n(Scalars::integers(), 2, make_matrix({{2, 0}, {0, 4}}));
  EndoSubmodule e = end_module(n);
  EXPECT_EQ(e.cardinality(), Cardinality::finite(32));
}
