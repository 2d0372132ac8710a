#include <gtest/gtest.h>

#include "cf/algebra.hpp"
#include "cf/error.hpp"
#include "cf/fixtures.hpp"
#include "cf/structure.hpp"

using namespace cf;

TEST(Algebra, Validate) {
  EXPECT_TRUE(validate_algebra(integer_ring()).empty());
  AlgebraPresentation abelian;
  abelian.module = FgModule::free(Scalars::integers(), 2);
  abelian.mult = {{make_vector({0, 0}), make_vector({0, 0})}, {make_vector({0, 0}), make_vector({0, 0})}};
  abelian.flags.lie = true;
  EXPECT_TRUE(validate_algebra(abelian).empty());
  AlgebraPresentation bad = integer_ring();
  bad.flags.lie = true;
  EXPECT_FALSE(validate_algebra(bad).empty());
}

TEST(Algebra, SquareSpan) {
  EXPECT_EQ(square_span(integer_ring()).cardinality(), Cardinality::infinite());
  EXPECT_EQ(square_span(z_plus_z2()).cardinality(), Cardinality::finite(2));
}

TEST(Algebra, IdealClosure) {
  Submodule i = ideal_closure(integer_ring(), make_matrix({{2}}));
  EXPECT_TRUE(i.contains(make_vector({4})));
  EXPECT_FALSE(i.contains(make_vector({3})));
  AlgebraPresentation p = f2_truncated_polynomial(3);
  Submodule t = ideal_closure(p, make_matrix({{0, 1, 0}}));
  EXPECT_EQ(t.cardinality(), Cardinality::finite(4));
  EXPECT_TRUE(t.contains(make_vector({0, 0, 1})));
  EXPECT_TRUE(ideal_closure(p, Matrix(0, 3)).is_zero());
}

TEST(FreeTruncation, Examples) {
  FreeTruncation lie = truncated_free({FreeKind::Lie, 2, false, 3, Scalars::integers()});
  EXPECT_EQ(lie.graded_dims, (std::vector<Index>{2, 1}));
  EXPECT_EQ(lie.algebra.labels, (std::vector<std::string>{"x", "y", "[x,y]"}));
  FreeTruncation words = truncated_free({FreeKind::AssocNoncomm, 2, false, 3, Scalars::integers()});
  EXPECT_EQ(words.graded_dims, (std::vector<Index>{2, 4}));
  FreeTruncation comm = truncated_free({FreeKind::AssocComm, 1, false, 3, Scalars::integers()});
  EXPECT_EQ(comm.algebra.ngens(), 2);
  EXPECT_TRUE(comm.algebra.module.is_zero(comm.algebra.multiply(make_vector({1, 0}), make_vector({0, 1}))));
  EXPECT_TRUE(validate_algebra(lie.algebra).empty());
}

TEST(FreeTruncation, IdealIn) {
  FreeTruncation comm = truncated_free({FreeKind::AssocComm, 1, false, 4, Scalars::integers()});
  Submodule i2 = ideal_In(comm.algebra, make_matrix({{1, 0, 0}}), 2);
  EXPECT_TRUE(i2.contains(make_vector({0, 1, 0})));
  EXPECT_TRUE(i2.contains(make_vector({0, 0, 1})));
  EXPECT_FALSE(i2.contains(make_vector({1, 0, 0})));
  FreeTruncation lie = truncated_free({FreeKind::Lie, 2, false, 4, Scalars::integers()});
  Submodule i3 = ideal_In(lie.algebra, make_matrix({{1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}}), 3);
  EXPECT_EQ(i3.as_module().canonical().free_rank, 2);
  AlgebraQuotient q = quotient_by_In(lie.algebra, make_matrix({{1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}}), 3);
  EXPECT_EQ(q.algebra.module.canonical().free_rank, 3);
  Submodule whole = ideal_In(comm.algebra, make_matrix({{1, 0, 0}}), 1);
  EXPECT_TRUE(whole.contains(make_vector({1, 0, 0})));
}

TEST(FreeTruncation, SquareInfinite) {
  for (FreeKind k : {FreeKind::AssocNoncomm, FreeKind::Lie}) {
    FreeTruncation f = truncated_free({k, 2, false, 3, Scalars::integers()});
    EXPECT_EQ(square_span(f.algebra).cardinality(), Cardinality::infinite());
  }
}

TEST(EvalSystem, Examples) {
  Structure z2 = Structure::of_algebra(cyclic_ring(2), "R");
  EqSystem s;
  s.add_variable("x", "R");
  s.add_variable("y", "R");
  s.add_equation(Term::mul(Term::var("x"), Term::var("y")), Term::constant(make_vector({1})));
  Solutions sol = eval_system(z2, s, 1000);
  ASSERT_EQ(sol.assignments.size(), 1u);
  EXPECT_EQ(sol.assignments[0][0], make_vector({1}));

  EqSystem t;
  t.add_variable("x", "R");
  t.add_equation(Term::add(Term::var("x"), Term::var("x")), Term::constant(make_vector({1})));
  EXPECT_TRUE(eval_system(z2, t, 1000).assignments.empty());

  Structure dual = Structure::of_algebra(f2_truncated_polynomial(2), "R");
  EqSystem u;
  u.add_variable("x", "R");
  u.add_equation(Term::mul(Term::var("x"), Term::var("x")), Term::zero());
  Solutions sq = eval_system(dual, u, 1000);
  ASSERT_EQ(sq.assignments.size(), 2u);
  EXPECT_EQ(sq.assignments[0][0], make_vector({0, 0}));
  EXPECT_EQ(sq.assignments[1][0], make_vector({0, 1}));

  Structure z5 = Structure::of_algebra(cyclic_ring(5), "R");
  EqSystem v;
  v.add_variable("x", "R");
  v.add_equation(Term::mul(Term::var("x"), Term::var("x")), Term::constant(make_vector({4})));
  Solutions r = eval_system(z5, v, 1000);
  ASSERT_EQ(r.assignments.size(), 2u);
  EXPECT_EQ(r.assignments[0][0], make_vector({2}));
  EXPECT_EQ(r.assignments[1][0], make_vector({3}));
}

TEST(EvalSystem, CapRefusal) {
  Structure z5 = Structure::of_algebra(cyclic_ring(5), "R");
  EqSystem v;
  for (const char* n : {"a", "b", "c"}) v.add_variable(n, "R");
  v.add_equation(Term::mul(Term::var("a"), Term::var("b")), Term::mul(Term::var("b"), Term::var("c")));
  EXPECT_THROW(eval_system(z5, v, 10), Refusal);
  EXPECT_EQ(eval_system(z5, v, 125).search_space, 125);
}
