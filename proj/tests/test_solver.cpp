#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "cf/error.hpp"
#include "cf/fixtures.hpp"
#include "cf/interpretation.hpp"
#include "cf/random.hpp"
#include "cf/solver.hpp"

using namespace cf;

namespace {

Term x() { return Term::var("x"); }
Term y() { return Term::var("y"); }
Term c(std::vector<long long> v) { return Term::constant(make_vector(v)); }

EqSystem system_of(const std::vector<std::string>& vars, const std::string& sort) {
  EqSystem s;
  for (const std::string& v : vars) s.add_variable(v, sort);
  return s;
}

}  // namespace

TEST(Normalize, SingleSquare) {
  Structure st = Structure::of_algebra(cyclic_ring(5), "R");
  EqSystem s = system_of({"x"}, "R");
  s.add_equation(Term::mul(x(), x()), c({4}));
  NormalizedSystem n = normalize(s, st);
  ASSERT_EQ(n.products.size(), 1u);
  EXPECT_EQ(n.products[0].product, "_p1");
  ASSERT_EQ(n.linear.equations.size(), 3u);
  EXPECT_EQ(n.linear.equations[0].lhs.str(), "_l1");
  EXPECT_EQ(n.linear.equations[0].rhs.str(), "x");
  EXPECT_EQ(n.linear.equations[2].lhs.str(), "_p1");
  EXPECT_TRUE(is_linear(n.linear));
}

TEST(Normalize, Nested) {
  Structure st = Structure::of_algebra(cyclic_ring(5), "R");
  EqSystem s = system_of({"x", "y", "z"}, "R");
  s.add_equation(Term::mul(x(), Term::mul(y(), Term::var("z"))), Term::zero());
  NormalizedSystem n = normalize(s, st);
  EXPECT_EQ(n.products.size(), 2u);
  EXPECT_EQ(n.linear.equations[2].lhs.str(), "_l2");
  EXPECT_EQ(n.linear.equations[3].rhs.str(), "_p1");
  EqSystem lin = system_of({"x"}, "R");
  lin.add_equation(Term::add(x(), x()), c({1}));
  EXPECT_TRUE(normalize(lin, st).products.empty());
}

TEST(DecideLinear, Integers) {
  Structure z = Structure::of_module(FgModule::free(Scalars::integers(), 1), "M");
  EqSystem s = system_of({"x", "y"}, "M");
  s.add_equation(Term::smul(2, x()), c({4}));
  s.add_equation(Term::add(x(), y()), Term::zero());
  Verdict v = decide_linear(z, s);
  ASSERT_EQ(v.status, Verdict::Status::Sat);
  EXPECT_EQ(v.witness[0], make_vector({2}));
  EXPECT_EQ(v.witness[1], make_vector({-2}));
  EqSystem u = system_of({"x"}, "M");
  u.add_equation(Term::smul(2, x()), c({1}));
  EXPECT_EQ(decide_linear(z, u).status, Verdict::Status::Unsat);
  Structure z4 = Structure::of_module(FgModule::cyclic_sum(Scalars::integers(), {4}), "M");
  EqSystem w = system_of({"x"}, "M");
  w.add_equation(Term::smul(2, x()), c({2}));
  Verdict vw = decide_linear(z4, w);
  ASSERT_EQ(vw.status, Verdict::Status::Sat);
  EXPECT_TRUE(vw.witness[0] == make_vector({1}) || vw.witness[0] == make_vector({3}));
}

TEST(DecideFiniteSquare, ZPlusZ2) {
  AlgebraPresentation r = z_plus_z2();
  EqSystem s = system_of({"x", "y"}, "R");
  s.add_equation(Term::mul(x(), y()), c({0, 1}));
  Verdict v = decide_finite_square(r, s);
  ASSERT_EQ(v.status, Verdict::Status::Sat);
  EXPECT_EQ(v.witness[0], make_vector({1, 0}));
  EXPECT_EQ(v.witness[1], make_vector({1, 0}));
  EqSystem u = system_of({"x"}, "R");
  u.add_equation(Term::mul(x(), x()), c({0, 1}));
  u.add_equation(Term::add(x(), x()), c({0, 0}));
  EXPECT_EQ(decide_finite_square(r, u).status, Verdict::Status::Unsat);
}

TEST(DecideFiniteSquare, ZeroProduct) {
  AlgebraPresentation r;
  r.module = FgModule::free(Scalars::integers(), 1);
  r.mult = {{make_vector({0})}};
  EqSystem s = system_of({"x", "y"}, "R");
  s.add_equation(Term::mul(x(), y()), Term::zero());
  Verdict v = decide_finite_square(r, s);
  ASSERT_EQ(v.status, Verdict::Status::Sat);
  EXPECT_EQ(v.witness[0], make_vector({0}));
}

TEST(DecideFiniteSquare, Precondition) {
  EqSystem s = system_of({"x"}, "R");
  s.add_equation(Term::mul(x(), x()), c({2}));
  EXPECT_THROW(decide_finite_square(integer_ring(), s), ValidationError);
}

TEST(BruteForce, Examples) {
  EqSystem s = system_of({"x"}, "R");
  s.add_equation(Term::mul(x(), x()), c({2}));
  EXPECT_TRUE(brute_force(cyclic_ring(4), s, 100).assignments.empty());
  EXPECT_EQ(decide_finite_square(cyclic_ring(4), s).status, Verdict::Status::Unsat);
}

TEST(Interp, ComposeQuotients) {
  Interpretation psi = interp_quotient(integer_ring(), make_matrix({{4}}));
  AlgebraPresentation z4;
  z4.module = psi.source.sorts[0].carrier;
  z4.mult = *psi.source.sorts[0].mult;
  z4.flags.associative = z4.flags.commutative = true;
  z4.flags.identity = make_vector({1});
  Interpretation phi = interp_quotient(z4, make_matrix({{2}}));
  Interpretation comp = compose(phi, psi);
  const Certificate& eq = comp.sort("R").equality;
  ASSERT_TRUE(is_linear(eq.system));
  for (long long a = -8; a <= 8; ++a)
    for (long long b = -8; b <= 8; ++b) {
      EqSystem s = eq.system;
      s.add_equation(Term::var(eq.interface[0]), c({a}));
      s.add_equation(Term::var(eq.interface[1]), c({b}));
      EXPECT_EQ(decide_linear(comp.target, s).status == Verdict::Status::Sat, (a - b) % 2 == 0) << a << " " << b;
    }
}

TEST(DecideLinear, PlantedSolutions) {
  gen::Rng rng(21);
  const std::vector<FgModule> carriers{FgModule::free(Scalars::integers(), 2),
                                       FgModule::cyclic_sum(Scalars::integers(), {4, 6}),
                                       FgModule::cyclic_sum(Scalars::integers(), {0, 3}),
                                       FgModule(Scalars::modular(9), 2, make_matrix({{3, 0}}))};
  for (int n = 0; n < 200; ++n) {
    const FgModule& m = carriers[static_cast<std::size_t>(n) % carriers.size()];
    const Structure st = Structure::of_module(m, "M");
    gen::TermShape shape;
    shape.sort = "M";
    shape.variables = {"x", "y", "z"};
    shape.constants = {m.generator(0), m.generator(1)};
    shape.products = false;
    EqSystem s = gen::system(rng, shape, static_cast<int>(rng.uniform(1, 4)));
    std::map<std::string, Element> env;
    for (const std::string& v : shape.variables) env[v] = gen::matrix(rng, 2, 1, 5).col(0);
    const EqSystem ann = annotate(s, st);
    for (std::size_t e = 0; e < s.equations.size(); ++e) s.equations[e].rhs = Term::constant(st.evaluate(ann.equations[e].lhs, env), "M");
    const Verdict v = decide_linear(st, s);
    ASSERT_EQ(v.status, Verdict::Status::Sat) << s.str();
    std::map<std::string, Element> w;
    for (std::size_t i = 0; i < v.variables.size(); ++i) w[v.variables[i]] = v.witness[i];
    ASSERT_TRUE(st.satisfies(annotate(s, st), w));
  }
}

TEST(DecideLinear, AgreesWithSearchOnFiniteModules) {
  gen::Rng rng(22);
  const FgModule m = FgModule::cyclic_sum(Scalars::integers(), {2, 6});
  const Structure st = Structure::of_module(m, "M");
  gen::TermShape shape;
  shape.sort = "M";
  shape.variables = {"x", "y"};
  shape.constants = {m.generator(0), m.generator(1), make_vector({1, 3})};
  shape.products = false;
  for (int n = 0; n < 200; ++n) {
    const EqSystem s = gen::system(rng, shape, static_cast<int>(rng.uniform(1, 3)));
    const bool sat = !eval_system(st, s, 1000).assignments.empty();
    ASSERT_EQ(decide_linear(st, s).status == Verdict::Status::Sat, sat) << s.str();
  }
}

TEST(Normalize, PreservesSolutionSets) {
  gen::Rng rng(23);
  for (const AlgebraPresentation& r : {cyclic_ring(6), f4(), f2_truncated_polynomial(3), matrix_ring_f2()}) {
    const Structure st = Structure::of_algebra(r, "R");
    const std::vector<Element> els = r.module.elements(64);
    gen::TermShape shape;
    shape.sort = "R";
    shape.variables = {"x", "y"};
    shape.constants = {els[1 % els.size()], els.back()};
    for (int n = 0; n < 25; ++n) {
      const EqSystem s = gen::system(rng, shape, static_cast<int>(rng.uniform(1, 2)));
      const NormalizedSystem ns = normalize(s, st);
      const Solutions direct = eval_system(st, s, 100000);
      const Solutions projected = eval_projected(st, ns.combined(), {"x", "y"}, 100000);
      ASSERT_EQ(direct.assignments, projected.assignments) << s.str();
    }
  }
}
