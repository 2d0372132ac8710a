#include <gtest/gtest.h>

#include "cf/bilinear.hpp"
#include "cf/error.hpp"
#include "cf/random.hpp"
#include "cf/scalar_ring.hpp"
#include "cf/selftest.hpp"
#include "cf/structure.hpp"

using namespace cf;
using namespace cf::selftest;

namespace {

std::vector<std::string> ids(const std::string& filter) {
  std::vector<std::string> out;
  for (const Criterion& c : criteria())
    if (selected(c, filter)) out.push_back(c.id);
  return out;
}

}  // namespace

TEST(Selftest, NineCriteria) {
  ASSERT_EQ(criteria().size(), 9u);
  for (std::size_t i = 0; i < criteria().size(); ++i) EXPECT_EQ(criteria()[i].id, "C" + std::to_string(i + 1));
}

TEST(Selftest, Filters) {
  EXPECT_EQ(ids(""), ids("modules,scalars,interp,solver,algebra"));
  EXPECT_EQ(ids("scalars"), (std::vector<std::string>{"C2", "C3", "C4", "C5"}));
  EXPECT_EQ(ids("C7"), std::vector<std::string>{"C7"});
  EXPECT_EQ(ids("1,C9"), (std::vector<std::string>{"C1", "C9"}));
  EXPECT_TRUE(ids("nothing").empty());
}

TEST(Selftest, CorruptedFixtureIsNamed) {
  Fixtures fx = default_fixtures();
  const std::string name = fx.census[1].name;
  corrupt_structure_constant(fx, 1);
  const std::vector<Result> r = run(fx, "C3");
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].id, "C3");
  EXPECT_FALSE(r[0].pass);
  EXPECT_NE(r[0].detail.find("fixture " + name), std::string::npos) << r[0].detail;
}

TEST(Selftest, ZeroRingCannotBeCorrupted) {
  Fixtures fx = default_fixtures();
  EXPECT_THROW(corrupt_structure_constant(fx, 0), ValidationError);
}

TEST(Selftest, CleanFixturesPassQuickCriteria) {
  for (const Result& r : run(default_fixtures(), "C1,C3,C9")) EXPECT_TRUE(r.pass) << r.id << ": " << r.detail;
}

TEST(Generators, UnimodularInverse) {
  gen::Rng rng(7);
  for (int n = 0; n < 50; ++n) {
    const Index k = rng.uniform(1, 5);
    const gen::Unimodular u = gen::unimodular(rng, k);
    EXPECT_EQ(Matrix(u.u * u.inverse), identity(k));
  }
}

TEST(Generators, CyclicTensorsAreBilinear) {
  gen::Rng rng(8);
  for (int n = 0; n < 100; ++n) {
    const bool shared = rng.coin();
    const std::vector<Integer> a = gen::orders(rng, rng.uniform(1, 3), {0, 2, 3, 4, 6});
    const std::vector<Integer> b = shared ? a : gen::orders(rng, rng.uniform(1, 3), {0, 2, 3, 4, 6});
    const std::vector<Integer> c = gen::orders(rng, rng.uniform(1, 2), {0, 2, 4, 5});
    const BilinearTensor f = gen::cyclic_tensor(rng, a, b, c, 3, shared);
    ASSERT_TRUE(validate(f).empty());
    EXPECT_EQ(f.A.same_object(f.B), shared);
    const BilinearTensor g = gen::change_generators(f, gen::unimodular(rng, f.A.ngens()), gen::unimodular(rng, f.B.ngens()),
                                                    gen::unimodular(rng, f.C.ngens()));
    ASSERT_TRUE(validate(g).empty());
    EXPECT_EQ(g.A.cardinality(), f.A.cardinality());
    EXPECT_EQ(image_span(g).cardinality(), image_span(f).cardinality());
  }
}

TEST(Generators, SystemsAreWellSorted) {
  gen::Rng rng(9);
  const Structure st = Structure::of_module(FgModule::cyclic_sum(Scalars::integers(), {4}), "M");
  gen::TermShape shape;
  shape.sort = "M";
  shape.variables = {"x", "y"};
  shape.constants = {make_vector({1})};
  shape.products = false;
  for (int n = 0; n < 100; ++n) {
    const EqSystem s = gen::system(rng, shape, 2);
    EXPECT_EQ(s.equations.size(), 2u);
    EXPECT_NO_THROW(annotate(s, st));
  }
}

TEST(EvalProjected, MatchesFullSearch) {
  gen::Rng rng(10);
  const Structure st = Structure::of_module(FgModule::cyclic_sum(Scalars::integers(), {6}), "M");
  gen::TermShape shape;
  shape.sort = "M";
  shape.variables = {"x", "y", "z"};
  shape.constants = {make_vector({1}), make_vector({3})};
  shape.products = false;
  for (int n = 0; n < 60; ++n) {
    const EqSystem s = gen::system(rng, shape, static_cast<int>(rng.uniform(1, 3)));
    const Solutions full = eval_system(st, s, 1000);
    const Solutions proj = eval_projected(st, s, {"x"}, 1000);
    std::set<std::vector<Integer>> a, b;
    for (const auto& row : full.assignments) a.insert({row[0](0)});
    for (const auto& row : proj.assignments) b.insert({row[0](0)});
    ASSERT_EQ(a, b) << s.str();
  }
}
