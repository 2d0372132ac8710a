#include <gtest/gtest.h>

#include <set>

#include "cf/fixtures.hpp"
#include "cf/interpretation.hpp"

using namespace cf;

namespace {

using Key = std::vector<std::vector<Integer>>;

Key key(const std::vector<Element>& row) {
  Key k;
  for (const Element& e : row) k.emplace_back(e.data(), e.data() + e.size());
  return k;
}

// Source solutions obtained by projecting target solutions of the translation.
std::set<Key> projected(const Interpretation& phi, const EqSystem& sigma, const Translation& t, const Solutions& sol) {
  std::set<Key> out;
  for (const auto& row : sol.assignments) {
    std::vector<Element> src;
    for (const Variable& v : sigma.variables) {
      std::vector<Element> tuple;
      for (const std::string& n : t.provenance.at(v.name)) {
        auto it = std::find(sol.variables.begin(), sol.variables.end(), n);
        tuple.push_back(row[static_cast<std::size_t>(it - sol.variables.begin())]);
      }
      src.push_back(phi.project(v.sort, tuple));
    }
    out.insert(key(src));
  }
  return out;
}

std::set<Key> direct(const Structure& st, const EqSystem& sigma) {
  std::set<Key> out;
  for (const auto& row : eval_system(st, sigma, 1000000).assignments) out.insert(key(row));
  return out;
}

}  // namespace

TEST(Interp, QuotientOfIntegers) {
  Interpretation phi = interp_quotient(integer_ring(), make_matrix({{2}}));
  EqSystem sigma;
  sigma.add_variable("x", "R");
  sigma.add_equation(Term::var("x"), Term::constant(make_vector({1})));
  Translation t = translate(sigma, phi);
  std::map<std::string, std::vector<Element>> dom;
  for (const Variable& v : t.system.variables) dom[v.name] = box_elements(phi.target.sort(v.sort).carrier, 6);
  Solutions sol = eval_system_on(phi.target, t.system, dom, 1000000);
  std::set<long long> xs;
  for (const auto& row : sol.assignments) xs.insert(static_cast<long long>(row[0](0)));
  EXPECT_EQ(xs, (std::set<long long>{-5, -3, -1, 1, 3, 5}));
  EXPECT_TRUE(language_violations(t.system, phi.target).empty());
}

TEST(Interp, EmptySystem) {
  Interpretation phi = interp_quotient(cyclic_ring(4), make_matrix({{2}}));
  EqSystem sigma;
  sigma.add_variable("x", "R");
  Translation t = translate(sigma, phi);
  EXPECT_EQ(eval_system(phi.target, t.system, 1000).assignments.size(), 4u);
}

TEST(Interp, EmptyGeneratorsIsIdentity) {
  Interpretation phi = interp_quotient(integer_ring(), Matrix(0, 1));
  const Certificate& eq = phi.sort("R").equality;
  ASSERT_EQ(eq.system.equations.size(), 1u);
  EXPECT_EQ(eq.system.equations[0].lhs.str(), "x");
  EXPECT_EQ(eq.system.equations[0].rhs.str(), "(y + 0)");
}

TEST(Interp, TruncatedPolynomialQuotient) {
  AlgebraPresentation p = f2_truncated_polynomial(3);
  Interpretation phi = interp_quotient(p, make_matrix({{0, 0, 1}}));
  EXPECT_EQ(phi.source.sorts[0].carrier.cardinality(), Cardinality::finite(4));
  EqSystem sigma;
  sigma.add_variable("x", "R");
  sigma.add_equation(Term::mul(Term::var("x"), Term::var("x")), Term::zero());
  Translation t = translate(sigma, phi);
  Solutions sol = eval_system(phi.target, t.system, 1000000);
  EXPECT_EQ(projected(phi, sigma, t, sol), direct(phi.source, sigma));
  EXPECT_EQ(direct(phi.source, sigma).size(), 2u);
}

TEST(Interp, ComposeWithIdentity) {
  Interpretation phi = interp_quotient(cyclic_ring(4), make_matrix({{2}}));
  Interpretation c = compose(phi, identity_interpretation(phi.target));
  EqSystem sigma;
  sigma.add_variable("x", "R");
  sigma.add_variable("y", "R");
  sigma.add_equation(Term::mul(Term::var("x"), Term::var("y")), Term::constant(make_vector({1})));
  Translation a = translate(sigma, phi), b = translate(sigma, c);
  EXPECT_EQ(projected(phi, sigma, a, eval_system(phi.target, a.system, 1000000)),
            projected(c, sigma, b, eval_system(c.target, b.system, 1000000)));
  Interpretation d = compose(identity_interpretation(phi.source), phi);
  Translation e = translate(sigma, d);
  EXPECT_EQ(projected(d, sigma, e, eval_system(d.target, e.system, 1000000)), direct(phi.source, sigma));
}

TEST(Interp, ModuleFiniteGaussian) {
  Interpretation phi = interp_module_finite(gaussian_integers());
  const OpInterp* mul = phi.find_op("mul:R");
  ASSERT_NE(mul, nullptr);
  ASSERT_EQ(mul->graph.system.equations.size(), 2u);
  EXPECT_EQ(mul->graph.system.equations[0].lhs.str(), "((x1 * y1) + -1*(x2 * y2))");
  EXPECT_EQ(mul->graph.system.equations[1].lhs.str(), "((x1 * y2) + (x2 * y1))");
}

TEST(Interp, ModuleFiniteF4) {
  AlgebraPresentation f = f4();
  Interpretation phi = interp_module_finite(f);
  EqSystem sigma;
  sigma.add_variable("x", "R");
  sigma.add_equation(Term::mul(Term::var("x"), Term::var("x")), Term::add(Term::var("x"), Term::constant(make_vector({1, 0}))));
  Translation t = translate(sigma, phi);
  std::set<Key> p = projected(phi, sigma, t, eval_system(phi.target, t.system, 1000000));
  EXPECT_EQ(p, direct(phi.source, sigma));
  EXPECT_EQ(p.size(), 2u);
}

TEST(Interp, ModuleFiniteF2Dual) {
  AlgebraPresentation f = f2_truncated_polynomial(2);
  Interpretation phi = interp_module_finite(f);
  EqSystem sigma;
  sigma.add_variable("x", "R");
  sigma.add_variable("y", "R");
  sigma.add_equation(Term::mul(Term::var("x"), Term::var("y")), Term::constant(make_vector({1, 0})));
  Translation t = translate(sigma, phi);
  std::set<Key> p = projected(phi, sigma, t, eval_system(phi.target, t.system, 1000000));
  EXPECT_EQ(p, direct(phi.source, sigma));
  EXPECT_EQ(p.size(), 2u);
}

TEST(Interp, ZSymCertificates) {
  for (const AlgebraPresentation& r : {prime_field(2), cyclic_ring(3), cyclic_ring(4), f2_product(), f4()}) {
    Interpretation phi = interp_zsym(multiplication(r));
    const SortInterp& si = phi.sort("Z");
    std::vector<std::vector<Element>> dom = interface_solutions(si.domain, phi.target, 1000000);
    EXPECT_EQ(Integer(static_cast<long long>(dom.size())), phi.source.sorts[0].carrier.cardinality().count);
    EqSystem sigma;
    sigma.add_variable("x", "Z");
    sigma.add_variable("y", "Z");
    sigma.add_variable("z", "Z");
    sigma.add_equation(Term::mul(Term::var("x"), Term::var("y")), Term::var("z"));
    Translation t = translate(sigma, phi);
    EXPECT_EQ(projected(phi, sigma, t, eval_system(phi.target, t.system, 100000000)), direct(phi.source, sigma));
    EXPECT_TRUE(language_violations(t.system, phi.target).empty());
  }
}

TEST(Interp, EmitIn) {
  AlgebraPresentation p = f2_truncated_polynomial(3);
  Certificate c = emit_In_definition(p, make_matrix({{0, 1, 0}}), 2);
  std::vector<std::vector<Element>> xs = interface_solutions(c, Structure::of_algebra(p, "R"), 1000);
  ASSERT_EQ(xs.size(), 2u);
  EXPECT_EQ(xs[0][0], make_vector({0, 0, 0}));
  EXPECT_EQ(xs[1][0], make_vector({0, 0, 1}));

  FreeTruncation lie = truncated_free({FreeKind::Lie, 2, false, 4, Scalars::modular(2)});
  Matrix t = make_matrix({{1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}});
  Certificate d = emit_In_definition(lie.algebra, t, 2);
  std::vector<std::vector<Element>> ys = interface_solutions(d, Structure::of_algebra(lie.algebra, "R"), 1000000);
  Submodule i2 = ideal_In(lie.algebra, t, 2);
  EXPECT_EQ(Integer(static_cast<long long>(ys.size())), i2.cardinality().count);
  for (const auto& y : ys) EXPECT_TRUE(i2.contains(y[0]));

  FreeTruncation comm = truncated_free({FreeKind::AssocComm, 1, false, 3, Scalars::modular(2)});
  Certificate e = emit_In_definition(comm.algebra, make_matrix({{1, 0}}), 1);
  EXPECT_EQ(interface_solutions(e, Structure::of_algebra(comm.algebra, "R"), 1000).size(), 4u);
}

namespace {

AlgebraPresentation source_of(const Interpretation& phi, const AlgebraPresentation& like) {
  AlgebraPresentation a = like;
  a.module = phi.source.sorts[0].carrier;
  a.mult = *phi.source.sorts[0].mult;
  return a;
}

std::set<std::vector<std::vector<Integer>>> interface_set(const Certificate& c, const Structure& target) {
  std::set<std::vector<std::vector<Integer>>> out;
  for (const auto& row : interface_solutions(c, target, 1000000)) {
    std::vector<std::vector<Integer>> r;
    for (const Element& e : row) r.emplace_back(e.data(), e.data() + e.size());
    out.insert(r);
  }
  return out;
}

}  // namespace

TEST(Interp, ComposeIsAssociative) {
  const AlgebraPresentation z16 = cyclic_ring(16);
  const Interpretation c1 = interp_quotient(z16, make_matrix({{8}}));
  const AlgebraPresentation z8 = source_of(c1, z16);
  const Interpretation c2 = interp_quotient(z8, make_matrix({{4}}));
  const Interpretation c3 = interp_quotient(source_of(c2, z8), make_matrix({{2}}));
  const Interpretation left = compose(compose(c3, c2), c1);
  const Interpretation right = compose(c3, compose(c2, c1));
  const SortInterp& l = left.sort("R");
  const SortInterp& r = right.sort("R");
  EXPECT_EQ(l.preimage, r.preimage);
  EXPECT_EQ(interface_set(l.domain, left.target), interface_set(r.domain, right.target));
  EXPECT_EQ(interface_set(l.equality, left.target), interface_set(r.equality, right.target));
  for (const std::string key : {"add:R", "mul:R", "neg:R"}) {
    ASSERT_NE(left.find_op(key), nullptr) << key;
    EXPECT_EQ(interface_set(left.find_op(key)->graph, left.target), interface_set(right.find_op(key)->graph, right.target)) << key;
  }
  // Z/2 inside Z/16: equal exactly when the difference is even.
  const auto eq = interface_set(l.equality, left.target);
  EXPECT_EQ(eq.size(), 128u);
  for (const auto& row : eq) EXPECT_EQ((row[0][0] - row[1][0]) % 2, 0);
}
