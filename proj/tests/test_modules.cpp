#include <gtest/gtest.h>

#include <set>

#include "cf/error.hpp"
#include "cf/linear.hpp"
#include "cf/module.hpp"
#include "cf/normal_form.hpp"
#include "cf/random.hpp"

using namespace cf;

namespace {

FgModule z_module(Index n, std::vector<std::vector<long long>> rel = {}) {
  return FgModule(Scalars::integers(), n, make_matrix(rel, n));
}

bool divides(const Integer& a, const Integer& b) { return a == 0 ? b == 0 : b % a == 0; }

// Every x in [0, m)^n with a x = b mod m.
std::set<std::vector<long long>> congruence_solutions(const Matrix& a, const Vector& b, long long m) {
  std::set<std::vector<long long>> out;
  const Index n = a.cols();
  std::vector<long long> x(static_cast<std::size_t>(n), 0);
  for (;;) {
    bool ok = true;
    for (Index i = 0; i < a.rows() && ok; ++i) {
      Integer s = -b(i);
      for (Index j = 0; j < n; ++j) s += a(i, j) * x[static_cast<std::size_t>(j)];
      ok = mod_floor(s, Integer(m)) == 0;
    }
    if (ok) out.insert(x);
    Index k = 0;
    while (k < n && ++x[static_cast<std::size_t>(k)] == m) x[static_cast<std::size_t>(k++)] = 0;
    if (k == n) return out;
  }
}

}  // namespace

TEST(SmithNormalForm, Identity) {
  SmithForm<Integer> s = smith_normal_form(identity(3));
  EXPECT_EQ(s.D, identity(3));
}

TEST(SmithNormalForm, Zero) {
  Matrix z = Matrix::Zero(2, 3);
  SmithForm<Integer> s = smith_normal_form(z);
  EXPECT_EQ(s.D, z);
}

TEST(SmithNormalForm, RandomPostconditions) {
  gen::Rng rng(101);
  for (int n = 0; n < 300; ++n) {
    const Matrix m = gen::matrix(rng, rng.uniform(1, 8), rng.uniform(1, 8), 50);
    const SmithForm<Integer> s = smith_normal_form(m);
    ASSERT_EQ(Matrix(s.U * m * s.V), s.D);
    ASSERT_EQ(Matrix(s.V * s.V_inverse), identity(m.cols()));
    ASSERT_EQ(smith_normal_form(s.U).D, identity(m.rows()));
    const Index k = std::min(m.rows(), m.cols());
    for (Index i = 0; i < s.D.rows(); ++i)
      for (Index j = 0; j < s.D.cols(); ++j)
        if (i != j) {
          ASSERT_EQ(s.D(i, j), 0);
        }
    for (Index i = 0; i + 1 < k; ++i) {
      ASSERT_GE(s.D(i, i), 0);
      ASSERT_TRUE(divides(s.D(i, i), s.D(i + 1, i + 1)));
    }
  }
}

TEST(SolveLinear, Integers) {
  EXPECT_FALSE(solve_linear(make_matrix({{2}}), make_vector({3}), Scalars::integers()).solvable);
  const LinearSolution s = solve_linear(make_matrix({{2}}), make_vector({4}), Scalars::integers());
  ASSERT_TRUE(s.solvable);
  EXPECT_EQ(s.particular, make_vector({2}));
  EXPECT_EQ(s.kernel.rows(), 0);
}

TEST(SolveLinear, AgreesWithExhaustiveSearch) {
  gen::Rng rng(102);
  for (int n = 0; n < 400; ++n) {
    const long long m = rng.uniform(2, 12);
    const Index vars = rng.uniform(1, 3), rows = rng.uniform(1, 3);
    const Matrix a = gen::matrix(rng, rows, vars, 12);
    const Vector b = gen::matrix(rng, rows, 1, 12).col(0);
    const auto expected = congruence_solutions(a, b, m);
    const LinearSolution s = solve_linear(a, b, Scalars::modular(m));
    ASSERT_EQ(s.solvable, !expected.empty());
    if (!s.solvable) continue;
    // Particular plus kernel combinations reach every solution.
    std::set<std::vector<long long>> reached;
    const Index k = s.kernel.rows();
    std::vector<long long> c(static_cast<std::size_t>(k), 0);
    for (;;) {
      Vector x = s.particular;
      for (Index i = 0; i < k; ++i) x += Integer(c[static_cast<std::size_t>(i)]) * Vector(s.kernel.row(i).transpose());
      std::vector<long long> r;
      for (Index j = 0; j < vars; ++j) r.push_back(static_cast<long long>(mod_floor(x(j), Integer(m))));
      ASSERT_TRUE(expected.count(r));
      reached.insert(r);
      Index p = 0;
      while (p < k && ++c[static_cast<std::size_t>(p)] == m) c[static_cast<std::size_t>(p++)] = 0;
      if (p == k) break;
    }
    ASSERT_EQ(reached, expected);
  }
}

TEST(SolveCongruences, AgreesWithExhaustiveSearch) {
  gen::Rng rng(103);
  for (int n = 0; n < 400; ++n) {
    const long long m = rng.uniform(1, 12);
    const Matrix a = gen::matrix(rng, rng.uniform(1, 4), rng.uniform(1, 3), 20);
    const Vector b = gen::matrix(rng, a.rows(), 1, 20).col(0);
    const auto expected = congruence_solutions(a, b, m);
    const std::optional<Vector> x = solve_congruences(a, b, m);
    ASSERT_EQ(x.has_value(), !expected.empty());
    if (!x) continue;
    const Vector r = a * *x - b;
    for (Index i = 0; i < r.size(); ++i) ASSERT_EQ(mod_floor(r(i), Integer(m)), 0);
  }
}

TEST(SolveCongruences, RejectsLargeModulus) {
  EXPECT_THROW(solve_congruences(make_matrix({{1}}), make_vector({1}), Integer(1) << 31), ValidationError);
  EXPECT_THROW(solve_congruences(make_matrix({{1}}), make_vector({1, 2}), 5), ValidationError);
}

TEST(Canonical, Examples) {
  const CanonicalForm& a = z_module(2, {{2, 0}, {0, 3}}).canonical();
  EXPECT_EQ(a.free_rank, 0);
  EXPECT_EQ(a.invariant_factors, std::vector<Integer>{6});
  const CanonicalForm& b = z_module(3).canonical();
  EXPECT_EQ(b.free_rank, 3);
  EXPECT_TRUE(b.invariant_factors.empty());
  EXPECT_EQ(z_module(1, {{0}}).canonical().free_rank, 1);
}

TEST(Canonical, TransformsRoundTrip) {
  gen::Rng rng(104);
  for (int n = 0; n < 100; ++n) {
    const Index g = rng.uniform(1, 4);
    const FgModule m(Scalars::integers(), g, gen::matrix(rng, rng.uniform(0, 4), g, 6));
    const Canonicalization c = canonicalize(m);
    ASSERT_TRUE(c.to_canonical.is_well_defined());
    ASSERT_TRUE(c.from_canonical.is_well_defined());
    for (Index i = 0; i < g; ++i) {
      const Element x = m.generator(i);
      ASSERT_TRUE(m.equal(c.from_canonical.apply(c.to_canonical.apply(x)), x));
    }
    ASSERT_EQ(c.module.cardinality(), m.cardinality());
  }
}

TEST(ElementEquality, Examples) {
  const FgModule z4 = z_module(1, {{4}});
  EXPECT_TRUE(z4.equal(make_vector({1}), make_vector({5})));
  EXPECT_FALSE(z_module(1).equal(make_vector({1}), make_vector({2})));
  const FgModule v = z_module(2, {{2, 0}, {0, 2}});
  EXPECT_TRUE(v.equal(make_vector({1, 1}), make_vector({1, 1})));
}

TEST(ElementEquality, EquivalenceRelation) {
  gen::Rng rng(105);
  const FgModule m = z_module(3, {{2, 4, 0}, {0, 6, 3}});
  for (int n = 0; n < 200; ++n) {
    const Vector x = gen::matrix(rng, 3, 1, 9).col(0);
    const Vector y = gen::matrix(rng, 3, 1, 9).col(0);
    const Vector shift = Vector(m.relations().row(rng.index(2)).transpose()) * Integer(rng.uniform(-3, 3));
    ASSERT_TRUE(m.equal(x, x));
    ASSERT_EQ(m.equal(x, y), m.equal(y, x));
    ASSERT_TRUE(m.equal(x, Vector(x + shift)));
    ASSERT_EQ(m.equal(Vector(x + shift), y), m.equal(x, y));
    const Vector z = Vector(y + shift);
    if (m.equal(x, y)) {
      ASSERT_TRUE(m.equal(x, z));
    }
    ASSERT_EQ(m.normalize(x) == m.normalize(y), m.equal(x, y));
  }
}

TEST(Cardinality, Examples) {
  EXPECT_EQ(z_module(1, {{2}, {3}}).cardinality(), Cardinality::zero());
  EXPECT_EQ(z_module(2, {{2, 0}, {0, 4}}).cardinality(), Cardinality::finite(8));
  EXPECT_EQ(z_module(1).cardinality(), Cardinality::infinite());
}

TEST(Cardinality, QuotientMatchesCosetCount) {
  gen::Rng rng(106);
  for (int n = 0; n < 60; ++n) {
    const std::vector<Integer> orders = gen::orders(rng, rng.uniform(1, 3), {2, 3, 4, 6});
    const FgModule m = FgModule::cyclic_sum(Scalars::integers(), orders);
    const Submodule s(m, gen::matrix(rng, rng.uniform(0, 2), m.ngens(), 5));
    const FgModule q = s.quotient();
    std::set<Element, bool (*)(const Element&, const Element&)> cosets([](const Element& a, const Element& b) {
      return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
    });
    for (const Element& x : m.elements(1000)) cosets.insert(q.normalize(x));
    ASSERT_EQ(q.cardinality(), Cardinality::finite(static_cast<long long>(cosets.size())));
  }
}

TEST(Submodule, Examples) {
  const FgModule z = z_module(1);
  const Submodule two(z, make_matrix({{2}}));
  EXPECT_TRUE(two.contains(make_vector({4})));
  EXPECT_FALSE(two.contains(make_vector({3})));
  EXPECT_EQ(two.quotient().cardinality(), Cardinality::finite(2));
  const FgModule z2 = z_module(2);
  const CanonicalForm& c = Submodule(z2, make_matrix({{1, 1}})).quotient().canonical();
  EXPECT_EQ(c.free_rank, 1);
  EXPECT_TRUE(c.invariant_factors.empty());
  EXPECT_EQ(Submodule(z2, Matrix(0, 2)).quotient().canonical().free_rank, 2);
}

TEST(EndModule, Examples) {
  const EndoSubmodule z = end_module(z_module(1));
  EXPECT_EQ(z.module().canonical().free_rank, 1);
  EXPECT_TRUE(z.contains(identity(1)));
  const EndoSubmodule z2 = end_module(z_module(2));
  EXPECT_EQ(z2.module().canonical().free_rank, 4);
}

TEST(EndModule, CountsMatchBruteForce) {
  // Additive maps of a cyclic sum: images of generators killed by their orders.
  for (const std::vector<Integer>& orders : std::vector<std::vector<Integer>>{{2, 4}, {2, 2, 2}, {3, 9}, {4, 6}, {6}}) {
    const FgModule n = FgModule::cyclic_sum(Scalars::integers(), orders);
    const std::vector<Element> els = n.elements(1024);
    Integer count = 1;
    for (const Integer& d : orders) {
      Integer ok = 0;
      for (const Element& e : els)
        if (n.is_zero(Vector(d * e))) ++ok;
      count *= ok;
    }
    EXPECT_EQ(end_module(n).cardinality(), Cardinality::finite(count));
  }
}
