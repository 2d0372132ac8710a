#include <gtest/gtest.h>

#include "cf/bilinear.hpp"
#include "cf/fixtures.hpp"
#include "cf/scalar_ring.hpp"
#include "cf/selftest.hpp"

using namespace cf;

namespace {

BilinearTensor first_coordinate_product() {
  FgModule z2 = FgModule::free(Scalars::integers(), 2);
  FgModule z = FgModule::free(Scalars::integers(), 1);
  BilinearTensor f = BilinearTensor::zero(z2, z2, z);
  f.tensor[0][0] = make_vector({1});
  return f;
}

BilinearTensor scaled_product(long long c) {
  FgModule z = FgModule::free(Scalars::integers(), 1);
  return {z, z, z, {{make_vector({c})}}};
}

// M_2(Z) on the matrix units E11, E12, E21, E22.
AlgebraPresentation integer_matrix_ring() {
  AlgebraPresentation a;
  a.module = FgModule::free(Scalars::integers(), 4);
  a.mult.assign(4, std::vector<Element>(4, a.module.zero()));
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 2; ++j)
      for (Index l = 0; l < 2; ++l) a.mult[static_cast<std::size_t>(2 * i + j)][static_cast<std::size_t>(2 * j + l)] = unit_vector(4, 2 * i + l);
  a.flags.associative = true;
  a.flags.identity = make_vector({1, 0, 0, 1});
  return a;
}

}  // namespace

TEST(Bilinear, Validate) {
  EXPECT_TRUE(validate(multiplication(integer_ring())).empty());
  FgModule z2 = FgModule::cyclic_sum(Scalars::integers(), {2});
  FgModule z = FgModule::free(Scalars::integers(), 1);
  EXPECT_FALSE(validate({z2, z2, z, {{make_vector({1})}}}).empty());
  EXPECT_TRUE(validate(BilinearTensor::zero(z2, z2, z)).empty());
}

TEST(Bilinear, Annihilators) {
  Annihilators a = annihilators(first_coordinate_product());
  EXPECT_TRUE(a.left.contains(make_vector({0, 1})));
  EXPECT_FALSE(a.left.contains(make_vector({1, 0})));
  EXPECT_FALSE(is_nondegenerate(first_coordinate_product()));
  EXPECT_TRUE(is_full(multiplication(integer_ring())));
  EXPECT_TRUE(is_nondegenerate(multiplication(integer_ring())));
  EXPECT_FALSE(is_full(scaled_product(2)));
}

TEST(Bilinear, Reduce) {
  ReducedMap r = reduce(first_coordinate_product());
  EXPECT_EQ(r.A1.cardinality(), Cardinality::infinite());
  EXPECT_TRUE(is_full(r.f1));
  EXPECT_TRUE(is_nondegenerate(r.f1));
  EXPECT_TRUE(is_full(r.f2));
  EXPECT_TRUE(is_nondegenerate(r.f2));
  ReducedMap z = reduce(BilinearTensor::zero(FgModule::free(Scalars::integers(), 2), FgModule::free(Scalars::integers(), 1),
                                             FgModule::free(Scalars::integers(), 1)));
  EXPECT_TRUE(z.A1.is_trivial());
  EXPECT_TRUE(z.B1.is_trivial());
  EXPECT_TRUE(z.C1.is_trivial());
}

TEST(Scalars, SymExamples) {
  EXPECT_EQ(sym(multiplication(integer_ring())).cardinality(), Cardinality::infinite());
  EXPECT_EQ(sym(multiplication(f2_product())).cardinality(), Cardinality::finite(4));
}

TEST(Scalars, ZSymOfRings) {
  EXPECT_EQ(z_sym(multiplication(cyclic_ring(4))).cardinality(), Cardinality::finite(4));
  EXPECT_EQ(z_sym(multiplication(f2_product())).cardinality(), Cardinality::finite(4));
  EXPECT_EQ(z_sym(multiplication(f4())).cardinality(), Cardinality::finite(4));
  ScalarRing g = z_sym(multiplication(gaussian_integers()));
  EXPECT_EQ(g.module().canonical().free_rank, 2);
  EXPECT_TRUE(check_ring(g).empty());
}

TEST(Scalars, Pipeline) {
  ScalarRing c3 = scalar_ring_of(multiplication(component_ring(3)));
  EXPECT_EQ(c3.module().canonical().free_rank, 3);
  EXPECT_TRUE(c3.module().canonical().invariant_factors.empty());
  ScalarRing two = scalar_ring_of(scaled_product(2));
  EXPECT_EQ(two.module().canonical().free_rank, 1);
  FgModule z = FgModule::free(Scalars::integers(), 1);
  EXPECT_TRUE(scalar_ring_of(BilinearTensor::zero(z, z, z)).cardinality().kind == Cardinality::Kind::Zero);
}

TEST(Scalars, LargestRing) {
  BilinearTensor f = multiplication(cyclic_ring(6));
  ScalarRing c = z_sym(f);
  ScalarRing r = largest_ring(f, c);
  EXPECT_TRUE(c.span.contains(r.span));
  EXPECT_TRUE(r.span.contains(c.span));
}

TEST(Scalars, Trichotomy) {
  TrichotomyReport z = classify_trichotomy(multiplication(integer_ring()));
  EXPECT_TRUE(z.consistent);
  EXPECT_EQ(z.scalar_ring.kind, Cardinality::Kind::Infinite);
  TrichotomyReport four = classify_trichotomy(multiplication(cyclic_ring(4)));
  EXPECT_TRUE(four.consistent);
  EXPECT_EQ(four.c1.kind, Cardinality::Kind::Finite);
  FgModule m = FgModule::free(Scalars::integers(), 1);
  TrichotomyReport zero = classify_trichotomy(BilinearTensor::zero(m, m, m));
  EXPECT_TRUE(zero.consistent);
  EXPECT_EQ(zero.a1xb1.kind, Cardinality::Kind::Zero);
}

TEST(Scalars, IntegerMatrixRing) {
  const BilinearTensor f = multiplication(integer_matrix_ring());
  const EndoSubmodule s = sym(f);
  EXPECT_EQ(s.module().canonical().free_rank, 1);
  EXPECT_TRUE(s.module().canonical().invariant_factors.empty());
  EXPECT_TRUE(s.contains(identity(4)));
  const ScalarRing z = z_sym(f, s);
  EXPECT_EQ(z.module().canonical().free_rank, 1);
  EXPECT_TRUE(check_ring(z).empty());
}

TEST(Bilinear, SymmetrizedIntegerProduct) {
  const BilinearTensor f2 = symmetrize(multiplication(integer_ring()));
  // f2((a, b), (a', b')) = (a b', a' b)
  const Element v = f2.apply(make_vector({2, 3}), make_vector({5, 7}));
  EXPECT_EQ(v, make_vector({14, 15}));
}

TEST(Scalars, CentralityByFormMatchesCommutators) {
  const selftest::Fixtures fx = selftest::default_fixtures();
  std::vector<BilinearTensor> maps;
  for (const auto& r : fx.census) maps.push_back(multiplication(r.algebra));
  for (const auto& r : fx.infinite) maps.push_back(multiplication(r.algebra));
  for (const auto& m : fx.forms) maps.push_back(m.map);
  for (const BilinearTensor& f : maps) {
    const ReducedMap r = reduce(f);
    const BilinearTensor& g = r.square_map();
    const EndoSubmodule s = sym(g);
    const ScalarRing z = z_sym(g, s);
    const EndoSubmodule by_form = z_sym_by_form(g, s);
    ASSERT_TRUE(by_form.contains(z.span));
    ASSERT_TRUE(z.span.contains(by_form));
  }
}
