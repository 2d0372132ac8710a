#include "cf/fixtures.hpp"

namespace cf {

AlgebraPresentation commutative_ring(const Scalars& s, const std::vector<Integer>& orders,
                                     const std::vector<std::vector<std::vector<long long>>>& products,
                                     const std::vector<long long>& one) {
  AlgebraPresentation a;
  a.module = FgModule::cyclic_sum(s, orders);
  for (const auto& row : products) {
    std::vector<Element> r;
    for (const auto& e : row) r.push_back(make_vector(e));
    a.mult.push_back(std::move(r));
  }
  a.flags.associative = true;
  a.flags.commutative = true;
  a.flags.identity = make_vector(one);
  return a;
}

AlgebraPresentation integer_ring() { return commutative_ring(Scalars::integers(), {0}, {{{1}}}, {1}); }

AlgebraPresentation cyclic_ring(long long n) { return commutative_ring(Scalars::integers(), {n}, {{{1}}}, {1}); }

AlgebraPresentation prime_field(long long p) { return commutative_ring(Scalars::modular(p), {0}, {{{1}}}, {1}); }

AlgebraPresentation gaussian_integers() {
  return commutative_ring(Scalars::integers(), {0, 0}, {{{1, 0}, {0, 1}}, {{0, 1}, {-1, 0}}}, {1, 0});
}

AlgebraPresentation root_two_integers() {
  return commutative_ring(Scalars::integers(), {0, 0}, {{{1, 0}, {0, 1}}, {{0, 1}, {2, 0}}}, {1, 0});
}

AlgebraPresentation f2_product() {
  return commutative_ring(Scalars::modular(2), {0, 0}, {{{1, 0}, {0, 0}}, {{0, 0}, {0, 1}}}, {1, 1});
}

AlgebraPresentation f4() {
  return commutative_ring(Scalars::modular(2), {0, 0}, {{{1, 0}, {0, 1}}, {{0, 1}, {1, 1}}}, {1, 0});
}

AlgebraPresentation f2_truncated_polynomial(int k) {
  std::vector<std::vector<std::vector<long long>>> p(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      std::vector<long long> e(static_cast<std::size_t>(k), 0);
      if (i + j < k) e[static_cast<std::size_t>(i + j)] = 1;
      p[static_cast<std::size_t>(i)].push_back(e);
    }
  std::vector<long long> one(static_cast<std::size_t>(k), 0);
  one[0] = 1;
  AlgebraPresentation a = commutative_ring(Scalars::modular(2), std::vector<Integer>(static_cast<std::size_t>(k), 0), p, one);
  for (int i = 0; i < k; ++i) a.labels.push_back(i == 0 ? "1" : i == 1 ? "t" : "t^" + std::to_string(i));
  return a;
}

AlgebraPresentation component_ring(Index n) {
  std::vector<std::vector<std::vector<long long>>> p(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      std::vector<long long> e(static_cast<std::size_t>(n), 0);
      if (i == j) e[static_cast<std::size_t>(i)] = 1;
      p[static_cast<std::size_t>(i)].push_back(e);
    }
  return commutative_ring(Scalars::integers(), std::vector<Integer>(static_cast<std::size_t>(n), 0), p,
                          std::vector<long long>(static_cast<std::size_t>(n), 1));
}

AlgebraPresentation z_plus_z2() {
  AlgebraPresentation a;
  a.module = FgModule::cyclic_sum(Scalars::integers(), {0, 2});
  a.mult = {{make_vector({0, 1}), make_vector({0, 0})}, {make_vector({0, 0}), make_vector({0, 0})}};
  a.flags.associative = true;
  a.flags.commutative = true;
  return a;
}

namespace {

AlgebraPresentation matrix_units_f2(bool upper_only) {
  // Basis E11, E12, E21, E22 or, upper triangular, E11, E12, E22.
  std::vector<std::pair<int, int>> units{{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  if (upper_only) units.erase(units.begin() + 2);
  const Index n = static_cast<Index>(units.size());
  AlgebraPresentation a;
  a.module = FgModule::free(Scalars::modular(2), n);
  a.mult.assign(units.size(), std::vector<Element>(units.size(), a.module.zero()));
  Element one = a.module.zero();
  for (std::size_t i = 0; i < units.size(); ++i) {
    if (units[i].first == units[i].second) one(static_cast<Index>(i)) = 1;
    a.labels.push_back("E" + std::to_string(units[i].first + 1) + std::to_string(units[i].second + 1));
    for (std::size_t j = 0; j < units.size(); ++j) {
      if (units[i].second != units[j].first) continue;
      for (std::size_t k = 0; k < units.size(); ++k)
        if (units[k].first == units[i].first && units[k].second == units[j].second)
          a.mult[i][j] = a.module.generator(static_cast<Index>(k));
    }
  }
  a.flags.associative = true;
  a.flags.identity = one;
  return a;
}

}  // namespace

AlgebraPresentation matrix_ring_f2() { return matrix_units_f2(false); }

AlgebraPresentation upper_triangular_f2() { return matrix_units_f2(true); }

AlgebraPresentation gaussian_mod(long long n) {
  return commutative_ring(Scalars::integers(), {n, n}, {{{1, 0}, {0, 1}}, {{0, 1}, {n - 1, 0}}}, {1, 0});
}

AlgebraPresentation cyclic_square(long long n) {
  return commutative_ring(Scalars::integers(), {n, n}, {{{1, 0}, {0, 0}}, {{0, 0}, {0, 1}}}, {1, 1});
}

BilinearTensor multiplication(const AlgebraPresentation& a) { return a.as_bilinear(); }

}  // namespace cf
