#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cf/bilinear.hpp"
#include "cf/integer.hpp"
#include "cf/module.hpp"
#include "cf/term.hpp"

// Seeded generators for property tests.
namespace cf::gen {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  long long uniform(long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(engine_); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform(0, static_cast<long long>(n) - 1)); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(engine_); }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[index(v.size())];
  }

 private:
  std::mt19937_64 engine_;
};

inline Matrix matrix(Rng& rng, Index rows, Index cols, long long bound) {
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = rng.uniform(-bound, bound);
  return m;
}

struct Unimodular {
  Matrix u, inverse;
};

// Product of random elementary row operations, with its inverse.
inline Unimodular unimodular(Rng& rng, Index n, int steps = 6, long long bound = 2) {
  Unimodular out{identity(n), identity(n)};
  if (n < 2) {
    if (rng.coin()) out = {Matrix(-out.u), Matrix(-out.inverse)};
    return out;
  }
  for (int s = 0; s < steps; ++s) {
    const Index i = static_cast<Index>(rng.index(static_cast<std::size_t>(n)));
    Index j = static_cast<Index>(rng.index(static_cast<std::size_t>(n - 1)));
    if (j >= i) ++j;
    const Integer q = rng.uniform(-bound, bound);
    out.u.row(i) += q * out.u.row(j);
    out.inverse.col(j) -= q * out.inverse.col(i);
    if (rng.coin(0.2)) {
      out.u.row(i).swap(out.u.row(j));
      out.inverse.col(i).swap(out.inverse.col(j));
    }
  }
  return out;
}

// Cyclic orders drawn from a list; 0 gives a free summand.
inline std::vector<Integer> orders(Rng& rng, Index rank, const std::vector<long long>& pool) {
  std::vector<Integer> out;
  for (Index i = 0; i < rank; ++i) out.emplace_back(rng.pick(pool));
  return out;
}

// Valid tensor on cyclic sums: f(a_i, b_j) killed by gcd of the two orders.
BilinearTensor cyclic_tensor(Rng& rng, const std::vector<Integer>& a, const std::vector<Integer>& b,
                             const std::vector<Integer>& c, long long bound, bool shared_domain);
// Same map after changing the generators of A, B and C by unimodular matrices.
// Rows of p, q, s give the new generators in terms of the old ones.
BilinearTensor change_generators(const BilinearTensor& f, const Unimodular& p, const Unimodular& q, const Unimodular& s);

struct TermShape {
  std::string sort;
  std::vector<std::string> variables;
  std::vector<Element> constants;
  bool products = true;
  int depth = 2;
  long long scalar_bound = 3;
};

Term term(Rng& rng, const TermShape& shape, int depth);
// Variables of one sort and random equations between random terms.
EqSystem system(Rng& rng, const TermShape& shape, int equations);

}  // namespace cf::gen
