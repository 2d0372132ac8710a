#include "cf/random.hpp"

namespace cf::gen {

namespace {

FgModule rebased(const FgModule& m, const Unimodular& p) {
  return FgModule(m.scalars(), m.ngens(), Matrix(m.relations() * p.inverse));
}

}  // namespace

BilinearTensor cyclic_tensor(Rng& rng, const std::vector<Integer>& a, const std::vector<Integer>& b,
                             const std::vector<Integer>& c, long long bound, bool shared_domain) {
  const Scalars z = Scalars::integers();
  BilinearTensor f;
  f.A = FgModule::cyclic_sum(z, a);
  f.B = shared_domain ? f.A : FgModule::cyclic_sum(z, b);
  f.C = FgModule::cyclic_sum(z, c);
  const std::vector<Integer>& bo = shared_domain ? a : b;
  f.tensor.assign(a.size(), std::vector<Element>(bo.size(), f.C.zero()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < bo.size(); ++j) {
      const Integer g = gcd_value(a[i], bo[j]);
      Element& v = f.tensor[i][j];
      for (std::size_t k = 0; k < c.size(); ++k) {
        Integer step = 1;
        if (g != 0) step = c[k] == 0 ? Integer(0) : Integer(c[k] / gcd_value(g, c[k]));
        v(static_cast<Index>(k)) = step * rng.uniform(-bound, bound);
      }
    }
  return f;
}

BilinearTensor change_generators(const BilinearTensor& f, const Unimodular& p, const Unimodular& q, const Unimodular& s) {
  const bool shared = f.A.same_object(f.B);
  BilinearTensor g;
  g.A = rebased(f.A, p);
  g.B = shared ? g.A : rebased(f.B, q);
  g.C = rebased(f.C, s);
  const Matrix& qu = shared ? p.u : q.u;
  const Index na = f.A.ngens(), nb = f.B.ngens();
  g.tensor.assign(static_cast<std::size_t>(na), std::vector<Element>(static_cast<std::size_t>(nb), g.C.zero()));
  const Matrix to_new = s.inverse.transpose();
  for (Index i = 0; i < na; ++i)
    for (Index j = 0; j < nb; ++j) {
      Element v = f.C.zero();
      for (Index k = 0; k < na; ++k) {
        if (p.u(i, k) == 0) continue;
        for (Index l = 0; l < nb; ++l)
          if (qu(j, l) != 0) v += p.u(i, k) * qu(j, l) * f.at(k, l);
      }
      g.tensor[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = to_new * v;
    }
  return g;
}

Term term(Rng& rng, const TermShape& shape, int depth) {
  if (depth <= 0 || rng.coin(0.3)) {
    const long long r = rng.uniform(0, 9);
    if (r < 6 && !shape.variables.empty()) return Term::var(rng.pick(shape.variables));
    if (r < 9 && !shape.constants.empty()) return Term::constant(rng.pick(shape.constants), shape.sort);
    return Term::zero(shape.sort);
  }
  const long long op = rng.uniform(0, shape.products ? 5 : 3);
  switch (op) {
    case 0:
    case 1: return Term::add(term(rng, shape, depth - 1), term(rng, shape, depth - 1));
    case 2: return Term::neg(term(rng, shape, depth - 1));
    case 3: return Term::smul(rng.uniform(-shape.scalar_bound, shape.scalar_bound), term(rng, shape, depth - 1));
    default: return Term::mul(term(rng, shape, depth - 1), term(rng, shape, depth - 1));
  }
}

EqSystem system(Rng& rng, const TermShape& shape, int equations) {
  EqSystem s;
  for (const std::string& v : shape.variables) s.add_variable(v, shape.sort);
  for (int e = 0; e < equations; ++e) s.add_equation(term(rng, shape, shape.depth), term(rng, shape, shape.depth));
  return s;
}

}  // namespace cf::gen
