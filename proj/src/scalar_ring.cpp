#include "cf/scalar_ring.hpp"

#include <functional>
#include <stdexcept>

#include "cf/error.hpp"

namespace cf {

Vector ScalarRing::multiply(const Vector& a, const Vector& b) const {
  Vector z = Vector::Zero(size());
  for (Index i = 0; i < size(); ++i) {
    if (a(i) == 0) continue;
    for (Index j = 0; j < size(); ++j)
      if (b(j) != 0) z += (a(i) * b(j)) * structure_constants[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return z;
}

namespace {

using Residual = std::function<std::vector<Element>(const Matrix&)>;

// Nonzero members of the span of gens cut out by the linear conditions residual(alpha) = 0 in target.
std::vector<Matrix> solve_endo_conditions(const FgModule& n, const std::vector<Matrix>& gens, const FgModule& target,
                                          const Residual& residual) {
  const CanonicalForm& c = target.canonical();
  const Index q = c.size();
  const std::vector<Integer> mod = c.moduli();
  const Index k = static_cast<Index>(gens.size());
  std::vector<std::vector<Element>> values;
  for (const Matrix& g : gens) values.push_back(residual(g));
  const Index p = values.empty() ? 0 : static_cast<Index>(values.front().size());
  Matrix a = Matrix::Zero(k, p * q);
  std::vector<Integer> moduli;
  for (Index s = 0; s < p; ++s) moduli.insert(moduli.end(), mod.begin(), mod.end());
  for (Index r = 0; r < k; ++r)
    for (Index s = 0; s < p; ++s) {
      Vector y = c.to_canonical.transpose() * values[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)];
      a.block(r, s * q, 1, q) = y.transpose();
    }
  Matrix kernel = congruence_kernel(a, moduli);
  std::vector<Matrix> out;
  const Index m = n.ngens();
  for (Index r = 0; r < kernel.rows(); ++r) {
    Matrix x = Matrix::Zero(m, m);
    for (Index t = 0; t < k; ++t)
      if (kernel(r, t) != 0) x += kernel(r, t) * gens[static_cast<std::size_t>(t)];
    for (Index i = 0; i < m; ++i)
      for (Index j = 0; j < m; ++j) x(i, j) = n.scalars().reduce(x(i, j));
    if (!same_endomorphism(n, x, Matrix::Zero(m, m))) out.push_back(x);
  }
  return out;
}

Element image_of(const Matrix& endo, Index i) { return endo.row(i).transpose(); }

void require_square_full_nondegenerate(const BilinearTensor& f) {
  require_valid(f);
  if (!f.square()) throw ValidationError("precondition violation", "f must be defined on N x N");
  if (!is_full(f)) throw ValidationError("precondition violation", "f is not full");
  if (!is_nondegenerate(f)) throw ValidationError("precondition violation", "f is degenerate");
}

}  // namespace

EndoSubmodule sym(const BilinearTensor& f) {
  require_square_full_nondegenerate(f);
  const FgModule& n = f.A;
  const Index m = n.ngens();
  EndoSubmodule end = end_module(n);
  auto residual = [&](const Matrix& g) {
    std::vector<Element> out;
    for (Index i = 0; i < m; ++i)
      for (Index j = 0; j < m; ++j)
        out.push_back(f.apply(image_of(g, i), n.generator(j)) - f.apply(n.generator(i), image_of(g, j)));
    return out;
  };
  return EndoSubmodule(n, solve_endo_conditions(n, end.generators(), f.C, residual));
}

ScalarRing make_scalar_ring(const FgModule& n, std::vector<Matrix> generators) {
  ScalarRing r;
  r.ambient = n;
  r.span = EndoSubmodule(n, std::move(generators));
  const Index k = r.span.size();
  const std::vector<Matrix>& g = r.span.generators();
  r.structure_constants.assign(static_cast<std::size_t>(k), std::vector<Vector>(static_cast<std::size_t>(k)));
  for (Index i = 0; i < k; ++i)
    for (Index j = 0; j < k; ++j) {
      std::optional<Vector> c = r.span.coordinates_of(compose(g[static_cast<std::size_t>(i)], g[static_cast<std::size_t>(j)]));
      if (!c) throw std::logic_error("scalar ring is not closed under composition");
      r.structure_constants[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = *c;
    }
  std::optional<Vector> one = r.span.coordinates_of(identity(n.ngens()));
  if (!one) throw std::logic_error("scalar ring does not contain the identity");
  r.one = *one;
  return r;
}

ScalarRing z_sym(const BilinearTensor& f) { return z_sym(f, sym(f)); }

ScalarRing z_sym(const BilinearTensor& f, const EndoSubmodule& sym_f) {
  const FgModule& n = f.A;
  const Index m = n.ngens();
  const std::vector<Matrix>& beta = sym_f.generators();
  auto residual = [&](const Matrix& g) {
    std::vector<Element> out;
    for (const Matrix& b : beta) {
      Matrix d = compose(g, b) - compose(b, g);
      for (Index i = 0; i < m; ++i) out.push_back(image_of(d, i));
    }
    return out;
  };
  return make_scalar_ring(n, solve_endo_conditions(n, beta, n, residual));
}

EndoSubmodule z_sym_by_form(const BilinearTensor& f, const EndoSubmodule& sym_f) {
  const FgModule& n = f.A;
  const Index m = n.ngens();
  const std::vector<Matrix>& beta = sym_f.generators();
  auto residual = [&](const Matrix& g) {
    std::vector<Element> out;
    for (const Matrix& b : beta)
      for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < m; ++j)
          out.push_back(f.apply(image_of(g, i), image_of(b, j)) - f.apply(image_of(b, i), image_of(g, j)));
    return out;
  };
  return EndoSubmodule(n, solve_endo_conditions(n, beta, f.C, residual));
}

ScalarRing largest_ring(const BilinearTensor& f) { return largest_ring(f, z_sym(f)); }

ScalarRing largest_ring(const BilinearTensor& f, const ScalarRing& center) {
  const FgModule& n = f.A;
  const Index m = n.ngens();
  const CanonicalForm& c = f.C.canonical();
  const Index q = c.size();
  Matrix values(m * m, q);
  for (Index j = 0; j < m; ++j)
    for (Index k = 0; k < m; ++k) values.row(j * m + k) = (c.to_canonical.transpose() * f.at(j, k)).transpose();
  Matrix syzygies = congruence_kernel(values, c.moduli());
  auto residual = [&](const Matrix& g) {
    std::vector<Element> out;
    for (Index s = 0; s < syzygies.rows(); ++s) {
      Element z = f.C.zero();
      for (Index j = 0; j < m; ++j)
        for (Index k = 0; k < m; ++k)
          if (syzygies(s, j * m + k) != 0) z += syzygies(s, j * m + k) * f.apply(image_of(g, j), n.generator(k));
      out.push_back(z);
    }
    return out;
  };
  return make_scalar_ring(n, solve_endo_conditions(n, center.matrices(), f.C, residual));
}

ScalarRing scalar_ring_of(const BilinearTensor& f) {
  ReducedMap r = reduce(f);
  return z_sym(r.square_map());
}

TrichotomyReport classify_trichotomy(const BilinearTensor& f) {
  ReducedMap r = reduce(f);
  TrichotomyReport t;
  t.scalar_ring = z_sym(r.square_map()).cardinality();
  t.c1 = r.C1.cardinality();
  t.a1xb1 = direct_sum({r.A1, r.B1}).cardinality();
  t.consistent = t.scalar_ring.kind == t.c1.kind && t.c1.kind == t.a1xb1.kind;
  return t;
}

std::vector<std::string> check_ring(const ScalarRing& r) {
  std::vector<std::string> out;
  const Index k = r.size();
  const FgModule& mod = r.module();
  const FgModule& n = r.ambient;
  const std::vector<Matrix>& g = r.matrices();
  auto sc = [&](Index i, Index j) -> const Vector& {
    return r.structure_constants[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  };
  for (Index i = 0; i < k; ++i) {
    if (!mod.equal(r.multiply(r.one, unit_vector(k, i)), unit_vector(k, i)))
      out.push_back("identity law fails on generator " + std::to_string(i));
    for (Index j = 0; j < k; ++j) {
      if (!mod.equal(sc(i, j), sc(j, i)))
        out.push_back("generators " + std::to_string(i) + " and " + std::to_string(j) + " do not commute");
      if (!same_endomorphism(n, r.matrix_of(sc(i, j)), compose(g[static_cast<std::size_t>(i)], g[static_cast<std::size_t>(j)])))
        out.push_back("product of generators " + std::to_string(i) + " and " + std::to_string(j) + " does not match its expansion");
      for (Index l = 0; l < k; ++l) {
        Vector left = r.multiply(sc(i, j), unit_vector(k, l));
        Vector right = r.multiply(unit_vector(k, i), sc(j, l));
        if (!mod.equal(left, right))
          out.push_back("associativity fails on generators " + std::to_string(i) + ", " + std::to_string(j) + ", " + std::to_string(l));
      }
    }
  }
  return out;
}

}  // namespace cf
