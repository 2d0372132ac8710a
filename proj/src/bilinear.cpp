#include "cf/bilinear.hpp"

#include "cf/error.hpp"

namespace cf {

BilinearTensor BilinearTensor::zero(const FgModule& a, const FgModule& b, const FgModule& c) {
  BilinearTensor f{a, b, c, {}};
  f.tensor.assign(static_cast<std::size_t>(a.ngens()), std::vector<Element>(static_cast<std::size_t>(b.ngens()), c.zero()));
  return f;
}

Element BilinearTensor::apply(const Element& x, const Element& y) const {
  Element z = C.zero();
  for (Index i = 0; i < A.ngens(); ++i) {
    if (x(i) == 0) continue;
    for (Index j = 0; j < B.ngens(); ++j)
      if (y(j) != 0) z += (x(i) * y(j)) * at(i, j);
  }
  return z;
}

std::string Violation::str() const {
  return "relator " + std::to_string(relator) + " of " + side + " against generator " + std::to_string(generator);
}

namespace {

void check_shape(const BilinearTensor& f) {
  if (f.A.scalars() != f.B.scalars() || f.A.scalars() != f.C.scalars())
    throw ValidationError("scalar mismatch", "A, B and C must share scalars");
  if (static_cast<Index>(f.tensor.size()) != f.A.ngens())
    throw ValidationError("dimension mismatch", "tensor must have one row per generator of A");
  for (const auto& row : f.tensor) {
    if (static_cast<Index>(row.size()) != f.B.ngens())
      throw ValidationError("dimension mismatch", "tensor rows must have one entry per generator of B");
    for (const Element& e : row)
      if (e.size() != f.C.ngens())
        throw ValidationError("dimension mismatch", "tensor entries must be elements of C");
  }
}

// Rows indexed by x coordinates, columns by (partner generator, canonical coordinate of C).
Matrix annihilator_system(const BilinearTensor& f, bool left, std::vector<Integer>& moduli) {
  const CanonicalForm& c = f.C.canonical();
  const Index q = c.size();
  const Index n = left ? f.A.ngens() : f.B.ngens();
  const Index partners = left ? f.B.ngens() : f.A.ngens();
  Matrix a = Matrix::Zero(n, partners * q);
  moduli.clear();
  const std::vector<Integer> mod = c.moduli();
  for (Index p = 0; p < partners; ++p) {
    moduli.insert(moduli.end(), mod.begin(), mod.end());
    for (Index i = 0; i < n; ++i) {
      const Element& v = left ? f.at(i, p) : f.at(p, i);
      Vector y = c.to_canonical.transpose() * v;
      a.block(i, p * q, 1, q) = y.transpose();
    }
  }
  return a;
}

Submodule kernel_submodule(const FgModule& ambient, const Matrix& rows) {
  std::vector<Index> keep;
  for (Index i = 0; i < rows.rows(); ++i)
    if (!ambient.is_zero(Vector(rows.row(i).transpose()))) keep.push_back(i);
  Matrix g(static_cast<Index>(keep.size()), ambient.ngens());
  for (std::size_t r = 0; r < keep.size(); ++r) g.row(static_cast<Index>(r)) = rows.row(keep[r]);
  return Submodule(ambient, g);
}

}  // namespace

std::vector<Violation> validate(const BilinearTensor& f) {
  check_shape(f);
  std::vector<Violation> out;
  const Matrix& ra = f.A.relations();
  for (Index r = 0; r < ra.rows(); ++r)
    for (Index j = 0; j < f.B.ngens(); ++j) {
      Element z = f.C.zero();
      for (Index i = 0; i < f.A.ngens(); ++i)
        if (ra(r, i) != 0) z += ra(r, i) * f.at(i, j);
      if (!f.C.is_zero(z)) out.push_back({"A", r, j});
    }
  const Matrix& rb = f.B.relations();
  for (Index r = 0; r < rb.rows(); ++r)
    for (Index i = 0; i < f.A.ngens(); ++i) {
      Element z = f.C.zero();
      for (Index j = 0; j < f.B.ngens(); ++j)
        if (rb(r, j) != 0) z += rb(r, j) * f.at(i, j);
      if (!f.C.is_zero(z)) out.push_back({"B", r, i});
    }
  return out;
}

void require_valid(const BilinearTensor& f) {
  std::vector<Violation> v = validate(f);
  if (!v.empty()) throw ValidationError("ill-defined tensor", v.front().str() + " is not killed in C");
}

Annihilators annihilators(const BilinearTensor& f) {
  std::vector<Integer> moduli;
  Matrix al = annihilator_system(f, true, moduli);
  Submodule left = kernel_submodule(f.A, congruence_kernel(al, moduli));
  Matrix ar = annihilator_system(f, false, moduli);
  Submodule right = kernel_submodule(f.B, congruence_kernel(ar, moduli));
  return {left, right};
}

Submodule image_span(const BilinearTensor& f) {
  Matrix g(f.A.ngens() * f.B.ngens(), f.C.ngens());
  for (Index i = 0; i < f.A.ngens(); ++i)
    for (Index j = 0; j < f.B.ngens(); ++j) g.row(i * f.B.ngens() + j) = f.at(i, j).transpose();
  return Submodule(f.C, g).pruned();
}

bool is_full(const BilinearTensor& f) { return image_span(f).quotient().is_trivial(); }

bool is_nondegenerate(const BilinearTensor& f) {
  Annihilators a = annihilators(f);
  return a.left.is_zero() && a.right.is_zero();
}

BilinearTensor symmetrize(const BilinearTensor& f1) {
  const FgModule n = direct_sum({f1.A, f1.B});
  const FgModule c = direct_sum({f1.C, f1.C});
  BilinearTensor f2 = BilinearTensor::zero(n, n, c);
  const Index na = f1.A.ngens(), nb = f1.B.ngens(), nc = f1.C.ngens();
  for (Index i = 0; i < na; ++i)
    for (Index j = 0; j < nb; ++j) {
      Element v = Vector::Zero(2 * nc);
      v.head(nc) = f1.at(i, j);
      f2.tensor[static_cast<std::size_t>(i)][static_cast<std::size_t>(na + j)] = v;
      Element w = Vector::Zero(2 * nc);
      w.tail(nc) = f1.at(i, j);
      f2.tensor[static_cast<std::size_t>(na + j)][static_cast<std::size_t>(i)] = w;
    }
  return f2;
}

ReducedMap reduce(const BilinearTensor& f) {
  require_valid(f);
  ReducedMap r;
  r.original = f;
  Annihilators ann = annihilators(f);
  r.ann_l = ann.left;
  r.ann_r = ann.right;
  r.A1 = r.ann_l.quotient();
  r.shared_domain = f.A.same_object(f.B) && r.ann_l == Submodule(f.A, r.ann_r.generators());
  r.B1 = r.shared_domain ? r.A1 : r.ann_r.quotient();
  r.image = image_span(f);
  r.C1 = r.image.as_module();
  const Index s = r.image.size();
  BilinearTensor f1 = BilinearTensor::zero(r.A1, r.B1, r.C1);
  for (Index i = 0; i < f.A.ngens(); ++i)
    for (Index j = 0; j < f.B.ngens(); ++j) {
      const Element& v = f.at(i, j);
      if (f.C.is_zero(v)) continue;
      for (Index k = 0; k < s; ++k)
        if (f.C.equal(v, Vector(r.image.generators().row(k).transpose()))) {
          f1.tensor[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = unit_vector(s, k);
          break;
        }
    }
  r.f1 = f1;
  r.f2 = symmetrize(f1);
  return r;
}

}  // namespace cf
