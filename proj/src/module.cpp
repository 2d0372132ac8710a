#include "cf/module.hpp"

#include <mutex>

#include "cf/error.hpp"
#include "cf/normal_form.hpp"

namespace cf {

std::string Cardinality::kind_name() const {
  switch (kind) {
    case Kind::Zero: return "zero";
    case Kind::Finite: return "finite";
    case Kind::Infinite: return "infinite";
  }
  return "";
}

std::string Cardinality::str() const {
  if (kind == Kind::Finite) return "finite(" + count.str() + ")";
  return kind_name();
}

std::vector<Integer> CanonicalForm::moduli() const {
  std::vector<Integer> m = invariant_factors;
  m.resize(static_cast<std::size_t>(size()), Integer(0));
  return m;
}

struct FgModule::Data {
  Scalars scalars;
  Index ngens = 0;
  Matrix relations;
  mutable std::once_flag canonical_once, lattice_once;
  mutable CanonicalForm canonical;
  mutable Lattice lattice;
};

FgModule::FgModule() : FgModule(Scalars::integers(), 0, Matrix(0, 0)) {}

FgModule::FgModule(const Scalars& scalars, Index ngens, const Matrix& relations) {
  if (ngens < 0) throw ValidationError("invalid presentation", "negative generator count");
  if (relations.rows() > 0 && relations.cols() != ngens)
    throw ValidationError("invalid presentation", "relation rows must have " + std::to_string(ngens) + " entries");
  auto d = std::make_shared<Data>();
  d->scalars = scalars;
  d->ngens = ngens;
  d->relations = relations.rows() > 0 ? relations : Matrix(0, ngens);
  data_ = std::move(d);
}

FgModule FgModule::free(const Scalars& scalars, Index ngens) { return FgModule(scalars, ngens, Matrix(0, ngens)); }

FgModule FgModule::cyclic_sum(const Scalars& scalars, const std::vector<Integer>& orders) {
  const Index n = static_cast<Index>(orders.size());
  std::vector<Index> rows;
  for (Index i = 0; i < n; ++i)
    if (orders[static_cast<std::size_t>(i)] != 0) rows.push_back(i);
  Matrix rel = Matrix::Zero(static_cast<Index>(rows.size()), n);
  for (std::size_t r = 0; r < rows.size(); ++r) rel(static_cast<Index>(r), rows[r]) = orders[static_cast<std::size_t>(rows[r])];
  return FgModule(scalars, n, rel);
}

const Scalars& FgModule::scalars() const { return data_->scalars; }
Index FgModule::ngens() const { return data_->ngens; }
const Matrix& FgModule::relations() const { return data_->relations; }

Matrix FgModule::effective_relations() const {
  if (!scalars().is_modular()) return relations();
  return stack_rows(relations(), Matrix(scalars().modulus() * identity(ngens())));
}

const CanonicalForm& FgModule::canonical() const {
  std::call_once(data_->canonical_once, [this] {
    CanonicalForm& c = data_->canonical;
    const Index m = ngens();
    const Matrix r = effective_relations();
    Matrix v = identity(m), v_inv = identity(m);
    std::vector<Integer> diag;
    if (r.rows() > 0 && m > 0) {
      SmithForm<Integer> s = smith_normal_form(r);
      v = s.V;
      v_inv = s.V_inverse;
      diag = s.diagonal;
    }
    std::vector<Index> cols;
    for (std::size_t i = 0; i < diag.size(); ++i)
      if (diag[i] != 1) {
        cols.push_back(static_cast<Index>(i));
        c.invariant_factors.push_back(diag[i]);
      }
    for (Index i = static_cast<Index>(diag.size()); i < m; ++i) cols.push_back(i);
    c.free_rank = m - static_cast<Index>(diag.size());
    c.to_canonical = Matrix(m, static_cast<Index>(cols.size()));
    c.from_canonical = Matrix(static_cast<Index>(cols.size()), m);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      c.to_canonical.col(static_cast<Index>(k)) = v.col(cols[k]);
      c.from_canonical.row(static_cast<Index>(k)) = v_inv.row(cols[k]);
    }
  });
  return data_->canonical;
}

const Lattice& FgModule::relation_lattice() const {
  std::call_once(data_->lattice_once,
                 [this] { data_->lattice = Lattice::from_generators(effective_relations(), ngens()); });
  return data_->lattice;
}

Cardinality FgModule::cardinality() const {
  const CanonicalForm& c = canonical();
  if (c.free_rank > 0) return Cardinality::infinite();
  Integer n = 1;
  for (const Integer& d : c.invariant_factors) n *= d;
  return Cardinality::finite(n);
}

Vector FgModule::canonical_coordinates(const Element& x) const {
  const CanonicalForm& c = canonical();
  Vector y = c.to_canonical.transpose() * x;
  for (std::size_t i = 0; i < c.invariant_factors.size(); ++i)
    y(static_cast<Index>(i)) = mod_floor(y(static_cast<Index>(i)), c.invariant_factors[i]);
  return y;
}

Element FgModule::normalize(const Element& x) const { return relation_lattice().reduce(x); }

bool FgModule::is_zero(const Element& x) const { return relation_lattice().contains(x); }

std::vector<Element> FgModule::elements(const Integer& cap) const {
  const Cardinality card = cardinality();
  if (!card.is_finite()) throw Refusal("infinite carrier", "cannot enumerate an infinite module");
  if (card.count > cap)
    throw Refusal("cap exceeded", "module has " + card.count.str() + " elements, cap is " + cap.str(), card.count);
  const Lattice& l = relation_lattice();
  const Index m = ngens();
  std::vector<Integer> box(static_cast<std::size_t>(m));
  for (Index i = 0; i < l.rank(); ++i) box[static_cast<std::size_t>(l.pivots()[static_cast<std::size_t>(i)])] = l.basis()(i, l.pivots()[static_cast<std::size_t>(i)]);
  std::vector<Element> out;
  out.reserve(static_cast<std::size_t>(card.count));
  Vector x = Vector::Zero(m);
  for (;;) {
    out.push_back(x);
    Index j = m - 1;
    while (j >= 0) {
      x(j) += 1;
      if (x(j) < box[static_cast<std::size_t>(j)]) break;
      x(j) = 0;
      --j;
    }
    if (j < 0) break;
  }
  return out;
}

bool FgModule::same_presentation(const FgModule& other) const {
  if (same_object(other)) return true;
  return scalars() == other.scalars() && ngens() == other.ngens() &&
         relations().rows() == other.relations().rows() && relations() == other.relations();
}

bool Morphism::is_well_defined() const {
  if (matrix.rows() != source.ngens() || matrix.cols() != target.ngens()) return false;
  const Matrix r = source.effective_relations();
  for (Index i = 0; i < r.rows(); ++i) {
    Vector image = matrix.transpose() * Vector(r.row(i).transpose());
    if (!target.is_zero(image)) return false;
  }
  return true;
}

Morphism Morphism::then(const Morphism& next) const { return {source, next.target, Matrix(matrix * next.matrix)}; }

Canonicalization canonicalize(const FgModule& m) {
  const CanonicalForm& c = m.canonical();
  std::vector<Integer> orders = c.moduli();
  FgModule can = FgModule::cyclic_sum(m.scalars(), orders);
  Canonicalization out{can, {m, can, c.to_canonical}, {can, m, c.from_canonical}, c.free_rank, c.invariant_factors};
  return out;
}

FgModule direct_sum(const std::vector<FgModule>& parts) {
  if (parts.empty()) return FgModule();
  std::vector<Matrix> blocks;
  Index n = 0;
  for (const FgModule& p : parts) {
    if (p.scalars() != parts.front().scalars())
      throw ValidationError("scalar mismatch", "direct sum of modules over different scalars");
    blocks.push_back(p.relations());
    n += p.ngens();
  }
  Matrix rel = block_diagonal(blocks);
  return FgModule(parts.front().scalars(), n, rel);
}

FgModule power(const FgModule& m, Index k) { return direct_sum(std::vector<FgModule>(static_cast<std::size_t>(k), m)); }

Submodule::Submodule(FgModule ambient, Matrix generators)
    : ambient_(std::move(ambient)), gens_(std::move(generators)) {
  if (gens_.rows() == 0) gens_ = Matrix(0, ambient_.ngens());
  if (gens_.cols() != ambient_.ngens())
    throw ValidationError("dimension mismatch", "submodule generators must have " + std::to_string(ambient_.ngens()) + " coordinates");
  lattice_ = std::make_shared<const Lattice>(
      Lattice::from_generators(stack_rows(gens_, ambient_.effective_relations()), ambient_.ngens()));
}

bool Submodule::contains(const Element& x) const { return lattice_->contains(x); }

bool Submodule::contains(const Submodule& other) const {
  for (Index i = 0; i < other.gens_.rows(); ++i)
    if (!contains(Vector(other.gens_.row(i).transpose()))) return false;
  return true;
}

bool Submodule::is_zero() const {
  for (Index i = 0; i < gens_.rows(); ++i)
    if (!ambient_.is_zero(Vector(gens_.row(i).transpose()))) return false;
  return true;
}

std::optional<Vector> Submodule::express(const Element& x) const {
  if (!contains(x)) return std::nullopt;
  const Matrix r = ambient_.effective_relations();
  const Index k = gens_.rows();
  Matrix a(ambient_.ngens(), k + r.rows());
  if (k > 0) a.leftCols(k) = gens_.transpose();
  if (r.rows() > 0) a.rightCols(r.rows()) = r.transpose();
  LinearSolution s = solve_linear(a, x, Scalars::integers());
  if (!s.solvable) return std::nullopt;
  Vector c = s.particular.head(k);
  for (Index i = 0; i < k; ++i) c(i) = ambient_.scalars().reduce(c(i));
  return c;
}

FgModule Submodule::quotient() const {
  return FgModule(ambient_.scalars(), ambient_.ngens(), stack_rows(ambient_.relations(), gens_));
}

Morphism Submodule::projection() const { return {ambient_, quotient(), identity(ambient_.ngens())}; }

FgModule Submodule::as_module() const {
  const Index k = gens_.rows();
  const CanonicalForm& c = ambient_.canonical();
  Matrix rel = congruence_kernel(Matrix(gens_ * c.to_canonical), c.moduli());
  const Scalars& s = ambient_.scalars();
  if (s.is_modular()) {
    std::vector<Index> keep;
    for (Index i = 0; i < rel.rows(); ++i) {
      for (Index j = 0; j < k; ++j) rel(i, j) = mod_floor(rel(i, j), s.modulus());
      if (!cf::is_zero(Vector(rel.row(i).transpose()))) keep.push_back(i);
    }
    Matrix kept(static_cast<Index>(keep.size()), k);
    for (std::size_t r = 0; r < keep.size(); ++r) kept.row(static_cast<Index>(r)) = rel.row(keep[r]);
    rel = kept;
  }
  return FgModule(s, k, rel);
}

Morphism Submodule::inclusion() const { return {as_module(), ambient_, gens_}; }

Submodule Submodule::pruned() const {
  std::vector<Vector> kept;
  for (Index i = 0; i < gens_.rows(); ++i) {
    Vector g = gens_.row(i).transpose();
    if (ambient_.is_zero(g)) continue;
    bool dup = false;
    for (const Vector& h : kept)
      if (ambient_.equal(g, h)) {
        dup = true;
        break;
      }
    if (!dup) kept.push_back(g);
  }
  Matrix m(static_cast<Index>(kept.size()), ambient_.ngens());
  for (std::size_t i = 0; i < kept.size(); ++i) m.row(static_cast<Index>(i)) = kept[i].transpose();
  return Submodule(ambient_, m);
}

Vector flatten(const Matrix& endo) {
  const Index m = endo.rows();
  Vector v(m * endo.cols());
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < endo.cols(); ++j) v(i * endo.cols() + j) = endo(i, j);
  return v;
}

Matrix unflatten(const Vector& tuple, Index m) {
  Matrix x(m, m);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j) x(i, j) = tuple(i * m + j);
  return x;
}

bool is_endomorphism(const FgModule& n, const Matrix& endo) { return Morphism{n, n, endo}.is_well_defined(); }

bool same_endomorphism(const FgModule& n, const Matrix& a, const Matrix& b) {
  for (Index i = 0; i < n.ngens(); ++i)
    if (!n.is_zero(Vector((a.row(i) - b.row(i)).transpose()))) return false;
  return true;
}

EndoSubmodule::EndoSubmodule(FgModule base, std::vector<Matrix> generators)
    : base_(std::move(base)), gens_(std::move(generators)) {
  const Index m = base_.ngens();
  Matrix rows(static_cast<Index>(gens_.size()), m * m);
  for (std::size_t k = 0; k < gens_.size(); ++k) {
    if (gens_[k].rows() != m || gens_[k].cols() != m)
      throw ValidationError("dimension mismatch", "endomorphism matrices must be " + std::to_string(m) + "x" + std::to_string(m));
    rows.row(static_cast<Index>(k)) = flatten(gens_[k]).transpose();
  }
  tuples_ = Submodule(power(base_, m), rows);
  module_ = tuples_.as_module();
}

Matrix EndoSubmodule::combine(const Vector& coords) const {
  const Index m = base_.ngens();
  Matrix x = Matrix::Zero(m, m);
  for (std::size_t k = 0; k < gens_.size(); ++k)
    if (coords(static_cast<Index>(k)) != 0) x += coords(static_cast<Index>(k)) * gens_[k];
  return x;
}

bool EndoSubmodule::contains(const EndoSubmodule& other) const {
  for (const Matrix& g : other.gens_)
    if (!contains(g)) return false;
  return true;
}

std::optional<Vector> EndoSubmodule::coordinates_of(const Matrix& endo) const { return tuples_.express(flatten(endo)); }

EndoSubmodule end_module(const FgModule& n) {
  const Index m = n.ngens();
  const Matrix& rel = n.relations();
  const CanonicalForm& c = n.canonical();
  const Index q = c.size();
  const std::vector<Integer> mod = c.moduli();
  Matrix a = Matrix::Zero(m * m, rel.rows() * q);
  std::vector<Integer> moduli;
  for (Index j = 0; j < rel.rows(); ++j) {
    for (Index t = 0; t < q; ++t) moduli.push_back(mod[static_cast<std::size_t>(t)]);
    for (Index i = 0; i < m; ++i) {
      if (rel(j, i) == 0) continue;
      for (Index l = 0; l < m; ++l)
        for (Index t = 0; t < q; ++t) a(i * m + l, j * q + t) = rel(j, i) * c.to_canonical(l, t);
    }
  }
  Matrix basis = congruence_kernel(a, moduli);
  std::vector<Matrix> gens;
  for (Index k = 0; k < basis.rows(); ++k) {
    Matrix x = unflatten(Vector(basis.row(k).transpose()), m);
    if (!same_endomorphism(n, x, Matrix::Zero(m, m))) gens.push_back(x);
  }
  return EndoSubmodule(n, std::move(gens));
}

}  // namespace cf
