#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cf/integer.hpp"
#include "cf/lattice.hpp"
#include "cf/linear.hpp"

namespace cf {

// Coordinates with respect to the generators of a presentation.
using Element = Vector;

struct Cardinality {
  enum class Kind { Zero, Finite, Infinite };
  Kind kind = Kind::Zero;
  Integer count = 1;  // meaningful unless Infinite

  static Cardinality zero() { return {Kind::Zero, 1}; }
  static Cardinality finite(const Integer& n) { return n == 1 ? zero() : Cardinality{Kind::Finite, n}; }
  static Cardinality infinite() { return {Kind::Infinite, 0}; }
  bool is_finite() const { return kind != Kind::Infinite; }
  bool operator==(const Cardinality& o) const { return kind == o.kind && (kind == Kind::Infinite || count == o.count); }
  std::string kind_name() const;
  std::string str() const;
};

class FgModule;

// Lambda^rank + sum of Lambda/d_i, torsion listed first in the canonical generator order.
struct CanonicalForm {
  Index free_rank = 0;
  std::vector<Integer> invariant_factors;  // all > 1, each dividing the next
  Matrix to_canonical;                     // ngens x (factors + rank), row i = image of a_i
  Matrix from_canonical;                   // (factors + rank) x ngens
  Index size() const { return static_cast<Index>(invariant_factors.size()) + free_rank; }
  // Modulus of each canonical coordinate, 0 for free ones.
  std::vector<Integer> moduli() const;
};

// Finitely presented module <a_1..a_m | rows of relations> over Z or Z/m.
class FgModule {
 public:
  FgModule();
  FgModule(const Scalars& scalars, Index ngens, const Matrix& relations);
  static FgModule free(const Scalars& scalars, Index ngens);
  // Direct sum of cyclic modules; an order of 0 gives a free summand.
  static FgModule cyclic_sum(const Scalars& scalars, const std::vector<Integer>& orders);

  const Scalars& scalars() const;
  Index ngens() const;
  const Matrix& relations() const;
  // Explicit relations stacked over the implicit m*I for Z/m.
  Matrix effective_relations() const;

  const CanonicalForm& canonical() const;
  const Lattice& relation_lattice() const;

  Cardinality cardinality() const;
  bool is_finite() const { return cardinality().is_finite(); }
  bool is_trivial() const { return cardinality().kind == Cardinality::Kind::Zero; }

  Element zero() const { return Vector::Zero(ngens()); }
  Element generator(Index i) const { return unit_vector(ngens(), i); }
  // Canonical coordinates reduced modulo the invariant factors.
  Vector canonical_coordinates(const Element& x) const;
  // Unique representative of the class of x.
  Element normalize(const Element& x) const;
  bool is_zero(const Element& x) const;
  bool equal(const Element& x, const Element& y) const { return is_zero(Vector(x - y)); }

  // All elements as normalized representatives in a fixed order. Refuses when
  // infinite or larger than cap.
  std::vector<Element> elements(const Integer& cap) const;

  bool same_object(const FgModule& other) const { return data_ == other.data_; }
  bool same_presentation(const FgModule& other) const;

 private:
  struct Data;
  std::shared_ptr<const Data> data_;
};

// Linear map given by the images of the source generators (row i = image of a_i).
struct Morphism {
  FgModule source;
  FgModule target;
  Matrix matrix;

  Element apply(const Element& x) const { return matrix.transpose() * x; }
  bool is_well_defined() const;
  // The composite `next` after this map.
  Morphism then(const Morphism& next) const;
};

struct Canonicalization {
  FgModule module;
  Morphism to_canonical;
  Morphism from_canonical;
  Index rank = 0;
  std::vector<Integer> invariant_factors;
};

Canonicalization canonicalize(const FgModule& m);

FgModule direct_sum(const std::vector<FgModule>& parts);
FgModule power(const FgModule& m, Index k);

// Lambda-span of a list of elements inside an ambient module.
class Submodule {
 public:
  Submodule() = default;
  Submodule(FgModule ambient, Matrix generators);  // generators as rows

  const FgModule& ambient() const { return ambient_; }
  const Matrix& generators() const { return gens_; }
  Index size() const { return gens_.rows(); }

  bool contains(const Element& x) const;
  bool contains(const Submodule& other) const;
  bool operator==(const Submodule& other) const { return contains(other) && other.contains(*this); }
  bool is_zero() const;
  // Coefficients c with sum c_i g_i = x, when x lies in the span.
  std::optional<Vector> express(const Element& x) const;

  // Quotient by the span: relators appended, generators kept. The projection is the identity matrix.
  FgModule quotient() const;
  Morphism projection() const;
  // The span as a module presented on the given generators.
  FgModule as_module() const;
  Morphism inclusion() const;
  Cardinality cardinality() const { return as_module().cardinality(); }

  // Distinct nonzero generators, duplicates up to equality removed.
  Submodule pruned() const;

 private:
  FgModule ambient_;
  Matrix gens_;
  std::shared_ptr<const Lattice> lattice_;  // span plus relations
};

// Row-major flattening of an m x m endomorphism matrix into N^m coordinates.
Vector flatten(const Matrix& endo);
Matrix unflatten(const Vector& tuple, Index m);

bool is_endomorphism(const FgModule& n, const Matrix& endo);
bool same_endomorphism(const FgModule& n, const Matrix& a, const Matrix& b);
// Matrix of the composite x -> outer(inner(x)).
inline Matrix compose(const Matrix& outer, const Matrix& inner) { return inner * outer; }

// Submodule of End(N) spanned by matrices, viewed as tuples in N^m.
class EndoSubmodule {
 public:
  EndoSubmodule() = default;
  EndoSubmodule(FgModule base, std::vector<Matrix> generators);

  const FgModule& base() const { return base_; }
  const std::vector<Matrix>& generators() const { return gens_; }
  Index size() const { return static_cast<Index>(gens_.size()); }

  const Submodule& tuples() const { return tuples_; }
  const FgModule& module() const { return module_; }
  Cardinality cardinality() const { return module().cardinality(); }

  Matrix combine(const Vector& coords) const;
  Element act(const Vector& coords, const Element& x) const { return combine(coords).transpose() * x; }
  bool contains(const Matrix& endo) const { return tuples_.contains(flatten(endo)); }
  bool contains(const EndoSubmodule& other) const;
  std::optional<Vector> coordinates_of(const Matrix& endo) const;

 private:
  FgModule base_;
  std::vector<Matrix> gens_;
  Submodule tuples_;
  FgModule module_;
};

// End(N) with a spanning family of matrices.
EndoSubmodule end_module(const FgModule& n);

}  // namespace cf
