#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cf/bilinear.hpp"
#include "cf/module.hpp"

namespace cf {

struct AlgebraFlags {
  bool associative = false;
  bool commutative = false;
  bool lie = false;
  std::optional<Element> identity;
  // Degree of each generator; present for graded algebras.
  std::optional<std::vector<int>> degrees;
};

// Module-finite algebra r_i r_j = mult[i][j].
struct AlgebraPresentation {
  FgModule module;
  std::vector<std::vector<Element>> mult;
  AlgebraFlags flags;
  std::vector<std::string> labels;  // optional generator names

  Index ngens() const { return module.ngens(); }
  bool unital() const { return flags.identity.has_value(); }
  Element multiply(const Element& x, const Element& y) const;
  // x y as a bilinear map R x R -> R on one module object.
  BilinearTensor as_bilinear() const;
};

std::vector<std::string> validate_algebra(const AlgebraPresentation& a);
void require_valid_algebra(const AlgebraPresentation& a);

Submodule square_span(const AlgebraPresentation& a);
// Smallest two-sided ideal containing the rows of gens.
Submodule ideal_closure(const AlgebraPresentation& a, const Matrix& gens);
bool is_ideal(const AlgebraPresentation& a, const Submodule& s);

enum class FreeKind { AssocNoncomm, AssocComm, Lie };

struct FreeTruncationSpec {
  FreeKind kind = FreeKind::AssocNoncomm;
  Index rank = 1;
  bool unital = false;  // ignored for Lie
  int degree_bound = 2;
  Scalars scalars;
};

struct FreeTruncation {
  AlgebraPresentation algebra;
  std::vector<std::string> words;  // letters 'a', 'b', ... in basis order
  std::vector<Index> graded_dims;  // entry d - 1 for degree d
};

struct FreeBasis {
  std::vector<std::string> words;
  std::vector<std::string> labels;
  std::vector<Index> graded_dims;
};

FreeKind parse_free_kind(const std::string& s);
std::string free_kind_name(FreeKind k);

// Basis of F / I_n without the multiplication table.
FreeBasis free_basis(const FreeTruncationSpec& spec);
// F / I_n on monomials, multisets or Lyndon words of degree < n.
FreeTruncation truncated_free(const FreeTruncationSpec& spec);

// Right-normed product t_1 (t_2 (... t_k)).
Element right_normed(const AlgebraPresentation& a, const std::vector<Element>& factors);

// Ideal spanned by n-fold products of elements of T (rows).
Submodule ideal_In(const AlgebraPresentation& a, const Matrix& t, int n);

struct AlgebraQuotient {
  AlgebraPresentation algebra;
  Morphism projection;
};

AlgebraQuotient quotient_algebra(const AlgebraPresentation& a, const Submodule& ideal);
AlgebraQuotient quotient_by_In(const AlgebraPresentation& a, const Matrix& t, int n);

// Whether each generator of degree d > 1 lies in the span of t r with t of degree 1, r of degree d - 1.
bool is_right_normed_generated(const AlgebraPresentation& a);

}  // namespace cf
