#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cf/algebra.hpp"
#include "cf/scalar_ring.hpp"
#include "cf/structure.hpp"
#include "cf/term.hpp"

namespace cf {

// A system over the target with distinguished interface variables; the rest are existential.
struct Certificate {
  std::vector<std::string> interface;
  EqSystem system;
  std::string str() const;
};

struct SortInterp {
  std::string sort;
  std::vector<std::string> target_sorts;  // one per coordinate of the tuple
  Certificate domain;                     // interface: k variables
  Certificate equality;                   // interface: 2k variables
  // Row i: a tuple representing generator i, on the concatenated target coordinates.
  Matrix preimage;
  // Target tuple to a source element.
  std::function<Element(const std::vector<Element>&)> project;

  Index dimension() const { return static_cast<Index>(target_sorts.size()); }
};

// Graph of an operation; the interface lists argument tuples then the result tuple.
// Keys: add:S, neg:S, smul:S, mul:S and map names. smul graphs use the parametric scalar.
struct OpInterp {
  std::string key;
  Certificate graph;
};

struct Interpretation {
  std::string name;
  Structure source;
  Structure target;
  std::vector<SortInterp> sorts;
  std::vector<OpInterp> ops;

  const SortInterp& sort(const std::string& s) const;
  const OpInterp* find_op(const std::string& key) const;
  // Preimage tuple of a source element, split into target terms.
  std::vector<Term> preimage_terms(const std::string& sort, const Element& x) const;
  Element project(const std::string& sort, const std::vector<Element>& tuple) const;
};

struct Translation {
  EqSystem system;
  std::map<std::string, std::vector<std::string>> provenance;  // source variable -> target tuple
};

// Unnesting plus substitution of certificates, fresh variables in post-order.
Translation translate(const EqSystem& sigma, const Interpretation& phi);

// phi: A in B, psi: B in M.
Interpretation compose(const Interpretation& phi, const Interpretation& psi);
Interpretation identity_interpretation(const Structure& st);

// R/I in R for an algebra; the ideal must be spanned by the given generators.
Interpretation interp_quotient(const AlgebraPresentation& r, const Matrix& gens);
// M/I in M for a module; needs I = d M for some d.
Interpretation interp_quotient(const FgModule& m, const Matrix& gens);
// R on coordinates in the base ring.
Interpretation interp_module_finite(const AlgebraPresentation& r);
// Z(Sym(f)) as a ring inside (N, M; f).
Interpretation interp_zsym(const BilinearTensor& f);
// The scalar ring of z_sym as an algebra presentation.
AlgebraPresentation scalar_algebra(const ScalarRing& z);

// x lies in I_n(A, T): n nested generators for unital A, n - 1 otherwise.
Certificate emit_In_definition(const AlgebraPresentation& a, const Matrix& t, int n);

// Operations the system uses that the target does not provide.
std::vector<std::string> language_violations(const EqSystem& s, const Structure& target);

// Solutions of a certificate restricted to its interface, on finite targets.
std::vector<std::vector<Element>> interface_solutions(const Certificate& c, const Structure& target, const Integer& cap);

}  // namespace cf
