#pragma once

#include <string>
#include <vector>

#include "cf/bilinear.hpp"
#include "cf/module.hpp"

namespace cf {

// Commutative subring of End(N) presented on matrices gamma_1..gamma_k.
struct ScalarRing {
  FgModule ambient;
  EndoSubmodule span;
  std::vector<std::vector<Vector>> structure_constants;  // [i][j] = gamma_i gamma_j over the gammas
  Vector one;

  const FgModule& module() const { return span.module(); }
  Index size() const { return span.size(); }
  const std::vector<Matrix>& matrices() const { return span.generators(); }
  Cardinality cardinality() const { return span.cardinality(); }
  Matrix matrix_of(const Vector& coords) const { return span.combine(coords); }
  Vector multiply(const Vector& a, const Vector& b) const;
};

// Sym(f) = {alpha : f(alpha x, y) = f(x, alpha y)} as a submodule of End(N).
EndoSubmodule sym(const BilinearTensor& f);
// Elements of Sym(f) commuting with every generator of Sym(f).
ScalarRing z_sym(const BilinearTensor& f);
ScalarRing z_sym(const BilinearTensor& f, const EndoSubmodule& sym_f);
// Elements of Z(Sym(f)) acting well-definedly on the codomain through f.
ScalarRing largest_ring(const BilinearTensor& f);
ScalarRing largest_ring(const BilinearTensor& f, const ScalarRing& center);
// Centrality through f(alpha a_i, beta_t a_j) = f(beta_t a_i, alpha a_j) instead of commutators.
EndoSubmodule z_sym_by_form(const BilinearTensor& f, const EndoSubmodule& sym_f);

// Ring structure on a commuting family of endomorphisms closed under composition.
ScalarRing make_scalar_ring(const FgModule& n, std::vector<Matrix> generators);

// Z(Sym) of f1 on a shared reduced domain, else of f2.
ScalarRing scalar_ring_of(const BilinearTensor& f);

struct TrichotomyReport {
  Cardinality scalar_ring, c1, a1xb1;
  bool consistent = false;
};

TrichotomyReport classify_trichotomy(const BilinearTensor& f);

// Commutativity, associativity, identity and closure checks; empty when all hold.
std::vector<std::string> check_ring(const ScalarRing& r);

}  // namespace cf
