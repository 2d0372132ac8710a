#pragma once

#include <string>
#include <vector>

#include "cf/module.hpp"

namespace cf {

// f: A x B -> C given by the values f(a_i, b_j).
struct BilinearTensor {
  FgModule A, B, C;
  std::vector<std::vector<Element>> tensor;

  static BilinearTensor zero(const FgModule& a, const FgModule& b, const FgModule& c);
  Element apply(const Element& x, const Element& y) const;
  const Element& at(Index i, Index j) const { return tensor[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
  // A and B are one module object, or presented identically.
  bool square() const { return A.same_presentation(B); }
};

struct Violation {
  std::string side;  // "A" or "B"
  Index relator = 0;
  Index generator = 0;
  std::string str() const;
};

std::vector<Violation> validate(const BilinearTensor& f);
// Throws on shape errors or any violation.
void require_valid(const BilinearTensor& f);

struct Annihilators {
  Submodule left, right;
};

Annihilators annihilators(const BilinearTensor& f);
Submodule image_span(const BilinearTensor& f);
bool is_full(const BilinearTensor& f);
bool is_nondegenerate(const BilinearTensor& f);

struct ReducedMap {
  BilinearTensor original;
  Submodule ann_l, ann_r;
  FgModule A1, B1, C1;
  Submodule image;  // C1 inside C, on the generators of C1
  BilinearTensor f1;
  BilinearTensor f2;
  bool shared_domain = false;  // A1 and B1 are one module

  // The map whose scalar ring is taken: f1 on a shared domain, f2 otherwise.
  const BilinearTensor& square_map() const { return shared_domain ? f1 : f2; }
};

ReducedMap reduce(const BilinearTensor& f);

// f2((a, b), (a', b')) = (f1(a, b'), f1(a', b)) on (A1 + B1)^2 -> C1 + C1.
BilinearTensor symmetrize(const BilinearTensor& f1);

}  // namespace cf
