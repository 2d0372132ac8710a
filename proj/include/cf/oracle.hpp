#pragma once

#include <cstdint>
#include <vector>

#include "cf/algebra.hpp"
#include "cf/bilinear.hpp"

// Brute-force references on small finite abelian groups, in machine integers.
namespace cf::oracle {

using Coords = std::vector<int>;

// Z/d_1 + ... + Z/d_k.
struct Group {
  std::vector<int> orders;

  int size() const;
  Index rank() const { return static_cast<Index>(orders.size()); }
  Coords zero() const { return Coords(orders.size(), 0); }
  Coords reduce(Coords x) const;
  Coords add(const Coords& a, const Coords& b) const;
  Coords scale(long long c, const Coords& a) const;
  int index(const Coords& x) const;  // mixed radix, last coordinate fastest
  Coords element(int index) const;
  std::vector<Coords> elements() const;
  // Elements killed by n.
  std::vector<Coords> torsion(int n) const;
};

// Reads a presentation whose relators each involve one generator.
Group group_of(const FgModule& m);
Coords coords_of(const Element& x);

// f(x, y) for values on generator pairs given in coordinates.
struct Form {
  Group left, right, out;
  std::vector<std::vector<Coords>> table;
  Coords apply(const Coords& x, const Coords& y) const;
};

Form form_of(const BilinearTensor& f);

// Images of the generators.
using Endo = std::vector<Coords>;
Coords act(const Group& g, const Endo& a, const Coords& x);
std::vector<Endo> endomorphisms(const Group& g);
std::uint64_t endomorphism_count(const Group& g);
// alpha with f(alpha x, y) = f(x, alpha y) for every pair of elements.
std::vector<Endo> symmetric_endomorphisms(const Form& f);
std::vector<Coords> left_annihilator(const Form& f);
std::vector<Coords> right_annihilator(const Form& f);

// Commutative ring with 1 on Z/d_1 + ... + Z/d_k, the last generator being 1.
struct SmallRing {
  Group group;
  std::vector<std::vector<Coords>> table;
  Coords one;
  Coords multiply(const Coords& x, const Coords& y) const;
};

// One representative per isomorphism class.
std::vector<SmallRing> commutative_unital_rings(int order);
AlgebraPresentation to_algebra(const SmallRing& r);

// Exact determinant by fraction-free elimination.
Integer determinant(const Matrix& m);

}  // namespace cf::oracle
