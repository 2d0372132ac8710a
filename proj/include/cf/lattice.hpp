#pragma once

#include <vector>

#include "cf/integer.hpp"

namespace cf {

// Sublattice of Z^n stored by its Hermite basis.
class Lattice {
 public:
  Lattice() = default;
  explicit Lattice(Index dimension) : dim_(dimension), basis_(0, dimension) {}
  static Lattice from_generators(const Matrix& rows, Index dimension);

  Index dimension() const { return dim_; }
  Index rank() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  const std::vector<Index>& pivots() const { return pivots_; }
  bool is_full_rank() const { return rank() == dim_; }
  // Product of the pivots; the index in Z^n when the lattice has full rank.
  Integer pivot_product() const;

  // Unique representative of x + L.
  Vector reduce(const Vector& x) const;
  bool contains(const Vector& x) const;
  bool contains(const Lattice& other) const;
  Lattice sum(const Lattice& other) const;
  Lattice add(const Vector& x) const;

  bool operator==(const Lattice& other) const;

 private:
  Index dim_ = 0;
  Matrix basis_;
  std::vector<Index> pivots_;
};

// Rows spanning {c : (c a)_j = 0 mod moduli[j]}; a zero modulus asks for exact vanishing.
Matrix congruence_kernel(const Matrix& a, const std::vector<Integer>& moduli);

}  // namespace cf
