#pragma once

#include <optional>
#include <string>

#include "cf/integer.hpp"

namespace cf {

// The base ring: the integers or Z/m.
class Scalars {
 public:
  Scalars() = default;
  static Scalars integers() { return Scalars(); }
  static Scalars modular(const Integer& m);

  bool is_modular() const { return modulus_ != 0; }
  const Integer& modulus() const { return modulus_; }  // 0 for the integers
  Integer reduce(const Integer& a) const { return is_modular() ? mod_floor(a, modulus_) : a; }
  std::string name() const;

  bool operator==(const Scalars& other) const { return modulus_ == other.modulus_; }
  bool operator!=(const Scalars& other) const { return !(*this == other); }

 private:
  Integer modulus_ = 0;
};

struct LinearSolution {
  bool solvable = false;
  Vector particular;  // reduced modulo the kernel lattice
  Matrix kernel;      // rows, Hermite basis of the solutions of a x = 0
};

// A solution of a x = b modulo m, by diagonalization in machine integers; m <= 2^30.
std::optional<Vector> solve_congruences(const Matrix& a, const Vector& b, const Integer& m);

// Solves a x = b over the scalars.
LinearSolution solve_linear(const Matrix& a, const Vector& b, const Scalars& scalars);

}  // namespace cf
