#pragma once

#include <string>
#include <vector>

#include "cf/algebra.hpp"
#include "cf/structure.hpp"
#include "cf/term.hpp"

namespace cf {

struct ProductTriple {
  std::string product, left, right;  // product = left * right
};

struct NormalizedSystem {
  EqSystem linear;  // linking equations first, then the rewritten input
  std::vector<ProductTriple> products;
  // Everything as one system again.
  EqSystem combined() const;
};

// Replace each product by a fresh triple _pN = _lN * _rN.
NormalizedSystem normalize(const EqSystem& sigma, const Structure& st);

struct Verdict {
  enum class Status { Sat, Unsat, Refused };
  Status status = Status::Unsat;
  std::vector<std::string> variables;
  std::vector<Element> witness;  // normalized, when Sat
  Integer systems_explored = 0;
  std::string message;

  std::string status_name() const;
};

// Systems whose products and maps always have one constant side.
Verdict decide_linear(const Structure& st, const EqSystem& sigma);
bool is_linear(const EqSystem& sigma);

// R^2 finite: coset enumeration over R / Ann_l and R / Ann_r, one linear system per node.
Verdict decide_finite_square(const AlgebraPresentation& r, const EqSystem& sigma, const Integer& cap = 1000000);

// All solutions in a finite algebra.
Solutions brute_force(const AlgebraPresentation& r, const EqSystem& sigma, const Integer& cap);

}  // namespace cf
