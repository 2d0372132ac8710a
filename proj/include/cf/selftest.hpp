#pragma once

#include <string>
#include <vector>

#include "cf/algebra.hpp"
#include "cf/bilinear.hpp"

namespace cf::selftest {

struct NamedAlgebra {
  std::string name;
  AlgebraPresentation algebra;
};

struct NamedMap {
  std::string name;
  BilinearTensor map;
};

struct Fixtures {
  std::vector<NamedAlgebra> census;    // commutative unital rings of order <= 16, one per class
  std::vector<NamedAlgebra> infinite;  // Z, Z[i], Z[sqrt 2]
  std::vector<NamedMap> forms;         // further full non-degenerate maps, order <= 256
  std::vector<NamedAlgebra> finite;    // solver targets of order <= 64
};

Fixtures default_fixtures();
// Breaks 1 * 1 = 1 in census ring i, which must be nonzero.
void corrupt_structure_constant(Fixtures& f, std::size_t ring);

struct Result {
  std::string id;     // C1 .. C9
  std::string group;  // modules, scalars, interp, solver, algebra
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0;
  double budget = 0;  // seconds, 0 when unbounded
};

struct Criterion {
  std::string id, group, title;
  double budget;
};

const std::vector<Criterion>& criteria();
// Comma-separated ids or groups; empty runs everything.
bool selected(const Criterion& c, const std::string& filter);
std::vector<Result> run(const Fixtures& fixtures, const std::string& filter = "");

}  // namespace cf::selftest
