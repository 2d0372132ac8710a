#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cf/algebra.hpp"
#include "cf/bilinear.hpp"
#include "cf/module.hpp"
#include "cf/term.hpp"

namespace cf {

struct OpSpec {
  std::string name;  // add, neg, zero, smul, mul, or a bilinear map name
  std::vector<std::string> args;
  std::string result;
  bool operator==(const OpSpec& o) const { return name == o.name && args == o.args && result == o.result; }
};

struct Signature {
  std::vector<std::string> sorts;
  std::vector<OpSpec> ops;
  bool operator==(const Signature& o) const { return sorts == o.sorts && ops == o.ops; }
  bool has_sort(const std::string& s) const;
  const OpSpec* find(const std::string& op, const std::string& result_sort = "") const;
  std::string str() const;
};

struct SortSpec {
  std::string name;
  FgModule carrier;
  std::optional<std::vector<std::vector<Element>>> mult;  // ring multiplication on generators
};

struct MapSpec {
  std::string name;
  std::string left, right, result;
  std::vector<std::vector<Element>> tensor;
};

// Multi-sorted structure: Lambda-modules, optional ring products, bilinear maps.
class Structure {
 public:
  std::vector<SortSpec> sorts;
  std::vector<MapSpec> maps;

  static Structure of_module(const FgModule& m, const std::string& name = "M");
  static Structure of_algebra(const AlgebraPresentation& a, const std::string& name = "R");
  // Sorts N (for A = B) and M with the map f.
  static Structure of_bilinear(const BilinearTensor& f, const std::string& domain = "N", const std::string& codomain = "M",
                               const std::string& map = "f");
  // Lambda itself as a ring.
  static Structure base_ring(const Scalars& s, const std::string& name = "L");

  const SortSpec& sort(const std::string& name) const;
  const SortSpec* find_sort(const std::string& name) const;
  const MapSpec* find_map(const std::string& name) const;
  Signature signature() const;
  bool is_finite() const;
  Integer total_size() const;  // product of carrier sizes, finite structures only

  Element multiply(const std::string& sort, const Element& x, const Element& y) const;
  Element apply(const MapSpec& m, const Element& x, const Element& y) const;
  // Value of an annotated term under an assignment.
  Element evaluate(const Term& t, const std::map<std::string, Element>& env) const;
  bool satisfies(const EqSystem& s, const std::map<std::string, Element>& env) const;
};

// Fill in the sort of every node; throws on ill-sorted terms or unknown operations.
Term annotate(const Term& t, const Signature& sig, const std::map<std::string, std::string>& var_sorts,
              const std::string& expected = "");
EqSystem annotate(const EqSystem& s, const Signature& sig);
// Structure-aware: also checks constants have the right length.
EqSystem annotate(const EqSystem& s, const Structure& st);

struct Solutions {
  std::vector<std::string> variables;             // declaration order
  std::vector<std::vector<Element>> assignments;  // normalized, sorted
  Integer search_space = 0;                       // enumerated assignments after propagation
};

// Exhaustive search over a finite structure; refuses above cap.
Solutions eval_system(const Structure& st, const EqSystem& s, const Integer& cap);
// Solutions restricted to the kept variables; the others are eliminated one at a time
// by joining the equations that mention them.
Solutions eval_projected(const Structure& st, const EqSystem& s, const std::vector<std::string>& keep, const Integer& cap);
// Exhaustive search with each variable ranging over an explicit list.
Solutions eval_system_on(const Structure& st, const EqSystem& s, const std::map<std::string, std::vector<Element>>& domains,
                         const Integer& cap);

// Elements with coordinates in [-bound, bound] reduced to normal form, duplicates removed.
std::vector<Element> box_elements(const FgModule& m, int bound);

}  // namespace cf
