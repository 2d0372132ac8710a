#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cf/integer.hpp"
#include "cf/module.hpp"

namespace cf {

enum class TermKind { Var, Const, Zero, Add, Neg, SMul, Mul, Apply };

struct Term {
  TermKind kind = TermKind::Zero;
  std::string name;  // variable or bilinear map
  std::string sort;  // filled in by annotation; given for constants
  Element value;     // Const
  Integer scalar = 0;
  bool scalar_param = false;  // SMul by the scalar supplied at translation time
  std::vector<Term> args;

  static Term var(std::string name);
  static Term constant(Element value, std::string sort = "");
  static Term zero(std::string sort = "");
  static Term add(Term a, Term b);
  static Term sub(Term a, Term b);
  static Term neg(Term a);
  static Term smul(Integer lambda, Term a);
  static Term smul_param(Term a);
  static Term mul(Term a, Term b);
  static Term apply(std::string map, Term a, Term b);
  // Left-nested sum; zero of the given sort when empty.
  static Term sum(std::vector<Term> terms, const std::string& sort = "");

  bool is_atomic() const { return kind == TermKind::Var || kind == TermKind::Const || kind == TermKind::Zero; }
  bool operator==(const Term& o) const;
  std::string str() const;
};

struct Variable {
  std::string name;
  std::string sort;
  bool operator==(const Variable& o) const { return name == o.name && sort == o.sort; }
};

struct Equation {
  Term lhs, rhs;
};

// Finite conjunction of equations over sort-tagged variables.
struct EqSystem {
  std::vector<Variable> variables;
  std::vector<Equation> equations;

  const Variable* find(const std::string& name) const;
  void add_variable(const std::string& name, const std::string& sort);
  void add_equation(Term lhs, Term rhs) { equations.push_back({std::move(lhs), std::move(rhs)}); }
  std::string str() const;
};

// Variables occurring in a term, in first-occurrence order.
void collect_variables(const Term& t, std::vector<std::string>& out);
// Replace variables by terms.
Term substitute(const Term& t, const std::map<std::string, Term>& by);
// Replace parametric scalars by a concrete one.
Term bind_scalar(const Term& t, const Integer& lambda);
bool has_scalar_param(const Term& t);
std::size_t term_size(const Term& t);

}  // namespace cf
