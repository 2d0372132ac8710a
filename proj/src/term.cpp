#include "cf/term.hpp"

#include <algorithm>
#include <sstream>

namespace cf {

Term Term::var(std::string name) {
  Term t;
  t.kind = TermKind::Var;
  t.name = std::move(name);
  return t;
}

Term Term::constant(Element value, std::string sort) {
  Term t;
  t.kind = TermKind::Const;
  t.value = std::move(value);
  t.sort = std::move(sort);
  return t;
}

Term Term::zero(std::string sort) {
  Term t;
  t.kind = TermKind::Zero;
  t.sort = std::move(sort);
  return t;
}

Term Term::add(Term a, Term b) {
  Term t;
  t.kind = TermKind::Add;
  t.args = {std::move(a), std::move(b)};
  return t;
}

Term Term::sub(Term a, Term b) { return add(std::move(a), neg(std::move(b))); }

Term Term::neg(Term a) {
  Term t;
  t.kind = TermKind::Neg;
  t.args = {std::move(a)};
  return t;
}

Term Term::smul(Integer lambda, Term a) {
  Term t;
  t.kind = TermKind::SMul;
  t.scalar = std::move(lambda);
  t.args = {std::move(a)};
  return t;
}

Term Term::smul_param(Term a) {
  Term t = smul(0, std::move(a));
  t.scalar_param = true;
  return t;
}

Term Term::mul(Term a, Term b) {
  Term t;
  t.kind = TermKind::Mul;
  t.args = {std::move(a), std::move(b)};
  return t;
}

Term Term::apply(std::string map, Term a, Term b) {
  Term t;
  t.kind = TermKind::Apply;
  t.name = std::move(map);
  t.args = {std::move(a), std::move(b)};
  return t;
}

Term Term::sum(std::vector<Term> terms, const std::string& sort) {
  if (terms.empty()) return zero(sort);
  Term acc = std::move(terms.front());
  for (std::size_t i = 1; i < terms.size(); ++i) acc = add(std::move(acc), std::move(terms[i]));
  return acc;
}

bool Term::operator==(const Term& o) const {
  if (kind != o.kind || name != o.name || scalar != o.scalar || scalar_param != o.scalar_param) return false;
  if (kind == TermKind::Const || kind == TermKind::Zero) {
    if (sort != o.sort) return false;
    if (kind == TermKind::Const && (value.size() != o.value.size() || value != o.value)) return false;
  }
  return args == o.args;
}

std::string Term::str() const {
  switch (kind) {
    case TermKind::Var: return name;
    case TermKind::Const: return format_vector(value);
    case TermKind::Zero: return "0";
    case TermKind::Add: return "(" + args[0].str() + " + " + args[1].str() + ")";
    case TermKind::Neg: return "-" + args[0].str();
    case TermKind::SMul: return (scalar_param ? std::string("lambda") : scalar.str()) + "*" + args[0].str();
    case TermKind::Mul: return "(" + args[0].str() + " * " + args[1].str() + ")";
    case TermKind::Apply: return name + "(" + args[0].str() + ", " + args[1].str() + ")";
  }
  return "";
}

const Variable* EqSystem::find(const std::string& name) const {
  for (const Variable& v : variables)
    if (v.name == name) return &v;
  return nullptr;
}

void EqSystem::add_variable(const std::string& name, const std::string& sort) { variables.push_back({name, sort}); }

std::string EqSystem::str() const {
  std::ostringstream os;
  for (const Equation& e : equations) os << e.lhs.str() << " = " << e.rhs.str() << "\n";
  return os.str();
}

void collect_variables(const Term& t, std::vector<std::string>& out) {
  if (t.kind == TermKind::Var) {
    if (std::find(out.begin(), out.end(), t.name) == out.end()) out.push_back(t.name);
    return;
  }
  for (const Term& a : t.args) collect_variables(a, out);
}

Term substitute(const Term& t, const std::map<std::string, Term>& by) {
  if (t.kind == TermKind::Var) {
    auto it = by.find(t.name);
    return it == by.end() ? t : it->second;
  }
  Term out = t;
  for (Term& a : out.args) a = substitute(a, by);
  return out;
}

Term bind_scalar(const Term& t, const Integer& lambda) {
  Term out = t;
  if (out.kind == TermKind::SMul && out.scalar_param) {
    out.scalar_param = false;
    out.scalar = lambda;
  }
  for (Term& a : out.args) a = bind_scalar(a, lambda);
  return out;
}

bool has_scalar_param(const Term& t) {
  if (t.kind == TermKind::SMul && t.scalar_param) return true;
  return std::any_of(t.args.begin(), t.args.end(), [](const Term& a) { return has_scalar_param(a); });
}

std::size_t term_size(const Term& t) {
  std::size_t n = 1;
  for (const Term& a : t.args) n += term_size(a);
  return n;
}

}  // namespace cf
