#include "cf/structure.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "cf/error.hpp"

namespace cf {

bool Signature::has_sort(const std::string& s) const { return std::find(sorts.begin(), sorts.end(), s) != sorts.end(); }

const OpSpec* Signature::find(const std::string& op, const std::string& result_sort) const {
  for (const OpSpec& o : ops)
    if (o.name == op && (result_sort.empty() || o.result == result_sort)) return &o;
  return nullptr;
}

std::string Signature::str() const {
  std::ostringstream os;
  os << "sorts";
  for (const std::string& s : sorts) os << ' ' << s;
  os << "; ops";
  for (const OpSpec& o : ops) {
    os << ' ' << o.name << '(';
    for (std::size_t i = 0; i < o.args.size(); ++i) os << (i ? "," : "") << o.args[i];
    os << ")->" << o.result;
  }
  return os.str();
}

Structure Structure::of_module(const FgModule& m, const std::string& name) {
  Structure s;
  s.sorts.push_back({name, m, std::nullopt});
  return s;
}

Structure Structure::of_algebra(const AlgebraPresentation& a, const std::string& name) {
  Structure s;
  s.sorts.push_back({name, a.module, a.mult});
  return s;
}

Structure Structure::of_bilinear(const BilinearTensor& f, const std::string& domain, const std::string& codomain,
                                 const std::string& map) {
  if (!f.square()) throw ValidationError("precondition violation", "the two-sorted structure needs f on N x N");
  Structure s;
  s.sorts.push_back({domain, f.A, std::nullopt});
  s.sorts.push_back({codomain, f.C, std::nullopt});
  s.maps.push_back({map, domain, domain, codomain, f.tensor});
  return s;
}

Structure Structure::base_ring(const Scalars& sc, const std::string& name) {
  Structure s;
  FgModule l = FgModule::free(sc, 1);
  s.sorts.push_back({name, l, std::vector<std::vector<Element>>{{unit_vector(1, 0)}}});
  return s;
}

const SortSpec* Structure::find_sort(const std::string& name) const {
  for (const SortSpec& s : sorts)
    if (s.name == name) return &s;
  return nullptr;
}

const SortSpec& Structure::sort(const std::string& name) const {
  const SortSpec* s = find_sort(name);
  if (!s) throw ValidationError("unknown sort", "\"" + name + "\"");
  return *s;
}

const MapSpec* Structure::find_map(const std::string& name) const {
  for (const MapSpec& m : maps)
    if (m.name == name) return &m;
  return nullptr;
}

Signature Structure::signature() const {
  Signature sig;
  for (const SortSpec& s : sorts) {
    sig.sorts.push_back(s.name);
    sig.ops.push_back({"add", {s.name, s.name}, s.name});
    sig.ops.push_back({"neg", {s.name}, s.name});
    sig.ops.push_back({"zero", {}, s.name});
    sig.ops.push_back({"smul", {s.name}, s.name});
    if (s.mult) sig.ops.push_back({"mul", {s.name, s.name}, s.name});
  }
  for (const MapSpec& m : maps) sig.ops.push_back({m.name, {m.left, m.right}, m.result});
  return sig;
}

bool Structure::is_finite() const {
  return std::all_of(sorts.begin(), sorts.end(), [](const SortSpec& s) { return s.carrier.is_finite(); });
}

Integer Structure::total_size() const {
  Integer n = 1;
  for (const SortSpec& s : sorts) n *= s.carrier.cardinality().count;
  return n;
}

Element Structure::multiply(const std::string& sort_name, const Element& x, const Element& y) const {
  const SortSpec& s = sort(sort_name);
  if (!s.mult) throw ValidationError("unknown operation", "sort " + sort_name + " has no multiplication");
  Element z = s.carrier.zero();
  for (Index i = 0; i < x.size(); ++i) {
    if (x(i) == 0) continue;
    for (Index j = 0; j < y.size(); ++j)
      if (y(j) != 0) z += (x(i) * y(j)) * (*s.mult)[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return z;
}

Element Structure::apply(const MapSpec& m, const Element& x, const Element& y) const {
  Element z = sort(m.result).carrier.zero();
  for (Index i = 0; i < x.size(); ++i) {
    if (x(i) == 0) continue;
    for (Index j = 0; j < y.size(); ++j)
      if (y(j) != 0) z += (x(i) * y(j)) * m.tensor[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return z;
}

Element Structure::evaluate(const Term& t, const std::map<std::string, Element>& env) const {
  switch (t.kind) {
    case TermKind::Var: {
      auto it = env.find(t.name);
      if (it == env.end()) throw ValidationError("unbound variable", "\"" + t.name + "\"");
      return it->second;
    }
    case TermKind::Const: return t.value;
    case TermKind::Zero: return sort(t.sort).carrier.zero();
    case TermKind::Add: return evaluate(t.args[0], env) + evaluate(t.args[1], env);
    case TermKind::Neg: return -evaluate(t.args[0], env);
    case TermKind::SMul:
      if (t.scalar_param) throw ValidationError("unbound scalar", "parametric scalar in an evaluated term");
      return t.scalar * evaluate(t.args[0], env);
    case TermKind::Mul: return multiply(t.sort, evaluate(t.args[0], env), evaluate(t.args[1], env));
    case TermKind::Apply: {
      const MapSpec* m = find_map(t.name);
      if (!m) throw ValidationError("unknown operation", "\"" + t.name + "\"");
      return apply(*m, evaluate(t.args[0], env), evaluate(t.args[1], env));
    }
  }
  return {};
}

bool Structure::satisfies(const EqSystem& s, const std::map<std::string, Element>& env) const {
  for (const Equation& e : s.equations)
    if (!sort(e.lhs.sort).carrier.equal(evaluate(e.lhs, env), evaluate(e.rhs, env))) return false;
  return true;
}

namespace {

std::string peek_sort(const Term& t, const Signature& sig, const std::map<std::string, std::string>& vars) {
  switch (t.kind) {
    case TermKind::Var: {
      auto it = vars.find(t.name);
      return it == vars.end() ? "" : it->second;
    }
    case TermKind::Const:
    case TermKind::Zero: return t.sort;
    case TermKind::Neg:
    case TermKind::SMul: return peek_sort(t.args[0], sig, vars);
    case TermKind::Add:
    case TermKind::Mul: {
      std::string s = peek_sort(t.args[0], sig, vars);
      return s.empty() ? peek_sort(t.args[1], sig, vars) : s;
    }
    case TermKind::Apply: {
      const OpSpec* op = sig.find(t.name);
      return op ? op->result : "";
    }
  }
  return "";
}

bool is_builtin(const std::string& name) {
  return name == "add" || name == "neg" || name == "zero" || name == "smul" || name == "mul";
}

}  // namespace

Term annotate(const Term& t, const Signature& sig, const std::map<std::string, std::string>& vars,
              const std::string& expected) {
  Term out = t;
  std::string s = expected.empty() ? peek_sort(t, sig, vars) : expected;
  auto mismatch = [&](const std::string& got) {
    throw ValidationError("ill-sorted term", t.str() + " has sort " + got + ", expected " + s);
  };
  switch (t.kind) {
    case TermKind::Var: {
      auto it = vars.find(t.name);
      if (it == vars.end()) throw ValidationError("unknown variable", "\"" + t.name + "\"");
      if (!s.empty() && it->second != s) mismatch(it->second);
      out.sort = it->second;
      return out;
    }
    case TermKind::Const:
    case TermKind::Zero:
      if (!t.sort.empty() && !s.empty() && t.sort != s) mismatch(t.sort);
      out.sort = s;
      if (s.empty()) throw ValidationError("ill-sorted term", "cannot infer the sort of " + t.str());
      if (!sig.has_sort(s)) throw ValidationError("unknown sort", "\"" + s + "\"");
      return out;
    case TermKind::Add:
    case TermKind::Neg:
    case TermKind::SMul:
    case TermKind::Mul: {
      if (s.empty()) throw ValidationError("ill-sorted term", "cannot infer the sort of " + t.str());
      const char* op = t.kind == TermKind::Add ? "add" : t.kind == TermKind::Neg ? "neg" : t.kind == TermKind::SMul ? "smul" : "mul";
      if (!sig.find(op, s)) throw ValidationError("unknown operation", std::string(op) + " on sort " + s);
      out.sort = s;
      for (Term& a : out.args) a = annotate(a, sig, vars, s);
      return out;
    }
    case TermKind::Apply: {
      const OpSpec* op = is_builtin(t.name) ? nullptr : sig.find(t.name);
      if (!op || op->args.size() != 2) throw ValidationError("unknown operation", "\"" + t.name + "\"");
      if (!expected.empty() && op->result != expected) mismatch(op->result);
      out.sort = op->result;
      out.args[0] = annotate(t.args[0], sig, vars, op->args[0]);
      out.args[1] = annotate(t.args[1], sig, vars, op->args[1]);
      return out;
    }
  }
  return out;
}

EqSystem annotate(const EqSystem& s, const Signature& sig) {
  std::map<std::string, std::string> vars;
  for (const Variable& v : s.variables) {
    if (!sig.has_sort(v.sort)) throw ValidationError("unknown sort", "variable " + v.name + " has sort \"" + v.sort + "\"");
    if (!vars.emplace(v.name, v.sort).second) throw ValidationError("duplicate variable", "\"" + v.name + "\"");
  }
  EqSystem out;
  out.variables = s.variables;
  for (const Equation& e : s.equations) {
    std::string sort = peek_sort(e.lhs, sig, vars);
    if (sort.empty()) sort = peek_sort(e.rhs, sig, vars);
    if (sort.empty()) throw ValidationError("ill-sorted term", "cannot infer the sort of " + e.lhs.str() + " = " + e.rhs.str());
    out.equations.push_back({annotate(e.lhs, sig, vars, sort), annotate(e.rhs, sig, vars, sort)});
  }
  return out;
}

namespace {

void check_constants(const Term& t, const Structure& st) {
  if (t.kind == TermKind::Const && t.value.size() != st.sort(t.sort).carrier.ngens())
    throw ValidationError("dimension mismatch", "constant " + t.str() + " of sort " + t.sort + " needs " +
                                                    std::to_string(st.sort(t.sort).carrier.ngens()) + " coordinates");
  for (const Term& a : t.args) check_constants(a, st);
}

}  // namespace

EqSystem annotate(const EqSystem& s, const Structure& st) {
  EqSystem out = annotate(s, st.signature());
  for (const Equation& e : out.equations) {
    check_constants(e.lhs, st);
    check_constants(e.rhs, st);
  }
  return out;
}

std::vector<Element> box_elements(const FgModule& m, int bound) {
  std::set<std::vector<Integer>> seen;
  std::vector<Element> out;
  const Index n = m.ngens();
  Vector x = Vector::Constant(n, Integer(-bound));
  for (;;) {
    Element y = m.normalize(x);
    std::vector<Integer> key(y.data(), y.data() + y.size());
    if (seen.insert(key).second) out.push_back(y);
    Index j = n - 1;
    while (j >= 0) {
      if (x(j) < bound) {
        x(j) += 1;
        break;
      }
      x(j) = -bound;
      --j;
    }
    if (j < 0) break;
  }
  std::sort(out.begin(), out.end(), [](const Element& a, const Element& b) {
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
  });
  return out;
}

// ---------------------------------------------------------------------------
// Search

namespace {

struct Step {
  Index var = -1;
  int equation = -1;  // solved from this equation, or -1 to enumerate
  bool on_rhs = false;
  int sign = 1;             // the variable enters its side as sign * v
  std::vector<int> checks;  // equations complete after this step
};

// Occurrences of v; sign set when the single occurrence sits under additions and negations only.
int occurrences(const Term& t, const std::string& v, int sign, int& found_sign, bool& additive, bool path_ok) {
  if (t.kind == TermKind::Var) {
    if (t.name != v) return 0;
    found_sign = sign;
    additive = path_ok;
    return 1;
  }
  const bool ok = path_ok && (t.kind == TermKind::Add || t.kind == TermKind::Neg);
  const int s = t.kind == TermKind::Neg ? -sign : sign;
  int n = 0;
  for (const Term& a : t.args) n += occurrences(a, v, s, found_sign, additive, ok);
  return n;
}

struct Plan {
  std::vector<Step> steps;
  std::vector<int> initial_checks;  // ground equations
};

Plan make_plan(const EqSystem& s, const std::vector<Integer>& domain_sizes) {
  const Index nv = static_cast<Index>(s.variables.size());
  std::map<std::string, Index> index;
  for (Index i = 0; i < nv; ++i) index[s.variables[static_cast<std::size_t>(i)].name] = i;
  const int ne = static_cast<int>(s.equations.size());
  std::vector<std::vector<Index>> lhs_vars(ne), rhs_vars(ne), all_vars(ne);
  for (int e = 0; e < ne; ++e) {
    std::vector<std::string> l, r, a;
    collect_variables(s.equations[e].lhs, l);
    collect_variables(s.equations[e].rhs, r);
    for (auto& n : l) lhs_vars[e].push_back(index.at(n));
    for (auto& n : r) rhs_vars[e].push_back(index.at(n));
    a = l;
    for (auto& n : r)
      if (std::find(a.begin(), a.end(), n) == a.end()) a.push_back(n);
    for (auto& n : a) all_vars[e].push_back(index.at(n));
  }
  std::vector<bool> assigned(static_cast<std::size_t>(nv), false), done(static_cast<std::size_t>(ne), false);
  auto complete = [&](int e) {
    return std::all_of(all_vars[e].begin(), all_vars[e].end(), [&](Index v) { return assigned[static_cast<std::size_t>(v)]; });
  };
  Plan plan;
  for (int e = 0; e < ne; ++e)
    if (complete(e)) {
      done[e] = true;
      plan.initial_checks.push_back(e);
    }
  for (Index count = 0; count < nv; ++count) {
    Step step;
    for (int e = 0; e < ne && step.var < 0; ++e) {
      if (done[e]) continue;
      Index free_var = -1;
      int free_count = 0;
      for (Index u : all_vars[e])
        if (!assigned[static_cast<std::size_t>(u)]) {
          free_var = u;
          ++free_count;
        }
      if (free_count != 1) continue;
      const std::string& name = s.variables[static_cast<std::size_t>(free_var)].name;
      int sl = 1, sr = 1;
      bool al = false, ar = false;
      const int nl = occurrences(s.equations[e].lhs, name, 1, sl, al, true);
      const int nr = occurrences(s.equations[e].rhs, name, 1, sr, ar, true);
      if (nl + nr != 1 || !(nl ? al : ar)) continue;
      step.var = free_var;
      step.equation = e;
      step.on_rhs = nr == 1;
      step.sign = nl ? sl : sr;
    }
    if (step.var < 0) {
      int best = -1;
      for (Index v = 0; v < nv; ++v) {
        if (assigned[static_cast<std::size_t>(v)]) continue;
        int score = 0;
        for (int e = 0; e < ne; ++e)
          if (!done[e] && std::find(all_vars[e].begin(), all_vars[e].end(), v) != all_vars[e].end()) ++score;
        if (best < 0 || score > best ||
            (score == best && domain_sizes[static_cast<std::size_t>(v)] < domain_sizes[static_cast<std::size_t>(step.var)])) {
          best = score;
          step.var = v;
        }
      }
    } else {
      done[step.equation] = true;
    }
    assigned[static_cast<std::size_t>(step.var)] = true;
    for (int e = 0; e < ne; ++e)
      if (!done[e] && complete(e)) {
        done[e] = true;
        step.checks.push_back(e);
      }
    plan.steps.push_back(step);
  }
  return plan;
}

// Tables for a finite structure; elements are indices into normalized element lists.
class FiniteModel {
 public:
  struct Node {
    TermKind kind;
    int sort = 0;
    int value = 0;  // variable index or constant element
    Integer scalar;
    int map = -1;
    std::vector<Node> args;
  };

  explicit FiniteModel(const Structure& st) : st_(st) {
    for (const SortSpec& s : st.sorts) {
      SortTables t;
      t.elements = s.carrier.elements(kTableLimit);
      const Lattice& l = s.carrier.relation_lattice();
      const Index n = s.carrier.ngens();
      t.radix.assign(static_cast<std::size_t>(n), 1);
      for (Index i = 0; i < l.rank(); ++i)
        t.radix[static_cast<std::size_t>(l.pivots()[static_cast<std::size_t>(i)])] = static_cast<long long>(l.basis()(i, l.pivots()[static_cast<std::size_t>(i)]));
      sorts_.push_back(std::move(t));
    }
    for (std::size_t k = 0; k < st.sorts.size(); ++k) {
      SortTables& t = sorts_[k];
      const int n = static_cast<int>(t.elements.size());
      t.add.resize(static_cast<std::size_t>(n) * n);
      t.neg.resize(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) {
        t.neg[i] = index_of(static_cast<int>(k), -t.elements[i]);
        for (int j = 0; j < n; ++j) t.add[static_cast<std::size_t>(i) * n + j] = index_of(static_cast<int>(k), t.elements[i] + t.elements[j]);
      }
      if (st.sorts[k].mult) {
        t.mul.resize(static_cast<std::size_t>(n) * n);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            t.mul[static_cast<std::size_t>(i) * n + j] =
                index_of(static_cast<int>(k), st.multiply(st.sorts[k].name, t.elements[i], t.elements[j]));
      }
    }
    for (const MapSpec& m : st.maps) {
      MapTable mt;
      mt.left = sort_id(m.left);
      mt.right = sort_id(m.right);
      mt.result = sort_id(m.result);
      const int nl = size(mt.left), nr = size(mt.right);
      mt.width = nr;
      mt.table.resize(static_cast<std::size_t>(nl) * nr);
      for (int i = 0; i < nl; ++i)
        for (int j = 0; j < nr; ++j)
          mt.table[static_cast<std::size_t>(i) * nr + j] =
              index_of(mt.result, st.apply(m, sorts_[mt.left].elements[i], sorts_[mt.right].elements[j]));
      maps_.push_back(std::move(mt));
    }
  }

  int add(int sort, int a, int b) const {
    const SortTables& t = sorts_[static_cast<std::size_t>(sort)];
    return t.add[static_cast<std::size_t>(a) * t.elements.size() + static_cast<std::size_t>(b)];
  }
  int neg(int sort, int a) const { return sorts_[static_cast<std::size_t>(sort)].neg[static_cast<std::size_t>(a)]; }

  int size(int sort) const { return static_cast<int>(sorts_[static_cast<std::size_t>(sort)].elements.size()); }
  const Element& element(int sort, int i) const { return sorts_[static_cast<std::size_t>(sort)].elements[static_cast<std::size_t>(i)]; }

  int sort_id(const std::string& name) const {
    for (std::size_t k = 0; k < st_.sorts.size(); ++k)
      if (st_.sorts[k].name == name) return static_cast<int>(k);
    throw ValidationError("unknown sort", "\"" + name + "\"");
  }

  int index_of(int sort, const Element& x) const {
    const Element y = st_.sorts[static_cast<std::size_t>(sort)].carrier.normalize(x);
    const std::vector<long long>& radix = sorts_[static_cast<std::size_t>(sort)].radix;
    long long idx = 0;
    for (Index i = 0; i < y.size(); ++i) idx = idx * radix[static_cast<std::size_t>(i)] + static_cast<long long>(y(i));
    return static_cast<int>(idx);
  }

  Node compile(const Term& t, const std::map<std::string, int>& vars) const {
    Node n;
    n.kind = t.kind;
    n.sort = sort_id(t.sort);
    switch (t.kind) {
      case TermKind::Var: n.value = vars.at(t.name); break;
      case TermKind::Const: n.value = index_of(n.sort, t.value); break;
      case TermKind::Zero: n.value = 0; break;
      case TermKind::SMul:
        if (t.scalar_param) throw ValidationError("unbound scalar", "parametric scalar in an evaluated term");
        n.scalar = t.scalar;
        break;
      case TermKind::Apply:
        for (std::size_t k = 0; k < st_.maps.size(); ++k)
          if (st_.maps[k].name == t.name) n.map = static_cast<int>(k);
        if (n.map < 0) throw ValidationError("unknown operation", "\"" + t.name + "\"");
        break;
      default: break;
    }
    for (const Term& a : t.args) n.args.push_back(compile(a, vars));
    if (t.kind == TermKind::SMul) smul_table(n.sort, n.scalar);
    return n;
  }

  int eval(const Node& n, const std::vector<int>& env) const {
    switch (n.kind) {
      case TermKind::Var: return env[static_cast<std::size_t>(n.value)];
      case TermKind::Const: return n.value;
      case TermKind::Zero: return 0;
      case TermKind::Add: {
        const SortTables& t = sorts_[static_cast<std::size_t>(n.sort)];
        return t.add[static_cast<std::size_t>(eval(n.args[0], env)) * t.elements.size() + static_cast<std::size_t>(eval(n.args[1], env))];
      }
      case TermKind::Neg: return sorts_[static_cast<std::size_t>(n.sort)].neg[static_cast<std::size_t>(eval(n.args[0], env))];
      case TermKind::SMul: return smul_table(n.sort, n.scalar)[static_cast<std::size_t>(eval(n.args[0], env))];
      case TermKind::Mul: {
        const SortTables& t = sorts_[static_cast<std::size_t>(n.sort)];
        return t.mul[static_cast<std::size_t>(eval(n.args[0], env)) * t.elements.size() + static_cast<std::size_t>(eval(n.args[1], env))];
      }
      case TermKind::Apply: {
        const MapTable& m = maps_[static_cast<std::size_t>(n.map)];
        return m.table[static_cast<std::size_t>(eval(n.args[0], env)) * static_cast<std::size_t>(m.width) + static_cast<std::size_t>(eval(n.args[1], env))];
      }
    }
    return 0;
  }

  static constexpr long long kTableLimit = 4096;

 private:
  struct SortTables {
    std::vector<Element> elements;
    std::vector<long long> radix;
    std::vector<int> add, neg, mul;
  };
  struct MapTable {
    int left = 0, right = 0, result = 0, width = 0;
    std::vector<int> table;
  };

  const std::vector<int>& smul_table(int sort, const Integer& lambda) const {
    auto key = std::make_pair(sort, lambda.str());
    auto it = smul_.find(key);
    if (it != smul_.end()) return it->second;
    const SortTables& t = sorts_[static_cast<std::size_t>(sort)];
    std::vector<int> table(t.elements.size());
    for (std::size_t i = 0; i < t.elements.size(); ++i) table[i] = index_of(sort, Element(lambda * t.elements[i]));
    return smul_.emplace(key, std::move(table)).first->second;
  }

  const Structure& st_;
  std::vector<SortTables> sorts_;
  std::vector<MapTable> maps_;
  mutable std::map<std::pair<int, std::string>, std::vector<int>> smul_;
};

}  // namespace

namespace {

void require_tables(const Structure& st, const EqSystem& s) {
  for (const Variable& v : s.variables)
    if (!st.sort(v.sort).carrier.is_finite())
      throw Refusal("infinite carrier", "variable " + v.name + " ranges over an infinite module");
  for (const SortSpec& sp : st.sorts) {
    const Cardinality c = sp.carrier.cardinality();
    if (!c.is_finite()) throw Refusal("infinite carrier", "sort " + sp.name + " is infinite");
    if (c.count > FiniteModel::kTableLimit)
      throw Refusal("carrier too large", "sort " + sp.name + " has " + c.count.str() + " elements", c.count);
  }
}

// All solutions of an annotated system as element indices, sorted.
std::vector<std::vector<int>> search_indices(const FiniteModel& model, const EqSystem& s, const Integer& cap, Integer& space) {
  const Index nv = static_cast<Index>(s.variables.size());
  std::map<std::string, int> vars;
  std::vector<int> sort_of(static_cast<std::size_t>(nv));
  std::vector<Integer> sizes(static_cast<std::size_t>(nv));
  for (Index i = 0; i < nv; ++i) {
    vars[s.variables[static_cast<std::size_t>(i)].name] = static_cast<int>(i);
    sort_of[static_cast<std::size_t>(i)] = model.sort_id(s.variables[static_cast<std::size_t>(i)].sort);
    sizes[static_cast<std::size_t>(i)] = model.size(sort_of[static_cast<std::size_t>(i)]);
  }
  Plan plan = make_plan(s, sizes);
  space = 1;
  for (const Step& st_ : plan.steps)
    if (st_.equation < 0) space *= sizes[static_cast<std::size_t>(st_.var)];
  if (space > cap) throw Refusal("cap exceeded", "search space " + space.str() + " exceeds cap " + cap.str(), space);

  std::vector<FiniteModel::Node> lhs, rhs;
  for (const Equation& e : s.equations) {
    lhs.push_back(model.compile(e.lhs, vars));
    rhs.push_back(model.compile(e.rhs, vars));
  }
  std::vector<int> env(static_cast<std::size_t>(nv), 0);
  std::vector<std::vector<int>> found;
  for (int e : plan.initial_checks)
    if (model.eval(lhs[e], env) != model.eval(rhs[e], env)) return found;
  std::function<void(std::size_t)> search = [&](std::size_t k) {
    if (k == plan.steps.size()) {
      found.push_back(env);
      return;
    }
    const Step& step = plan.steps[k];
    auto passes = [&]() {
      for (int e : step.checks)
        if (model.eval(lhs[e], env) != model.eval(rhs[e], env)) return false;
      return true;
    };
    int& slot = env[static_cast<std::size_t>(step.var)];
    if (step.equation >= 0) {
      const int sort = sort_of[static_cast<std::size_t>(step.var)];
      slot = 0;
      const int l0 = model.eval(lhs[step.equation], env), r0 = model.eval(rhs[step.equation], env);
      slot = step.on_rhs != (step.sign < 0) ? model.add(sort, l0, model.neg(sort, r0)) : model.add(sort, r0, model.neg(sort, l0));
      if (passes()) search(k + 1);
      return;
    }
    const int n = model.size(sort_of[static_cast<std::size_t>(step.var)]);
    for (int v = 0; v < n; ++v) {
      slot = v;
      if (passes()) search(k + 1);
    }
  };
  search(0);
  std::sort(found.begin(), found.end());
  return found;
}

// A relation on some of the variables, tuples sorted and distinct.
struct Relation {
  std::vector<int> vars;
  std::vector<std::vector<int>> tuples;
};

void make_unique(std::vector<std::vector<int>>& t) {
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
}

Relation join(const Relation& a, const Relation& b, const Integer& cap) {
  Relation out;
  out.vars = a.vars;
  std::vector<std::size_t> common_a, common_b, extra_b;
  for (std::size_t j = 0; j < b.vars.size(); ++j) {
    auto it = std::find(a.vars.begin(), a.vars.end(), b.vars[j]);
    if (it == a.vars.end()) {
      extra_b.push_back(j);
      out.vars.push_back(b.vars[j]);
    } else {
      common_a.push_back(static_cast<std::size_t>(it - a.vars.begin()));
      common_b.push_back(j);
    }
  }
  std::map<std::vector<int>, std::vector<std::size_t>> index;
  for (std::size_t k = 0; k < b.tuples.size(); ++k) {
    std::vector<int> key;
    for (std::size_t j : common_b) key.push_back(b.tuples[k][j]);
    index[key].push_back(k);
  }
  for (const std::vector<int>& t : a.tuples) {
    std::vector<int> key;
    for (std::size_t i : common_a) key.push_back(t[i]);
    auto it = index.find(key);
    if (it == index.end()) continue;
    for (std::size_t k : it->second) {
      std::vector<int> row = t;
      for (std::size_t j : extra_b) row.push_back(b.tuples[k][j]);
      out.tuples.push_back(std::move(row));
      if (Integer(static_cast<long long>(out.tuples.size())) > cap)
        throw Refusal("cap exceeded", "intermediate relation exceeds cap " + cap.str(), cap);
    }
  }
  return out;
}

Relation project_out(const Relation& r, int var) {
  Relation out;
  const std::size_t pos = static_cast<std::size_t>(std::find(r.vars.begin(), r.vars.end(), var) - r.vars.begin());
  for (std::size_t i = 0; i < r.vars.size(); ++i)
    if (i != pos) out.vars.push_back(r.vars[i]);
  for (const std::vector<int>& t : r.tuples) {
    std::vector<int> row;
    for (std::size_t i = 0; i < t.size(); ++i)
      if (i != pos) row.push_back(t[i]);
    out.tuples.push_back(std::move(row));
  }
  make_unique(out.tuples);
  return out;
}

}  // namespace

Solutions eval_system(const Structure& st, const EqSystem& input, const Integer& cap) {
  const EqSystem s = annotate(input, st);
  require_tables(st, s);
  FiniteModel model(st);
  Solutions out;
  for (const Variable& v : s.variables) out.variables.push_back(v.name);
  for (const std::vector<int>& f : search_indices(model, s, cap, out.search_space)) {
    std::vector<Element> row;
    for (std::size_t i = 0; i < f.size(); ++i) row.push_back(model.element(model.sort_id(s.variables[i].sort), f[i]));
    out.assignments.push_back(std::move(row));
  }
  return out;
}

Solutions eval_projected(const Structure& st, const EqSystem& input, const std::vector<std::string>& keep, const Integer& cap) {
  const EqSystem s = annotate(input, st);
  require_tables(st, s);
  FiniteModel model(st);
  const int nv = static_cast<int>(s.variables.size());
  std::map<std::string, int> index;
  for (int i = 0; i < nv; ++i) index[s.variables[static_cast<std::size_t>(i)].name] = i;
  std::vector<int> kept;
  for (const std::string& k : keep) {
    auto it = index.find(k);
    if (it == index.end()) throw ValidationError("unknown variable", "\"" + k + "\" is not declared");
    kept.push_back(it->second);
  }
  auto size_of = [&](int v) { return model.size(model.sort_id(s.variables[static_cast<std::size_t>(v)].sort)); };
  Solutions out;
  out.variables = keep;
  out.search_space = 0;

  // One relation per equation, on its own variables.
  std::vector<Relation> rels;
  for (const Equation& e : s.equations) {
    std::vector<std::string> names;
    collect_variables(e.lhs, names);
    collect_variables(e.rhs, names);
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    EqSystem one;
    for (const std::string& n : names) one.variables.push_back(*s.find(n));
    one.equations.push_back(e);
    Integer space;
    Relation r;
    for (const std::string& n : names) r.vars.push_back(index.at(n));
    r.tuples = search_indices(model, one, cap, space);
    out.search_space += space;
    if (r.tuples.empty()) return out;
    rels.push_back(std::move(r));
  }

  auto mentions = [](const Relation& r, int v) { return std::find(r.vars.begin(), r.vars.end(), v) != r.vars.end(); };
  std::set<int> pending;
  for (int v = 0; v < nv; ++v)
    if (std::find(kept.begin(), kept.end(), v) == kept.end()) pending.insert(v);
  while (!pending.empty()) {
    // Cheapest variable: smallest product of domains over the variables it would join.
    int best = -1;
    double best_cost = 0;
    for (int v : pending) {
      std::set<int> scope;
      for (const Relation& r : rels)
        if (mentions(r, v)) scope.insert(r.vars.begin(), r.vars.end());
      double cost = 1;
      for (int u : scope) cost *= size_of(u);
      if (best < 0 || cost < best_cost) {
        best = v;
        best_cost = cost;
      }
    }
    pending.erase(best);
    std::vector<Relation> rest;
    std::optional<Relation> acc;
    for (Relation& r : rels) {
      if (!mentions(r, best)) {
        rest.push_back(std::move(r));
        continue;
      }
      acc = acc ? join(*acc, r, cap) : std::move(r);
    }
    if (acc) {
      out.search_space += static_cast<long long>(acc->tuples.size());
      Relation p = project_out(*acc, best);
      if (p.tuples.empty()) return out;
      if (!p.vars.empty()) rest.push_back(std::move(p));
    }
    rels = std::move(rest);
  }
  Relation all;
  all.tuples = {{}};
  for (const Relation& r : rels) all = join(all, r, cap);
  for (int v : kept) {
    if (std::find(all.vars.begin(), all.vars.end(), v) != all.vars.end()) continue;
    Relation dom{{v}, {}};
    for (int i = 0; i < size_of(v); ++i) dom.tuples.push_back({i});
    all = join(all, dom, cap);
  }
  std::vector<std::vector<int>> rows;
  for (const std::vector<int>& t : all.tuples) {
    std::vector<int> row;
    for (int v : kept) row.push_back(t[static_cast<std::size_t>(std::find(all.vars.begin(), all.vars.end(), v) - all.vars.begin())]);
    rows.push_back(std::move(row));
  }
  make_unique(rows);
  for (const std::vector<int>& f : rows) {
    std::vector<Element> row;
    for (std::size_t i = 0; i < f.size(); ++i) row.push_back(model.element(model.sort_id(s.variables[static_cast<std::size_t>(kept[i])].sort), f[i]));
    out.assignments.push_back(std::move(row));
  }
  return out;
}

Solutions eval_system_on(const Structure& st, const EqSystem& input, const std::map<std::string, std::vector<Element>>& domains,
                         const Integer& cap) {
  const EqSystem s = annotate(input, st);
  const Index nv = static_cast<Index>(s.variables.size());
  std::vector<std::vector<Element>> dom(static_cast<std::size_t>(nv));
  std::vector<std::set<std::vector<Integer>>> keys(static_cast<std::size_t>(nv));
  std::vector<Integer> sizes(static_cast<std::size_t>(nv));
  auto key_of = [](const Element& x) { return std::vector<Integer>(x.data(), x.data() + x.size()); };
  for (Index i = 0; i < nv; ++i) {
    const Variable& v = s.variables[static_cast<std::size_t>(i)];
    auto it = domains.find(v.name);
    if (it == domains.end()) throw ValidationError("missing domain", "no domain for variable " + v.name);
    const FgModule& carrier = st.sort(v.sort).carrier;
    for (const Element& x : it->second) {
      Element y = carrier.normalize(x);
      if (keys[static_cast<std::size_t>(i)].insert(key_of(y)).second) dom[static_cast<std::size_t>(i)].push_back(y);
    }
    sizes[static_cast<std::size_t>(i)] = static_cast<long long>(dom[static_cast<std::size_t>(i)].size());
  }
  Plan plan = make_plan(s, sizes);
  Solutions out;
  for (const Variable& v : s.variables) out.variables.push_back(v.name);
  Integer space = 1;
  for (const Step& step : plan.steps)
    if (step.equation < 0) space *= sizes[static_cast<std::size_t>(step.var)];
  out.search_space = space;
  if (space > cap) throw Refusal("cap exceeded", "search space " + space.str() + " exceeds cap " + cap.str(), space);

  std::map<std::string, Element> env;
  auto holds = [&](int e) {
    const Equation& eq = s.equations[static_cast<std::size_t>(e)];
    return st.sort(eq.lhs.sort).carrier.equal(st.evaluate(eq.lhs, env), st.evaluate(eq.rhs, env));
  };
  for (Index i = 0; i < nv; ++i) env[s.variables[static_cast<std::size_t>(i)].name] = st.sort(s.variables[static_cast<std::size_t>(i)].sort).carrier.zero();
  for (int e : plan.initial_checks)
    if (!holds(e)) return out;
  std::vector<std::vector<Element>> found;
  std::function<void(std::size_t)> search = [&](std::size_t k) {
    if (k == plan.steps.size()) {
      std::vector<Element> row;
      for (const Variable& v : s.variables) row.push_back(env[v.name]);
      found.push_back(std::move(row));
      return;
    }
    const Step& step = plan.steps[k];
    const Variable& v = s.variables[static_cast<std::size_t>(step.var)];
    auto passes = [&]() {
      for (int e : step.checks)
        if (!holds(e)) return false;
      return true;
    };
    if (step.equation >= 0) {
      const Equation& eq = s.equations[static_cast<std::size_t>(step.equation)];
      const FgModule& carrier = st.sort(v.sort).carrier;
      env[v.name] = carrier.zero();
      const Element l0 = st.evaluate(eq.lhs, env), r0 = st.evaluate(eq.rhs, env);
      Element y = carrier.normalize(step.on_rhs != (step.sign < 0) ? Element(l0 - r0) : Element(r0 - l0));
      if (!keys[static_cast<std::size_t>(step.var)].count(key_of(y))) return;
      env[v.name] = y;
      if (passes()) search(k + 1);
      return;
    }
    for (const Element& x : dom[static_cast<std::size_t>(step.var)]) {
      env[v.name] = x;
      if (passes()) search(k + 1);
    }
  };
  search(0);
  auto less = [](const std::vector<Element>& a, const std::vector<Element>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (std::lexicographical_compare(a[i].data(), a[i].data() + a[i].size(), b[i].data(), b[i].data() + b[i].size())) return true;
      if (std::lexicographical_compare(b[i].data(), b[i].data() + b[i].size(), a[i].data(), a[i].data() + a[i].size())) return false;
    }
    return false;
  };
  std::sort(found.begin(), found.end(), less);
  out.assignments = std::move(found);
  return out;
}

}  // namespace cf
