#include "cf/interpretation.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cf/error.hpp"

namespace cf {

std::string Certificate::str() const {
  std::ostringstream os;
  os << "interface";
  for (const std::string& v : interface) os << ' ' << v;
  os << "\n" << system.str();
  return os.str();
}

const SortInterp& Interpretation::sort(const std::string& s) const {
  for (const SortInterp& si : sorts)
    if (si.sort == s) return si;
  throw ValidationError("signature mismatch", "interpretation " + name + " does not cover sort " + s);
}

const OpInterp* Interpretation::find_op(const std::string& key) const {
  for (const OpInterp& o : ops)
    if (o.key == key) return &o;
  return nullptr;
}

std::vector<Term> Interpretation::preimage_terms(const std::string& s, const Element& x) const {
  const SortInterp& si = sort(s);
  const Vector tuple = si.preimage.transpose() * x;
  std::vector<Term> out;
  Index offset = 0;
  for (const std::string& ts : si.target_sorts) {
    const Index n = target.sort(ts).carrier.ngens();
    out.push_back(Term::constant(tuple.segment(offset, n), ts));
    offset += n;
  }
  return out;
}

Element Interpretation::project(const std::string& s, const std::vector<Element>& tuple) const {
  return source.sort(s).carrier.normalize(sort(s).project(tuple));
}

namespace {

Matrix identity_matrix(Index n) { return identity(n); }

class Translator {
 public:
  explicit Translator(const Interpretation& phi) : phi_(phi) {}

  Translation run(const EqSystem& input) {
    const EqSystem sigma = annotate(input, phi_.source);
    for (const Variable& v : sigma.variables) used_.insert(v.name);
    for (const Variable& v : sigma.variables) provenance_[v.name] = tuple(v.name, v.sort);
    for (const Equation& e : sigma.equations) {
      std::vector<Term> l = flatten(e.lhs);
      std::vector<Term> r = flatten(e.rhs);
      const SortInterp& si = phi_.sort(e.lhs.sort);
      l.insert(l.end(), r.begin(), r.end());
      instantiate(si.equality, l, nullptr);
    }
    Translation t;
    t.system = std::move(out_);
    t.provenance = std::move(provenance_);
    return t;
  }

 private:
  std::string fresh(const std::string& prefix) {
    for (;;) {
      std::string n = prefix + std::to_string(++counter_[prefix]);
      if (used_.insert(n).second) return n;
    }
  }

  std::string unique(std::string base) {
    while (!used_.insert(base).second) base += "'";
    return base;
  }

  // Target tuple for a source variable, with its domain constraints.
  std::vector<std::string> tuple(const std::string& base, const std::string& sort) {
    const SortInterp& si = phi_.sort(sort);
    std::vector<std::string> names;
    std::vector<Term> terms;
    for (Index i = 0; i < si.dimension(); ++i) {
      std::string n = unique(base + "." + std::to_string(i + 1));
      out_.add_variable(n, si.target_sorts[static_cast<std::size_t>(i)]);
      names.push_back(n);
      terms.push_back(Term::var(n));
    }
    instantiate(si.domain, terms, nullptr);
    return names;
  }

  void instantiate(const Certificate& c, const std::vector<Term>& args, const Term* smul) {
    if (args.size() != c.interface.size())
      throw std::logic_error("certificate arity mismatch");
    std::map<std::string, Term> by;
    for (std::size_t i = 0; i < args.size(); ++i) by[c.interface[i]] = args[i];
    for (const Variable& v : c.system.variables) {
      if (by.count(v.name)) continue;
      std::string n = fresh("_a");
      out_.add_variable(n, v.sort);
      by[v.name] = Term::var(n);
    }
    for (const Equation& e : c.system.equations) {
      Term l = substitute(e.lhs, by), r = substitute(e.rhs, by);
      if (smul && !smul->scalar_param) {
        l = bind_scalar(l, smul->scalar);
        r = bind_scalar(r, smul->scalar);
      }
      out_.add_equation(std::move(l), std::move(r));
    }
  }

  std::vector<Term> flatten(const Term& t) {
    switch (t.kind) {
      case TermKind::Var: {
        std::vector<Term> out;
        for (const std::string& n : provenance_.at(t.name)) out.push_back(Term::var(n));
        return out;
      }
      case TermKind::Const: return phi_.preimage_terms(t.sort, t.value);
      case TermKind::Zero: {
        std::vector<Term> out;
        for (const std::string& ts : phi_.sort(t.sort).target_sorts) out.push_back(Term::zero(ts));
        return out;
      }
      default: break;
    }
    std::string key;
    switch (t.kind) {
      case TermKind::Add: key = "add:" + t.sort; break;
      case TermKind::Neg: key = "neg:" + t.sort; break;
      case TermKind::SMul: key = "smul:" + t.sort; break;
      case TermKind::Mul: key = "mul:" + t.sort; break;
      default: key = t.name; break;
    }
    const OpInterp* op = phi_.find_op(key);
    if (!op) throw ValidationError("missing operation", "interpretation " + phi_.name + " has no graph for " + key);
    std::vector<Term> args;
    for (const Term& a : t.args) {
      std::vector<Term> f = flatten(a);
      args.insert(args.end(), f.begin(), f.end());
    }
    std::vector<std::string> res = tuple(fresh("_t"), t.sort);
    for (const std::string& n : res) args.push_back(Term::var(n));
    instantiate(op->graph, args, t.kind == TermKind::SMul ? &t : nullptr);
    std::vector<Term> out;
    for (const std::string& n : res) out.push_back(Term::var(n));
    return out;
  }

  const Interpretation& phi_;
  EqSystem out_;
  std::set<std::string> used_;
  std::map<std::string, int> counter_;
  std::map<std::string, std::vector<std::string>> provenance_;
};

Certificate through(const Certificate& c, const Interpretation& psi) {
  Translation t = translate(c.system, psi);
  Certificate out;
  out.system = std::move(t.system);
  for (const std::string& v : c.interface) {
    const std::vector<std::string>& p = t.provenance.at(v);
    out.interface.insert(out.interface.end(), p.begin(), p.end());
  }
  return out;
}

// Certificate over the given sorted variables.
Certificate certificate(const std::vector<Variable>& interface) {
  Certificate c;
  for (const Variable& v : interface) {
    c.interface.push_back(v.name);
    c.system.add_variable(v.name, v.sort);
  }
  return c;
}

std::vector<Variable> vars(const std::string& prefix, Index k, const std::string& sort) {
  std::vector<Variable> out;
  for (Index i = 0; i < k; ++i) out.push_back({prefix + std::to_string(i + 1), sort});
  return out;
}

std::vector<Variable> concat(std::vector<std::vector<Variable>> parts) {
  std::vector<Variable> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

Term v(const std::string& n) { return Term::var(n); }

}  // namespace

Translation translate(const EqSystem& sigma, const Interpretation& phi) { return Translator(phi).run(sigma); }

Interpretation compose(const Interpretation& phi, const Interpretation& psi) {
  const Signature b = phi.target.signature();
  const Signature bs = psi.source.signature();
  if (!(b == bs)) throw ValidationError("signature mismatch", "target of " + phi.name + " is not the source of " + psi.name);
  Interpretation out;
  out.name = phi.name + " then " + psi.name;
  out.source = phi.source;
  out.target = psi.target;
  for (const SortInterp& s : phi.sorts) {
    SortInterp c;
    c.sort = s.sort;
    std::vector<Matrix> blocks;
    for (const std::string& bsort : s.target_sorts) {
      const SortInterp& inner = psi.sort(bsort);
      c.target_sorts.insert(c.target_sorts.end(), inner.target_sorts.begin(), inner.target_sorts.end());
      blocks.push_back(inner.preimage);
    }
    c.domain = through(s.domain, psi);
    c.equality = through(s.equality, psi);
    c.preimage = s.preimage * block_diagonal(blocks);
    std::vector<std::string> bsorts = s.target_sorts;
    auto outer = s.project;
    auto psi_copy = std::make_shared<Interpretation>(psi);
    c.project = [outer, bsorts, psi_copy](const std::vector<Element>& tuple) {
      std::vector<Element> mid;
      std::size_t pos = 0;
      for (const std::string& bs : bsorts) {
        const SortInterp& inner = psi_copy->sort(bs);
        std::vector<Element> block(tuple.begin() + static_cast<std::ptrdiff_t>(pos),
                                   tuple.begin() + static_cast<std::ptrdiff_t>(pos + inner.target_sorts.size()));
        pos += inner.target_sorts.size();
        mid.push_back(psi_copy->project(bs, block));
      }
      return outer(mid);
    };
    out.sorts.push_back(std::move(c));
  }
  for (const OpInterp& o : phi.ops) out.ops.push_back({o.key, through(o.graph, psi)});
  return out;
}

Interpretation identity_interpretation(const Structure& st) {
  Interpretation out;
  out.name = "identity";
  out.source = st;
  out.target = st;
  for (const SortSpec& s : st.sorts) {
    SortInterp si;
    si.sort = s.name;
    si.target_sorts = {s.name};
    si.domain = certificate({{"x", s.name}});
    si.equality = certificate({{"x", s.name}, {"y", s.name}});
    si.equality.system.add_equation(v("x"), v("y"));
    si.preimage = identity_matrix(s.carrier.ngens());
    si.project = [](const std::vector<Element>& t) { return t[0]; };
    out.sorts.push_back(std::move(si));
    const std::string& n = s.name;
    Certificate add = certificate({{"x", n}, {"y", n}, {"z", n}});
    add.system.add_equation(Term::add(v("x"), v("y")), v("z"));
    out.ops.push_back({"add:" + n, add});
    Certificate neg = certificate({{"x", n}, {"z", n}});
    neg.system.add_equation(Term::neg(v("x")), v("z"));
    out.ops.push_back({"neg:" + n, neg});
    Certificate sm = certificate({{"x", n}, {"z", n}});
    sm.system.add_equation(Term::smul_param(v("x")), v("z"));
    out.ops.push_back({"smul:" + n, sm});
    if (s.mult) {
      Certificate mul = certificate({{"x", n}, {"y", n}, {"z", n}});
      mul.system.add_equation(Term::mul(v("x"), v("y")), v("z"));
      out.ops.push_back({"mul:" + n, mul});
    }
  }
  for (const MapSpec& m : st.maps) {
    Certificate g = certificate({{"x", m.left}, {"y", m.right}, {"z", m.result}});
    g.system.add_equation(Term::apply(m.name, v("x"), v("y")), v("z"));
    out.ops.push_back({m.name, g});
  }
  return out;
}

namespace {

// Shared shape of quotient certificates: each op holds up to a slack term from the ideal.
Interpretation quotient_shell(const Structure& source, const Structure& target, const std::string& t,
                              const std::function<Term(Certificate&)>& slack, bool ring) {
  Interpretation out;
  out.source = source;
  out.target = target;
  const FgModule& q = source.sorts[0].carrier;
  SortInterp si;
  si.sort = source.sorts[0].name;
  si.target_sorts = {t};
  si.domain = certificate({{"x", t}});
  si.equality = certificate({{"x", t}, {"y", t}});
  si.equality.system.add_equation(v("x"), Term::add(v("y"), slack(si.equality)));
  si.preimage = identity_matrix(q.ngens());
  si.project = [](const std::vector<Element>& tuple) { return tuple[0]; };
  const std::string s = si.sort;
  out.sorts.push_back(std::move(si));
  Certificate add = certificate({{"x", t}, {"y", t}, {"z", t}});
  add.system.add_equation(Term::add(v("x"), v("y")), Term::add(v("z"), slack(add)));
  out.ops.push_back({"add:" + s, add});
  Certificate neg = certificate({{"x", t}, {"z", t}});
  neg.system.add_equation(Term::neg(v("x")), Term::add(v("z"), slack(neg)));
  out.ops.push_back({"neg:" + s, neg});
  Certificate sm = certificate({{"x", t}, {"z", t}});
  sm.system.add_equation(Term::smul_param(v("x")), Term::add(v("z"), slack(sm)));
  out.ops.push_back({"smul:" + s, sm});
  if (ring) {
    Certificate mul = certificate({{"x", t}, {"y", t}, {"z", t}});
    mul.system.add_equation(Term::mul(v("x"), v("y")), Term::add(v("z"), slack(mul)));
    out.ops.push_back({"mul:" + s, mul});
  }
  return out;
}

std::string next_aux(Certificate& c, const std::string& sort) {
  std::string n = "w" + std::to_string(c.system.variables.size() - c.interface.size() + 1);
  c.system.add_variable(n, sort);
  return n;
}

}  // namespace

Interpretation interp_quotient(const AlgebraPresentation& r, const Matrix& gens) {
  require_valid_algebra(r);
  const FgModule& m = r.module;
  const Submodule ideal = ideal_closure(r, gens);
  const AlgebraQuotient q = quotient_algebra(r, ideal);
  const Index n = m.ngens();
  std::vector<Element> g;
  for (Index j = 0; j < gens.rows(); ++j)
    if (!m.is_zero(Vector(gens.row(j).transpose()))) g.push_back(gens.row(j).transpose());
  // Forms: 0 left products z g, 1 adds g w, 2 adds (r_a g) v.
  int form = -1;
  if (ideal.is_zero()) {
    form = 3;
  } else {
    Matrix span(0, n);
    for (int level = 0; level < 3 && form < 0; ++level) {
      for (const Element& gj : g)
        for (Index a = 0; a < n; ++a) {
          if (level == 0) span = append_row(span, r.multiply(m.generator(a), gj));
          if (level == 1) span = append_row(span, r.multiply(gj, m.generator(a)));
          if (level == 2)
            for (Index b = 0; b < n; ++b)
              span = append_row(span, r.multiply(r.multiply(m.generator(a), gj), m.generator(b)));
        }
      if (Submodule(m, span) == ideal) form = level;
    }
  }
  if (form < 0)
    throw Refusal("not certifiable", "the ideal is not a sum of one-sided products of its generators");
  auto slack = [&](Certificate& c) -> Term {
    std::vector<Term> terms;
    if (form == 3) return Term::zero("R");
    for (const Element& gj : g) {
      terms.push_back(Term::mul(v(next_aux(c, "R")), Term::constant(gj, "R")));
      if (form >= 1) terms.push_back(Term::mul(Term::constant(gj, "R"), v(next_aux(c, "R"))));
      if (form >= 2)
        for (Index a = 0; a < n; ++a) {
          Element c0 = r.multiply(m.generator(a), gj);
          if (!m.is_zero(c0)) terms.push_back(Term::mul(Term::constant(c0, "R"), v(next_aux(c, "R"))));
        }
    }
    return Term::sum(terms, "R");
  };
  Interpretation out = quotient_shell(Structure::of_algebra(q.algebra, "R"), Structure::of_algebra(r, "R"), "R", slack, true);
  out.name = "quotient";
  return out;
}

Interpretation interp_quotient(const FgModule& m, const Matrix& gens) {
  const Submodule sub(m, gens);
  const FgModule q = sub.quotient();
  Integer d = 0;
  if (!sub.is_zero()) {
    const Cardinality c = q.cardinality();
    if (!c.is_finite()) throw Refusal("not certifiable", "the submodule is not d M for any d");
    d = 1;
    for (const Integer& f : q.canonical().invariant_factors) d = lcm_value(d, f);
    Matrix dm = Integer(d) * identity(m.ngens());
    if (!(Submodule(m, dm) == sub)) throw Refusal("not certifiable", "the submodule is not d M for any d");
  }
  auto slack = [&](Certificate& c) -> Term {
    if (d == 0) return Term::zero("M");
    return Term::smul(d, v(next_aux(c, "M")));
  };
  Interpretation out = quotient_shell(Structure::of_module(q, "M"), Structure::of_module(m, "M"), "M", slack, false);
  out.name = "quotient";
  return out;
}

Interpretation interp_module_finite(const AlgebraPresentation& r) {
  require_valid_algebra(r);
  const FgModule& m = r.module;
  const Index n = m.ngens();
  const std::string L = "L";
  Interpretation out;
  out.name = "module-finite";
  out.source = Structure::of_algebra(r, "R");
  out.target = Structure::base_ring(m.scalars(), L);
  std::vector<Vector> rels;
  for (Index j = 0; j < m.relations().rows(); ++j)
    if (!cf::is_zero(Vector(m.relations().row(j).transpose()))) rels.push_back(m.relations().row(j).transpose());
  // Coordinate i of a relation combination with fresh slack variables.
  auto slack = [&](Certificate& c) {
    std::vector<std::string> w;
    for (std::size_t j = 0; j < rels.size(); ++j) w.push_back(next_aux(c, L));
    return [rels, w](Index i) {
      std::vector<Term> terms;
      for (std::size_t j = 0; j < rels.size(); ++j)
        if (rels[j](i) != 0) terms.push_back(Term::smul(rels[j](i), Term::var(w[j])));
      return Term::sum(terms, "L");
    };
  };
  auto with_slack = [](Term z, Term s) { return s.kind == TermKind::Zero ? z : Term::add(std::move(z), std::move(s)); };
  SortInterp si;
  si.sort = "R";
  si.target_sorts.assign(static_cast<std::size_t>(n), L);
  si.domain = certificate(vars("x", n, L));
  si.equality = certificate(concat({vars("x", n, L), vars("y", n, L)}));
  {
    auto s = slack(si.equality);
    for (Index i = 0; i < n; ++i)
      si.equality.system.add_equation(v("x" + std::to_string(i + 1)), with_slack(v("y" + std::to_string(i + 1)), s(i)));
  }
  si.preimage = identity_matrix(n);
  si.project = [](const std::vector<Element>& t) {
    Vector x(static_cast<Index>(t.size()));
    for (std::size_t i = 0; i < t.size(); ++i) x(static_cast<Index>(i)) = t[i](0);
    return x;
  };
  out.sorts.push_back(std::move(si));
  auto xi = [](const char* p, Index i) { return v(p + std::to_string(i + 1)); };
  Certificate add = certificate(concat({vars("x", n, L), vars("y", n, L), vars("z", n, L)}));
  Certificate neg = certificate(concat({vars("x", n, L), vars("z", n, L)}));
  Certificate sm = certificate(concat({vars("x", n, L), vars("z", n, L)}));
  Certificate mul = certificate(concat({vars("x", n, L), vars("y", n, L), vars("z", n, L)}));
  auto sa = slack(add), sn = slack(neg), ss = slack(sm), sx = slack(mul);
  for (Index i = 0; i < n; ++i) {
    add.system.add_equation(Term::add(xi("x", i), xi("y", i)), with_slack(xi("z", i), sa(i)));
    neg.system.add_equation(Term::neg(xi("x", i)), with_slack(xi("z", i), sn(i)));
    sm.system.add_equation(Term::smul_param(xi("x", i)), with_slack(xi("z", i), ss(i)));
    std::vector<Term> prod;
    for (Index j = 0; j < n; ++j)
      for (Index k = 0; k < n; ++k) {
        const Integer& b = r.mult[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)](i);
        if (b == 0) continue;
        Term p = Term::mul(xi("x", j), xi("y", k));
        prod.push_back(b == 1 ? p : Term::smul(b, p));
      }
    mul.system.add_equation(Term::sum(prod, L), with_slack(xi("z", i), sx(i)));
  }
  out.ops.push_back({"add:R", add});
  out.ops.push_back({"neg:R", neg});
  out.ops.push_back({"smul:R", sm});
  out.ops.push_back({"mul:R", mul});
  return out;
}

AlgebraPresentation scalar_algebra(const ScalarRing& z) {
  AlgebraPresentation a;
  a.module = z.module();
  for (const auto& row : z.structure_constants) {
    std::vector<Element> r;
    for (const Vector& c : row) r.push_back(c);
    a.mult.push_back(std::move(r));
  }
  a.flags.associative = true;
  a.flags.commutative = true;
  a.flags.identity = z.one;
  for (Index i = 0; i < z.size(); ++i) a.labels.push_back("g" + std::to_string(i + 1));
  return a;
}

Interpretation interp_zsym(const BilinearTensor& f) {
  const EndoSubmodule s = sym(f);
  const ScalarRing z = z_sym(f, s);
  const FgModule& n = f.A;
  const Index m = n.ngens();
  const std::string N = "N";
  Interpretation out;
  out.name = "centroid";
  out.source = Structure::of_algebra(scalar_algebra(z), "Z");
  out.target = Structure::of_bilinear(f, N, "M", "f");
  auto a = [&](Index i) { return Term::constant(n.generator(i), N); };
  auto xi = [](const char* p, Index i) { return v(p + std::to_string(i + 1)); };
  SortInterp si;
  si.sort = "Z";
  si.target_sorts.assign(static_cast<std::size_t>(m), N);
  si.domain = certificate(vars("x", m, N));
  EqSystem& d = si.domain.system;
  for (Index j = 0; j < n.relations().rows(); ++j) {
    std::vector<Term> terms;
    for (Index i = 0; i < m; ++i)
      if (n.relations()(j, i) != 0) terms.push_back(Term::smul(n.relations()(j, i), xi("x", i)));
    if (!terms.empty()) d.add_equation(Term::sum(terms, N), Term::zero(N));
  }
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j) d.add_equation(Term::apply("f", xi("x", i), a(j)), Term::apply("f", a(i), xi("x", j)));
  for (const Matrix& beta : s.generators())
    for (Index i = 0; i < m; ++i)
      for (Index j = 0; j < m; ++j)
        d.add_equation(Term::apply("f", xi("x", i), Term::constant(beta.row(j).transpose(), N)),
                       Term::apply("f", Term::constant(beta.row(i).transpose(), N), xi("x", j)));
  si.equality = certificate(concat({vars("x", m, N), vars("y", m, N)}));
  for (Index i = 0; i < m; ++i) si.equality.system.add_equation(xi("x", i), xi("y", i));
  si.preimage = Matrix(z.size(), m * m);
  for (Index k = 0; k < z.size(); ++k) si.preimage.row(k) = flatten(z.matrices()[static_cast<std::size_t>(k)]).transpose();
  auto span = std::make_shared<EndoSubmodule>(z.span);
  si.project = [span, m](const std::vector<Element>& t) {
    Vector flat(m * m);
    for (Index i = 0; i < m; ++i) flat.segment(i * m, m) = t[static_cast<std::size_t>(i)];
    std::optional<Vector> c = span->coordinates_of(unflatten(flat, m));
    if (!c) throw std::logic_error("tuple outside the scalar ring");
    return *c;
  };
  out.sorts.push_back(std::move(si));
  Certificate add = certificate(concat({vars("x", m, N), vars("y", m, N), vars("z", m, N)}));
  Certificate neg = certificate(concat({vars("x", m, N), vars("z", m, N)}));
  Certificate sm = certificate(concat({vars("x", m, N), vars("z", m, N)}));
  Certificate mul = certificate(concat({vars("x", m, N), vars("y", m, N), vars("z", m, N)}));
  for (Index i = 0; i < m; ++i) {
    add.system.add_equation(Term::add(xi("x", i), xi("y", i)), xi("z", i));
    neg.system.add_equation(Term::neg(xi("x", i)), xi("z", i));
    sm.system.add_equation(Term::smul_param(xi("x", i)), xi("z", i));
    for (Index j = 0; j < m; ++j)
      mul.system.add_equation(Term::apply("f", xi("z", i), a(j)), Term::apply("f", xi("y", i), xi("x", j)));
  }
  out.ops.push_back({"add:Z", add});
  out.ops.push_back({"neg:Z", neg});
  out.ops.push_back({"smul:Z", sm});
  out.ops.push_back({"mul:Z", mul});
  return out;
}

Certificate emit_In_definition(const AlgebraPresentation& a, const Matrix& t, int n) {
  ideal_In(a, t, n);  // same preconditions
  const int depth = a.flags.associative && a.unital() ? n : n - 1;
  Certificate c = certificate({{"x", "R"}});
  std::vector<Term> terms;
  const Index k = t.rows();
  std::vector<Index> idx(static_cast<std::size_t>(depth), 0);
  for (;;) {
    std::string y = "y";
    for (Index i : idx) y += "_" + std::to_string(i + 1);
    c.system.add_variable(y, "R");
    Term term = v(y);
    for (int p = depth - 1; p >= 0; --p) term = Term::mul(Term::constant(t.row(idx[static_cast<std::size_t>(p)]).transpose(), "R"), term);
    terms.push_back(term);
    int p = depth - 1;
    while (p >= 0 && ++idx[static_cast<std::size_t>(p)] == k) idx[static_cast<std::size_t>(p--)] = 0;
    if (p < 0) break;
  }
  c.system.add_equation(v("x"), Term::sum(terms, "R"));
  return c;
}

namespace {

void scan(const Term& t, const Structure& st, std::vector<std::string>& out) {
  if (t.kind == TermKind::Mul) {
    const SortSpec* s = st.find_sort(t.sort);
    if (!s || !s->mult) out.push_back("product on sort " + t.sort + " in " + t.str());
  }
  if (t.kind == TermKind::Apply && !st.find_map(t.name)) out.push_back("unknown map " + t.name);
  for (const Term& a : t.args) scan(a, st, out);
}

}  // namespace

std::vector<std::string> language_violations(const EqSystem& s, const Structure& target) {
  std::vector<std::string> out;
  EqSystem a;
  try {
    a = annotate(s, target.signature());
  } catch (const ValidationError& e) {
    out.push_back(e.what());
    return out;
  }
  for (const Equation& e : a.equations) {
    scan(e.lhs, target, out);
    scan(e.rhs, target, out);
  }
  return out;
}

std::vector<std::vector<Element>> interface_solutions(const Certificate& c, const Structure& target, const Integer& cap) {
  return eval_projected(target, c.system, c.interface, cap).assignments;
}

}  // namespace cf
