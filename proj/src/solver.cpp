#include "cf/solver.hpp"

#include <functional>
#include <set>
#include <stdexcept>

#include "cf/error.hpp"

namespace cf {

EqSystem NormalizedSystem::combined() const {
  EqSystem s = linear;
  for (const ProductTriple& p : products) s.add_equation(Term::var(p.product), Term::mul(Term::var(p.left), Term::var(p.right)));
  return s;
}

NormalizedSystem normalize(const EqSystem& input, const Structure& st) {
  const EqSystem sigma = annotate(input, st);
  NormalizedSystem out;
  out.linear.variables = sigma.variables;
  std::set<std::string> used;
  for (const Variable& v : sigma.variables) used.insert(v.name);
  int counter = 0;
  auto fresh = [&](const char* prefix, int k) {
    std::string n = prefix + std::to_string(k);
    while (!used.insert(n).second) n += "'";
    return n;
  };
  std::function<Term(const Term&)> rewrite = [&](const Term& t) -> Term {
    if (t.kind == TermKind::Mul) {
      Term a = rewrite(t.args[0]);
      Term b = rewrite(t.args[1]);
      const int k = ++counter;
      ProductTriple p{fresh("_p", k), fresh("_l", k), fresh("_r", k)};
      for (const std::string* n : {&p.product, &p.left, &p.right}) out.linear.add_variable(*n, t.sort);
      out.linear.add_equation(Term::var(p.left), a);
      out.linear.add_equation(Term::var(p.right), b);
      out.products.push_back(p);
      Term v = Term::var(p.product);
      v.sort = t.sort;
      return v;
    }
    Term o = t;
    for (Term& a : o.args) a = rewrite(a);
    return o;
  };
  for (const Equation& e : sigma.equations) {
    Term l = rewrite(e.lhs);
    Term r = rewrite(e.rhs);
    out.linear.add_equation(std::move(l), std::move(r));
  }
  return out;
}

std::string Verdict::status_name() const {
  switch (status) {
    case Status::Sat: return "sat";
    case Status::Unsat: return "unsat";
    case Status::Refused: return "refused";
  }
  return "";
}

namespace {

bool ground(const Term& t) {
  if (t.kind == TermKind::Var) return false;
  for (const Term& a : t.args)
    if (!ground(a)) return false;
  return true;
}

bool linear_term(const Term& t) {
  if ((t.kind == TermKind::Mul || t.kind == TermKind::Apply) && !ground(t.args[0]) && !ground(t.args[1])) return false;
  for (const Term& a : t.args)
    if (!linear_term(a)) return false;
  return true;
}

// value = coeff * X + constant
struct LinForm {
  Matrix coeff;
  Vector constant;
};

class LinearBuilder {
 public:
  LinearBuilder(const Structure& st, const EqSystem& s) : st_(st) {
    for (const Variable& v : s.variables) {
      offset_[v.name] = width_;
      width_ += st.sort(v.sort).carrier.ngens();
    }
  }

  Index width() const { return width_; }
  Index offset(const std::string& v) const { return offset_.at(v); }

  LinForm form(const Term& t) const {
    const Index n = st_.sort(t.sort).carrier.ngens();
    switch (t.kind) {
      case TermKind::Var: {
        LinForm f{Matrix::Zero(n, width_), Vector::Zero(n)};
        f.coeff.block(0, offset_.at(t.name), n, n) = identity(n);
        return f;
      }
      case TermKind::Const: return {Matrix::Zero(n, width_), t.value};
      case TermKind::Zero: return {Matrix::Zero(n, width_), Vector::Zero(n)};
      case TermKind::Add: {
        LinForm a = form(t.args[0]), b = form(t.args[1]);
        return {Matrix(a.coeff + b.coeff), Vector(a.constant + b.constant)};
      }
      case TermKind::Neg: {
        LinForm a = form(t.args[0]);
        return {Matrix(-a.coeff), Vector(-a.constant)};
      }
      case TermKind::SMul: {
        if (t.scalar_param) throw ValidationError("unbound scalar", "parametric scalar in a solved system");
        LinForm a = form(t.args[0]);
        return {Matrix(t.scalar * a.coeff), Vector(t.scalar * a.constant)};
      }
      case TermKind::Mul:
      case TermKind::Apply: {
        const bool left_const = ground(t.args[0]);
        if (!left_const && !ground(t.args[1])) throw ValidationError("nonlinear system", "product of two variable terms " + t.str());
        const Term& c = left_const ? t.args[0] : t.args[1];
        const Term& x = left_const ? t.args[1] : t.args[0];
        const Element cv = form(c).constant;
        LinForm a = form(x);
        const Index m = st_.sort(x.sort).carrier.ngens();
        Matrix lin(n, m);
        for (Index j = 0; j < m; ++j) {
          const Element e = unit_vector(m, j);
          lin.col(j) = product(t, left_const ? cv : e, left_const ? e : cv);
        }
        return {Matrix(lin * a.coeff), Vector(lin * a.constant)};
      }
    }
    return {};
  }

 private:
  Element product(const Term& t, const Element& x, const Element& y) const {
    if (t.kind == TermKind::Mul) return st_.multiply(t.sort, x, y);
    return st_.apply(*st_.find_map(t.name), x, y);
  }

  const Structure& st_;
  std::map<std::string, Index> offset_;
  Index width_ = 0;
};

}  // namespace

bool is_linear(const EqSystem& sigma) {
  for (const Equation& e : sigma.equations)
    if (!linear_term(e.lhs) || !linear_term(e.rhs)) return false;
  return true;
}

namespace {

// Rows a x + rel^T k = b of one equation; in congruence form rel is empty and rows hold modulo the exponent.
struct Block {
  Matrix a;
  Vector b;
  Matrix rel;
};

class LinearProblem {
 public:
  LinearProblem(const Structure& st, const EqSystem& annotated) : st_(st), builder_(st, annotated) {
    for (const SortSpec& sp : st.sorts) {
      const CanonicalForm& cf = sp.carrier.canonical();
      if (cf.free_rank > 0) torsion_ = false;
      for (const Integer& d : cf.invariant_factors) exponent_ = lcm_value(exponent_, d);
    }
    if (exponent_ > Integer(1) << 30) torsion_ = false;
  }

  Index width() const { return builder_.width(); }
  Index offset(const std::string& v) const { return builder_.offset(v); }

  Block block(const Equation& e) const {
    const LinForm l = builder_.form(e.lhs), r = builder_.form(e.rhs);
    const FgModule& carrier = st_.sort(e.lhs.sort).carrier;
    Block out{Matrix(l.coeff - r.coeff), Vector(r.constant - l.constant), Matrix()};
    if (!torsion_) {
      out.rel = carrier.effective_relations();
      return out;
    }
    const CanonicalForm& cf = carrier.canonical();
    Matrix ca = cf.to_canonical.transpose() * out.a;
    Vector cb = cf.to_canonical.transpose() * out.b;
    for (Index i = 0; i < ca.rows(); ++i) {
      const Integer scale = exponent_ / cf.invariant_factors[static_cast<std::size_t>(i)];
      ca.row(i) *= scale;
      cb(i) *= scale;
    }
    out.a = std::move(ca);
    out.b = std::move(cb);
    out.rel = Matrix(0, 0);
    return out;
  }

  std::optional<Vector> solve(const std::vector<const Block*>& blocks) const {
    Index rows = 0, extra = 0;
    for (const Block* k : blocks) {
      rows += k->a.rows();
      extra += k->rel.rows();
    }
    const Index w = width();
    Matrix a = Matrix::Zero(rows, w + extra);
    Vector rhs = Vector::Zero(rows);
    Index r0 = 0, c0 = w;
    for (const Block* k : blocks) {
      const Index h = k->a.rows();
      if (w > 0) a.block(r0, 0, h, w) = k->a;
      if (k->rel.rows() > 0) a.block(r0, c0, h, k->rel.rows()) = -k->rel.transpose();
      rhs.segment(r0, h) = k->b;
      r0 += h;
      c0 += k->rel.rows();
    }
    if (torsion_) return solve_congruences(a, rhs, exponent_);
    LinearSolution sol = solve_linear(a, rhs, Scalars::integers());
    if (!sol.solvable) return std::nullopt;
    return Vector(sol.particular.head(w));
  }

  std::map<std::string, Element> assignment(const EqSystem& s, const Vector& x) const {
    std::map<std::string, Element> env;
    for (const Variable& var : s.variables) {
      const FgModule& c = st_.sort(var.sort).carrier;
      env[var.name] = c.normalize(x.segment(offset(var.name), c.ngens()));
    }
    return env;
  }

 private:
  const Structure& st_;
  LinearBuilder builder_;
  bool torsion_ = true;
  Integer exponent_ = 1;
};

}  // namespace

Verdict decide_linear(const Structure& st, const EqSystem& input) {
  const EqSystem s = annotate(input, st);
  const LinearProblem lp(st, s);
  std::vector<Block> blocks;
  for (const Equation& e : s.equations) blocks.push_back(lp.block(e));
  std::vector<const Block*> ptrs;
  for (const Block& k : blocks) ptrs.push_back(&k);
  Verdict v;
  for (const Variable& x : s.variables) v.variables.push_back(x.name);
  v.systems_explored = 1;
  const std::optional<Vector> x = lp.solve(ptrs);
  if (!x) {
    v.status = Verdict::Status::Unsat;
    return v;
  }
  v.status = Verdict::Status::Sat;
  const std::map<std::string, Element> env = lp.assignment(s, *x);
  for (const Variable& var : s.variables) v.witness.push_back(env.at(var.name));
  if (!st.satisfies(s, env)) throw std::logic_error("linear witness failed verification");
  return v;
}

Verdict decide_finite_square(const AlgebraPresentation& r, const EqSystem& input, const Integer& cap) {
  require_valid_algebra(r);
  const Structure st = Structure::of_algebra(r, "R");
  const EqSystem sigma = annotate(input, st);
  const Cardinality sq = square_span(r).cardinality();
  if (!sq.is_finite()) throw ValidationError("precondition failure", "R^2 is infinite");
  const Annihilators ann = annihilators(r.as_bilinear());
  const FgModule ql = ann.left.quotient(), qr = ann.right.quotient();
  if (!ql.is_finite()) throw ValidationError("precondition failure", "R / Ann_l is infinite");
  if (!qr.is_finite()) throw ValidationError("precondition failure", "R / Ann_r is infinite");
  const std::vector<Element> reps_l = ql.elements(cap), reps_r = qr.elements(cap);
  const NormalizedSystem ns = normalize(sigma, st);
  const FgModule& m = r.module;
  const Index n = m.ngens();
  Verdict out;
  auto constant = [](const Element& e) { return Term::constant(e, "R"); };
  for (const Variable& v : sigma.variables) out.variables.push_back(v.name);
  const EqSystem base = annotate(ns.linear, st);
  const LinearProblem lp(st, base);
  std::vector<Block> base_blocks;
  for (const Equation& e : base.equations) base_blocks.push_back(lp.block(e));
  const std::size_t levels = 2 * ns.products.size();
  // Equations pinning each coset choice, per level and representative.
  std::vector<std::vector<std::vector<Block>>> pinned(levels);
  for (std::size_t level = 0; level < levels; ++level) {
    const ProductTriple& p = ns.products[level / 2];
    const bool left = level % 2 == 0;
    for (const Element& rep : left ? reps_l : reps_r) {
      EqSystem e;
      e.variables = base.variables;
      for (Index j = 0; j < n; ++j) {
        const Element g = m.generator(j);
        if (left)
          e.add_equation(Term::mul(Term::var(p.left), constant(g)), constant(r.multiply(rep, g)));
        else
          e.add_equation(Term::mul(constant(g), Term::var(p.right)), constant(r.multiply(g, rep)));
      }
      e = annotate(e, st);
      std::vector<Block> bs;
      for (const Equation& q : e.equations) bs.push_back(lp.block(q));
      pinned[level].push_back(std::move(bs));
    }
  }
  std::vector<const Block*> current;
  for (const Block& k : base_blocks) current.push_back(&k);
  std::vector<std::size_t> chosen(levels, 0);
  std::vector<Block> products(ns.products.size());
  Integer explored = 0;
  std::optional<Vector> found;
  std::function<void(std::size_t)> search = [&](std::size_t level) {
    if (found) return;
    if (explored >= cap)
      throw Refusal("cap exceeded", "explored " + explored.str() + " linear systems without a verdict", explored);
    explored += 1;
    std::optional<Vector> x = lp.solve(current);
    if (!x) return;
    if (level == levels) {
      found = std::move(x);
      return;
    }
    const ProductTriple& p = ns.products[level / 2];
    const bool left = level % 2 == 0;
    const std::size_t count = (left ? reps_l : reps_r).size();
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t mark = current.size();
      for (const Block& k : pinned[level][i]) current.push_back(&k);
      if (!left) {
        EqSystem e;
        e.variables = base.variables;
        e.add_equation(Term::var(p.product), constant(r.multiply(reps_l[chosen[level - 1]], reps_r[i])));
        e = annotate(e, st);
        products[level / 2] = lp.block(e.equations[0]);
        current.push_back(&products[level / 2]);
      }
      chosen[level] = i;
      search(level + 1);
      current.resize(mark);
      if (found) return;
    }
  };
  search(0);
  out.systems_explored = explored;
  if (!found) {
    out.status = Verdict::Status::Unsat;
    return out;
  }
  out.status = Verdict::Status::Sat;
  const std::map<std::string, Element> env = lp.assignment(sigma, *found);
  for (const Variable& v : sigma.variables) out.witness.push_back(env.at(v.name));
  if (!st.satisfies(sigma, env)) throw std::logic_error("coset witness failed verification");
  return out;
}

Solutions brute_force(const AlgebraPresentation& r, const EqSystem& sigma, const Integer& cap) {
  return eval_system(Structure::of_algebra(r, "R"), sigma, cap);
}

}  // namespace cf
