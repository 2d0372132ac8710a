#include "cf/selftest.hpp"

#include <chrono>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "cf/error.hpp"
#include "cf/fixtures.hpp"
#include "cf/interpretation.hpp"
#include "cf/normal_form.hpp"
#include "cf/oracle.hpp"
#include "cf/random.hpp"
#include "cf/scalar_ring.hpp"
#include "cf/solver.hpp"
#include "cf/structure.hpp"

namespace cf::selftest {

namespace {

using Key = std::vector<std::vector<Integer>>;

Key key_of(const std::vector<Element>& row) {
  Key k;
  for (const Element& e : row) k.emplace_back(e.data(), e.data() + e.size());
  return k;
}

class Tally {
 public:
  explicit Tally(std::string unit) : unit_(std::move(unit)) {}
  void record(bool ok, const std::string& what) {
    ++cases_;
    if (ok) return;
    ++failed_;
    if (first_.size() < 3) first_.push_back(what);
  }
  void note(const std::string& s) { notes_ += "; " + s; }
  bool ok() const { return failed_ == 0 && cases_ > 0; }
  std::string detail() const {
    std::ostringstream os;
    if (failed_ == 0) {
      os << cases_ << " " << unit_ << notes_;
      return os.str();
    }
    os << failed_ << " of " << cases_ << " " << unit_ << " failed";
    for (const std::string& f : first_) os << "; " << f;
    return os.str();
  }

 private:
  std::string unit_;
  std::size_t cases_ = 0, failed_ = 0;
  std::vector<std::string> first_;
  std::string notes_;
};

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const std::string& s : v) out += (out.empty() ? "" : ", ") + s;
  return out;
}

Matrix endo_matrix(const oracle::Endo& a) {
  Matrix m(static_cast<Index>(a.size()), static_cast<Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) m(static_cast<Index>(i), static_cast<Index>(j)) = a[i][j];
  return m;
}

Matrix left_multiplication(const AlgebraPresentation& a, const Element& x) {
  Matrix m(a.ngens(), a.ngens());
  for (Index i = 0; i < a.ngens(); ++i) m.row(i) = a.module.normalize(a.multiply(x, a.module.generator(i))).transpose();
  return m;
}

// ---------------------------------------------------------------- C1

Tally smith_and_solve() {
  Tally t("cases");
  gen::Rng rng(11);
  for (int n = 0; n < 1000; ++n) {
    const Index rows = rng.uniform(1, 8), cols = rng.uniform(1, 8);
    const Matrix m = gen::matrix(rng, rows, cols, 50);
    const SmithForm<Integer> s = smith_normal_form(m);
    std::vector<std::string> bad;
    if (Matrix(s.U * m * s.V) != s.D) bad.push_back("U M V != D");
    for (Index i = 0; i < rows; ++i)
      for (Index j = 0; j < cols; ++j) {
        const bool on = i == j && i < s.rank;
        if (s.D(i, j) != (on ? s.diagonal[static_cast<std::size_t>(i)] : Integer(0))) bad.push_back("D not diagonal");
      }
    for (std::size_t k = 0; k < s.diagonal.size(); ++k) {
      if (s.diagonal[k] <= 0) bad.push_back("nonpositive invariant");
      if (k + 1 < s.diagonal.size() && s.diagonal[k + 1] % s.diagonal[k] != 0) bad.push_back("divisibility chain");
    }
    if (abs_value(oracle::determinant(s.U)) != 1) bad.push_back("det U");
    if (abs_value(oracle::determinant(s.V)) != 1) bad.push_back("det V");
    if (Matrix(s.V * s.V_inverse) != identity(cols)) bad.push_back("V V^-1");
    t.record(bad.empty(), "matrix " + std::to_string(n) + ": " + join(bad));
  }
  for (int n = 0; n < 500; ++n) {
    const long long mod = rng.uniform(2, 12);
    const Index vars = rng.uniform(1, 3), eqs = rng.uniform(1, 3);
    const Matrix a = gen::matrix(rng, eqs, vars, 50);
    Vector b = rng.coin() ? Vector(a * gen::matrix(rng, vars, 1, 20).col(0)) : Vector(gen::matrix(rng, eqs, 1, 50).col(0));
    const LinearSolution sol = solve_linear(a, b, Scalars::modular(mod));
    auto is_solution = [&](const std::vector<long long>& x) {
      for (Index i = 0; i < eqs; ++i) {
        Integer v = -b(i);
        for (Index j = 0; j < vars; ++j) v += a(i, j) * x[static_cast<std::size_t>(j)];
        if (v % mod != 0) return false;
      }
      return true;
    };
    std::set<std::vector<long long>> brute;
    long long total = 1;
    for (Index j = 0; j < vars; ++j) total *= mod;
    for (long long code = 0; code < total; ++code) {
      std::vector<long long> x(static_cast<std::size_t>(vars));
      long long c = code;
      for (Index j = vars - 1; j >= 0; --j) {
        x[static_cast<std::size_t>(j)] = c % mod;
        c /= mod;
      }
      if (is_solution(x)) brute.insert(x);
    }
    std::string bad;
    auto reduced = [&](const Vector& v) {
      std::vector<long long> x;
      for (Index j = 0; j < v.size(); ++j) x.push_back(static_cast<long long>(mod_floor(v(j), Integer(mod))));
      return x;
    };
    if (sol.solvable != !brute.empty()) {
      bad = "solvability differs";
    } else if (sol.solvable) {
      std::set<std::vector<long long>> reach{reduced(sol.particular)};
      std::deque<std::vector<long long>> queue(reach.begin(), reach.end());
      for (Index k = 0; k < sol.kernel.rows(); ++k)
        if (!is_solution(reduced(Vector(sol.particular + sol.kernel.row(k).transpose())))) bad = "kernel row is not homogeneous";
      while (!queue.empty() && bad.empty()) {
        const std::vector<long long> x = queue.front();
        queue.pop_front();
        for (Index k = 0; k < sol.kernel.rows(); ++k) {
          std::vector<long long> y = x;
          for (Index j = 0; j < vars; ++j)
            y[static_cast<std::size_t>(j)] =
                static_cast<long long>(mod_floor(Integer(y[static_cast<std::size_t>(j)]) + sol.kernel(k, j), Integer(mod)));
          if (reach.insert(y).second) queue.push_back(y);
        }
      }
      if (bad.empty() && reach != brute) bad = "solution set differs from exhaustive search";
    }
    t.record(bad.empty(), "system " + std::to_string(n) + " mod " + std::to_string(mod) + ": " + bad);
  }
  return t;
}

// ---------------------------------------------------------------- C2 .. C5

std::vector<NamedMap> sym_maps(const Fixtures& fx) {
  std::vector<NamedMap> out;
  for (const NamedAlgebra& r : fx.census) out.push_back({r.name, multiplication(r.algebra)});
  for (const NamedMap& m : fx.forms) out.push_back(m);
  return out;
}

Tally sym_oracle(const Fixtures& fx) {
  Tally t("maps");
  const std::vector<NamedMap> maps = sym_maps(fx);
  for (const NamedMap& nm : maps) {
    const BilinearTensor& f = nm.map;
    const std::vector<Violation> v = validate(f);
    if (!v.empty()) {
      t.record(false, nm.name + ": not well defined at " + v.front().str());
      continue;
    }
    if (!f.square() || !is_full(f) || !is_nondegenerate(f)) {
      t.record(false, nm.name + ": not a full non-degenerate map on one module");
      continue;
    }
    const Cardinality n = f.A.cardinality();
    if (!n.is_finite() || n.count > 256) {
      t.record(false, nm.name + ": order above 256");
      continue;
    }
    const EndoSubmodule s = sym(f);
    const std::vector<oracle::Endo> brute = oracle::symmetric_endomorphisms(oracle::form_of(f));
    std::string bad;
    if (!(s.cardinality() == Cardinality::finite(static_cast<long long>(brute.size()))))
      bad = "|sym| = " + s.cardinality().str() + ", brute force " + std::to_string(brute.size());
    for (const oracle::Endo& a : brute)
      if (bad.empty() && !s.contains(endo_matrix(a))) bad = "brute-force endomorphism outside sym";
    t.record(bad.empty(), nm.name + ": " + bad);
  }
  if (maps.size() < 50) t.record(false, "only " + std::to_string(maps.size()) + " maps in the fixture set");
  return t;
}

std::string center_is_ring(const AlgebraPresentation& a) {
  const std::vector<std::string> issues = validate_algebra(a);
  if (!issues.empty()) return issues.front();
  if (!a.unital() || !a.flags.commutative || !a.flags.associative) return "not declared commutative, associative and unital";
  const BilinearTensor f = multiplication(a);
  const ScalarRing z = z_sym(f);
  const std::vector<std::string> ring = check_ring(z);
  if (!ring.empty()) return "center: " + ring.front();
  const FgModule& m = a.module;
  const Element& one = *a.flags.identity;
  auto phi = [&](const Vector& c) { return m.normalize(Vector(z.matrix_of(c).transpose() * one)); };
  if (!m.equal(phi(z.one), one)) return "identity does not map to 1";
  const Index k = z.size();
  for (Index i = 0; i < k; ++i)
    for (Index j = 0; j < k; ++j) {
      const Element lhs = phi(z.structure_constants[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
      const Element rhs = a.multiply(phi(unit_vector(k, i)), phi(unit_vector(k, j)));
      if (!m.equal(lhs, rhs)) return "not multiplicative on generators " + std::to_string(i) + ", " + std::to_string(j);
    }
  for (Index i = 0; i < a.ngens(); ++i) {
    const Element x = m.generator(i);
    const std::optional<Vector> c = z.span.coordinates_of(left_multiplication(a, x));
    if (!c) return "multiplication by generator " + std::to_string(i) + " is not central";
    if (!m.equal(phi(*c), x)) return "no section at generator " + std::to_string(i);
  }
  for (Index i = 0; i < k; ++i)
    if (!same_endomorphism(m, left_multiplication(a, phi(unit_vector(k, i))), z.matrices()[static_cast<std::size_t>(i)]))
      return "not injective at generator " + std::to_string(i);
  if (a.module.is_finite() && !(z.cardinality() == m.cardinality())) return "orders differ";
  return "";
}

Tally center_iso(const Fixtures& fx) {
  Tally t("rings");
  std::vector<NamedAlgebra> rings = fx.census;
  rings.insert(rings.end(), fx.infinite.begin(), fx.infinite.end());
  for (const NamedAlgebra& r : rings) {
    const std::string bad = center_is_ring(r.algebra);
    t.record(bad.empty(), "fixture " + r.name + ": " + bad);
  }
  return t;
}

Tally trichotomy() {
  Tally t("tensors");
  gen::Rng rng(41);
  const std::vector<long long> pool{0, 0, 2, 3, 4, 6, 8, 9};
  int infinite = 0;
  for (int n = 0; n < 500; ++n) {
    const bool shared = rng.coin();
    const std::vector<Integer> a = gen::orders(rng, rng.uniform(1, 3), pool);
    const std::vector<Integer> b = shared ? a : gen::orders(rng, rng.uniform(1, 3), pool);
    const std::vector<Integer> c = gen::orders(rng, rng.uniform(1, 2), pool);
    const BilinearTensor f = gen::cyclic_tensor(rng, a, b, c, 3, shared);
    const gen::Unimodular p = gen::unimodular(rng, f.A.ngens());
    const gen::Unimodular q = gen::unimodular(rng, f.B.ngens());
    const gen::Unimodular s = gen::unimodular(rng, f.C.ngens());
    const BilinearTensor g = gen::change_generators(f, p, q, s);
    if (!f.A.is_finite() || !f.B.is_finite() || !f.C.is_finite()) ++infinite;
    std::string bad;
    if (!validate(g).empty()) {
      bad = "generated tensor is not well defined";
    } else {
      const TrichotomyReport r = classify_trichotomy(g);
      const TrichotomyReport r0 = classify_trichotomy(f);
      if (!r.consistent) bad = "inconsistent: ring " + r.scalar_ring.str() + ", C1 " + r.c1.str() + ", A1 x B1 " + r.a1xb1.str();
      else if (!(r.scalar_ring == r0.scalar_ring && r.c1 == r0.c1 && r.a1xb1 == r0.a1xb1)) bad = "changes under a change of generators";
    }
    t.record(bad.empty(), "tensor " + std::to_string(n) + ": " + bad);
  }
  t.note(std::to_string(infinite) + " with an infinite module");
  return t;
}

// Every generator of sub is a certified member of super.
std::string certify(const FgModule& n, const EndoSubmodule& sub, const EndoSubmodule& super) {
  for (const Matrix& g : sub.generators()) {
    const std::optional<Vector> c = super.coordinates_of(g);
    if (!c) return "generator outside";
    if (!same_endomorphism(n, super.combine(*c), g)) return "coordinates do not reproduce the generator";
  }
  return "";
}

Tally ring_chain(const Fixtures& fx) {
  Tally t("maps");
  struct Case {
    NamedMap map;
    bool equal_center;
  };
  std::vector<Case> cases;
  for (const NamedAlgebra& r : fx.census) cases.push_back({{r.name, multiplication(r.algebra)}, true});
  for (const NamedAlgebra& r : fx.infinite) cases.push_back({{r.name, multiplication(r.algebra)}, false});
  for (const NamedMap& m : fx.forms) cases.push_back({m, false});
  gen::Rng rng(51);
  const std::vector<long long> pool{0, 2, 3, 4, 6};
  for (int n = 0; n < 40; ++n) {
    const std::vector<Integer> a = gen::orders(rng, rng.uniform(1, 2), pool);
    const std::vector<Integer> c = gen::orders(rng, rng.uniform(1, 2), pool);
    const BilinearTensor g = gen::cyclic_tensor(rng, a, a, c, 3, true);
    cases.push_back({{"reduced random " + std::to_string(n), reduce(g).square_map()}, false});
  }
  for (const Case& k : cases) {
    const BilinearTensor& f = k.map.map;
    std::string bad;
    const EndoSubmodule s = sym(f);
    const ScalarRing c = z_sym(f, s);
    const ScalarRing l = largest_ring(f, c);
    std::string e = certify(f.A, c.span, s);
    if (!e.empty()) bad = "center in sym: " + e;
    if (bad.empty() && !(e = certify(f.A, l.span, c.span)).empty()) bad = "largest ring in center: " + e;
    if (bad.empty() && k.equal_center) {
      if (!(e = certify(f.A, c.span, l.span)).empty()) bad = "center in largest ring: " + e;
      else if (!(c.cardinality() == f.A.cardinality())) bad = "center order differs from ring order";
    }
    t.record(bad.empty(), k.map.name + ": " + bad);
  }
  return t;
}

// ---------------------------------------------------------------- C6

std::set<Key> projected(const Interpretation& phi, const EqSystem& sigma, const Translation& t, const Solutions& sol) {
  std::set<Key> out;
  for (const auto& row : sol.assignments) {
    std::vector<Element> src;
    for (const Variable& v : sigma.variables) {
      std::vector<Element> tuple;
      for (const std::string& n : t.provenance.at(v.name)) {
        auto it = std::find(sol.variables.begin(), sol.variables.end(), n);
        tuple.push_back(row[static_cast<std::size_t>(it - sol.variables.begin())]);
      }
      src.push_back(phi.project(v.sort, tuple));
    }
    out.insert(key_of(src));
  }
  return out;
}

std::vector<std::string> provenance_order(const EqSystem& sigma, const Translation& t) {
  std::vector<std::string> out;
  for (const Variable& v : sigma.variables)
    for (const std::string& n : t.provenance.at(v.name)) out.push_back(n);
  return out;
}

std::set<Key> direct(const Structure& st, const EqSystem& sigma, const Integer& cap) {
  std::set<Key> out;
  for (const auto& row : eval_system(st, sigma, cap).assignments) out.insert(key_of(row));
  return out;
}

AlgebraPresentation source_algebra(const Interpretation& q, const AlgebraPresentation& parent) {
  AlgebraPresentation a;
  a.module = q.source.sorts[0].carrier;
  a.mult = *q.source.sorts[0].mult;
  a.flags = parent.flags;
  a.flags.degrees.reset();
  return a;
}

struct NamedInterp {
  std::string name;
  Interpretation phi;
};

std::vector<NamedInterp> interpretation_pool(const Fixtures& fx, int& refused) {
  std::vector<NamedInterp> out;
  gen::Rng rng(61);
  for (const NamedAlgebra& r : fx.census) {
    const Cardinality n = r.algebra.module.cardinality();
    if (n.kind == Cardinality::Kind::Zero) continue;
    const std::vector<Element> els = r.algebra.module.elements(64);
    const Element& g = els[1 + rng.index(els.size() - 1)];
    try {
      out.push_back({"quotient of " + r.name + " by " + format_vector(g), interp_quotient(r.algebra, Matrix(g.transpose()))});
    } catch (const Refusal&) {
      ++refused;
    }
  }
  const Scalars z = Scalars::integers();
  out.push_back({"Z/8 mod 2", interp_quotient(FgModule::cyclic_sum(z, {8}), make_matrix({{2}}))});
  out.push_back({"Z/9 mod 3", interp_quotient(FgModule::cyclic_sum(z, {9}), make_matrix({{3}}))});
  out.push_back({"(Z/4)^2 mod 2", interp_quotient(FgModule::cyclic_sum(z, {4, 4}), make_matrix({{2, 0}, {0, 2}}))});
  out.push_back({"identity on F4", identity_interpretation(Structure::of_algebra(f4(), "R"))});
  out.push_back({"identity on Z/6", identity_interpretation(Structure::of_algebra(cyclic_ring(6), "R"))});
  out.push_back({"identity on Z/4 module", identity_interpretation(Structure::of_module(FgModule::cyclic_sum(z, {4}), "M"))});
  for (const auto& [name, a] : std::vector<std::pair<std::string, AlgebraPresentation>>{
           {"F2 x F2", f2_product()},
           {"F4", f4()},
           {"F2[t]/t^3", f2_truncated_polynomial(3)},
           {"F5", prime_field(5)},
           {"T2(F2)", upper_triangular_f2()},
           {"M2(F2)", matrix_ring_f2()}})
    out.push_back({"coordinates of " + name, interp_module_finite(a)});
  {
    const AlgebraPresentation z16 = cyclic_ring(16);
    Interpretation psi = interp_quotient(z16, make_matrix({{4}}));
    Interpretation phi = interp_quotient(source_algebra(psi, z16), make_matrix({{2}}));
    out.push_back({"Z/16 -> Z/4 -> Z/2", compose(phi, psi)});
    out.push_back({"identity after Z/16 -> Z/4", compose(identity_interpretation(psi.source), psi)});
  }
  {
    const AlgebraPresentation p = f2_truncated_polynomial(3);
    out.push_back({"F2[t]/t^2 in coordinates", compose(interp_quotient(p, make_matrix({{0, 0, 1}})), interp_module_finite(p))});
  }
  {
    const AlgebraPresentation p = f2_product();
    Interpretation q = interp_quotient(p, make_matrix({{1, 0}}));
    out.push_back({"F2 x F2 -> F2 -> identity", compose(q, identity_interpretation(q.target))});
  }
  return out;
}

Tally interpretation_soundness(const Fixtures& fx) {
  Tally t("cases");
  int refused = 0;
  const std::vector<NamedInterp> pool = interpretation_pool(fx, refused);
  gen::Rng rng(62);
  const Integer cap = 10000000;
  std::size_t nonempty = 0;
  for (int n = 0; n < 200; ++n) {
    const NamedInterp& ni = pool[static_cast<std::size_t>(n) % pool.size()];
    const Interpretation& phi = ni.phi;
    const SortSpec& sort = phi.source.sorts[0];
    gen::TermShape shape;
    shape.variables = {"x"};
    if (rng.coin()) shape.variables.push_back("y");
    const std::vector<Element> els = sort.carrier.elements(64);
    for (int k = 0; k < 2; ++k) shape.constants.push_back(rng.pick(els));
    shape.products = sort.mult.has_value();
    shape.sort = sort.name;
    const EqSystem sigma = gen::system(rng, shape, static_cast<int>(rng.uniform(1, 2)));
    std::string bad;
    try {
      const Translation tr = translate(sigma, phi);
      const std::vector<std::string> lang = language_violations(tr.system, phi.target);
      const std::set<Key> d = direct(phi.source, sigma, cap);
      const std::set<Key> p = projected(phi, sigma, tr, eval_projected(phi.target, tr.system, provenance_order(sigma, tr), cap));
      if (!lang.empty()) bad = "translation uses " + join(lang);
      else if (p != d) bad = "projection has " + std::to_string(p.size()) + " solutions, direct " + std::to_string(d.size());
      if (!d.empty()) ++nonempty;
    } catch (const std::exception& e) {
      bad = e.what();
    }
    t.record(bad.empty(), ni.name + " on " + sigma.str() + ": " + bad);
  }
  for (const auto& [name, r] : std::vector<std::pair<std::string, AlgebraPresentation>>{
           {"Z/2", prime_field(2)}, {"Z/3", cyclic_ring(3)}, {"Z/4", cyclic_ring(4)}, {"F2 x F2", f2_product()}, {"F4", f4()}}) {
    std::string bad;
    try {
      const ScalarRing z = z_sym(multiplication(r));
      const Interpretation phi = interp_zsym(multiplication(r));
      const SortInterp& si = phi.sort("Z");
      const std::size_t dom = interface_solutions(si.domain, phi.target, cap).size();
      if (!(Cardinality::finite(static_cast<long long>(dom)) == z.cardinality())) bad = "domain has " + std::to_string(dom) + " tuples";
      for (bool product : {true, false}) {
        EqSystem sigma;
        for (const char* v : {"x", "y", "z"}) sigma.add_variable(v, "Z");
        Term lhs = product ? Term::mul(Term::var("x"), Term::var("y")) : Term::add(Term::var("x"), Term::var("y"));
        sigma.add_equation(lhs, Term::var("z"));
        const Translation tr = translate(sigma, phi);
        const std::set<Key> d = direct(phi.source, sigma, cap);
        if (bad.empty() && projected(phi, sigma, tr, eval_projected(phi.target, tr.system, provenance_order(sigma, tr), cap)) != d)
          bad = product ? "multiplication graph differs" : "addition graph differs";
        if (bad.empty() && !(Cardinality::finite(static_cast<long long>(d.size())) == Cardinality::finite(z.cardinality().count * z.cardinality().count)))
          bad = "graph is not a function";
      }
    } catch (const std::exception& e) {
      bad = e.what();
    }
    t.record(bad.empty(), "Z(Sym) certificate on " + name + ": " + bad);
  }
  t.note(std::to_string(pool.size()) + " interpretations, " + std::to_string(nonempty) + " satisfiable systems");
  if (refused > 0) t.note(std::to_string(refused) + " quotients not certifiable");
  return t;
}

// ---------------------------------------------------------------- C7

Tally decision_vs_oracle(const Fixtures& fx) {
  Tally t("systems");
  gen::Rng rng(71);
  const Integer cap = 10000000;
  int sat = 0;
  for (int n = 0; n < 300; ++n) {
    const NamedAlgebra& na = fx.finite[static_cast<std::size_t>(n) % fx.finite.size()];
    const AlgebraPresentation& r = na.algebra;
    const Structure st = Structure::of_algebra(r, "R");
    const std::vector<Element> els = r.module.elements(64);
    const bool big = els.size() > 16;
    const Annihilators ann = annihilators(r.as_bilinear());
    const Integer leaves = ann.left.quotient().cardinality().count * ann.right.quotient().cardinality().count;
    EqSystem sigma;
    for (int attempt = 0;; ++attempt) {
      gen::TermShape shape;
      shape.sort = "R";
      shape.variables = {"x"};
      const long long vars = rng.uniform(1, big ? 2 : 4);
      if (vars > 1) shape.variables.push_back("y");
      if (vars > 2) shape.variables.push_back("z");
      if (vars > 3) shape.variables.push_back("w");
      for (int k = 0; k < 2; ++k) shape.constants.push_back(rng.pick(els));
      sigma = gen::system(rng, shape, static_cast<int>(rng.uniform(1, big ? 2 : 4)));
      if (rng.coin(0.6)) {
        // Right-hand side evaluated at a random point, so the system is satisfiable.
        std::map<std::string, Element> env;
        for (const std::string& v : shape.variables) env[v] = rng.pick(els);
        const EqSystem ann = annotate(sigma, st);
        for (std::size_t e = 0; e < sigma.equations.size(); ++e)
          sigma.equations[e].rhs = Term::constant(st.evaluate(ann.equations[e].lhs, env), "R");
      }
      const std::size_t products = normalize(sigma, st).products.size();
      Integer tree = 1;
      for (std::size_t k = 0; k < products; ++k) tree *= leaves;
      if (products >= 1 && products <= (big ? 2u : 3u) && tree <= Integer(1) << 16) break;
      if (attempt > 100) throw std::logic_error("no system with a suitable number of products");
    }
    std::string bad;
    try {
      const Solutions brute = brute_force(r, sigma, cap);
      const Verdict v = decide_finite_square(r, sigma);
      std::set<Key> all;
      for (const auto& row : brute.assignments) all.insert(key_of(row));
      if (v.status == Verdict::Status::Refused) bad = "refused: " + v.message;
      else if ((v.status == Verdict::Status::Sat) != !all.empty()) bad = v.status_name() + " but brute force finds " + std::to_string(all.size());
      else if (v.status == Verdict::Status::Sat && !all.count(key_of(v.witness))) bad = "witness is not a solution";
      if (!all.empty()) ++sat;
    } catch (const std::exception& e) {
      bad = e.what();
    }
    t.record(bad.empty(), na.name + " on " + sigma.str() + ": " + bad);
  }
  // Infinite carrier, finite square.
  const AlgebraPresentation r = z_plus_z2();
  const Structure st = Structure::of_algebra(r, "R");
  auto c = [](std::vector<long long> v) { return Term::constant(make_vector(v), "R"); };
  Term x = Term::var("x"), y = Term::var("y");
  EqSystem s;
  s.add_variable("x", "R");
  s.add_variable("y", "R");
  s.add_equation(Term::mul(x, y), c({0, 1}));
  EqSystem u;
  u.add_variable("x", "R");
  u.add_equation(Term::mul(x, x), c({0, 1}));
  u.add_equation(Term::add(x, x), c({0, 0}));
  EqSystem w;
  w.add_variable("x", "R");
  w.add_variable("y", "R");
  w.add_equation(Term::add(Term::mul(x, y), Term::smul(3, x)), c({3, 1}));
  for (const auto& [sigma, expected] : std::vector<std::pair<EqSystem, Verdict::Status>>{
           {s, Verdict::Status::Sat}, {u, Verdict::Status::Unsat}, {w, Verdict::Status::Sat}}) {
    std::string bad;
    const Verdict v = decide_finite_square(r, sigma);
    if (v.status != expected) bad = "verdict " + v.status_name();
    if (bad.empty() && v.status == Verdict::Status::Sat) {
      std::map<std::string, Element> env;
      for (std::size_t i = 0; i < v.variables.size(); ++i) env[v.variables[i]] = v.witness[i];
      if (!st.satisfies(annotate(sigma, st), env)) bad = "witness fails";
    }
    t.record(bad.empty(), "Z + Z/2 on " + sigma.str() + ": " + bad);
  }
  t.note(std::to_string(sat) + " satisfiable");
  return t;
}

// ---------------------------------------------------------------- C8, C9

Integer power_of(Index r, Index d) {
  Integer p = 1;
  for (Index i = 0; i < d; ++i) p *= r;
  return p;
}

Integer binomial(Index n, Index k) {
  Integer b = 1;
  for (Index i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

int mobius(Index n) {
  int mu = 1;
  for (Index p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    mu = -mu;
  }
  return n > 1 ? -mu : mu;
}

Integer witt(Index r, Index d) {
  Integer s = 0;
  for (Index e = 1; e <= d; ++e)
    if (d % e == 0) s += mobius(e) * power_of(r, d / e);
  return s / d;
}

// Antisymmetry and Jacobi on all basis triples, through a sparse copy of the table.
std::string lie_identities(const AlgebraPresentation& a) {
  const Index n = a.ngens();
  using Sparse = std::vector<std::pair<Index, long long>>;
  std::vector<std::vector<Sparse>> table(static_cast<std::size_t>(n), std::vector<Sparse>(static_cast<std::size_t>(n)));
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      const Element& e = a.mult[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      const Element& f = a.mult[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
      if (i == j && !is_zero(e)) return "[b" + std::to_string(i) + ", b" + std::to_string(i) + "] != 0";
      if (!is_zero(Vector(e + f))) return "antisymmetry fails";
      for (Index k = 0; k < n; ++k)
        if (e(k) != 0) table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].push_back({k, static_cast<long long>(e(k))});
    }
  std::vector<long long> acc(static_cast<std::size_t>(n));
  auto add_bracket = [&](Index i, const Sparse& v) {
    for (const auto& [m, c] : v)
      for (const auto& [k, d] : table[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)]) acc[static_cast<std::size_t>(k)] += c * d;
  };
  auto at = [&](Index i, Index j) -> const Sparse& { return table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; };
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j)
      for (Index k = j; k < n; ++k) {
        std::fill(acc.begin(), acc.end(), 0);
        add_bracket(i, at(j, k));
        add_bracket(j, at(k, i));
        add_bracket(k, at(i, j));
        for (long long c : acc)
          if (c != 0) return "Jacobi fails on b" + std::to_string(i) + ", b" + std::to_string(j) + ", b" + std::to_string(k);
      }
  return "";
}

// Right-normed products of length >= n span the ideal generated by those of length n.
std::string right_normed_ideals(const FreeTruncation& tf) {
  const AlgebraPresentation& a = tf.algebra;
  std::vector<Element> letters;
  for (std::size_t i = 0; i < tf.words.size(); ++i)
    if (tf.words[i].size() == 1) letters.push_back(a.module.generator(static_cast<Index>(i)));
  Matrix t(static_cast<Index>(letters.size()), a.ngens());
  for (std::size_t i = 0; i < letters.size(); ++i) t.row(static_cast<Index>(i)) = letters[i].transpose();
  const int top = static_cast<int>(tf.graded_dims.size());
  std::vector<std::vector<Element>> by_length(static_cast<std::size_t>(top + 1));
  std::vector<std::vector<Element>> seqs{{}};
  for (int len = 1; len <= top; ++len) {
    std::vector<std::vector<Element>> next;
    for (const auto& s : seqs)
      for (const Element& l : letters) {
        next.push_back(s);
        next.back().push_back(l);
        by_length[static_cast<std::size_t>(len)].push_back(right_normed(a, next.back()));
      }
    seqs = std::move(next);
  }
  auto rows = [&](int from, int to) {
    std::vector<Element> v;
    for (int len = from; len <= to; ++len) v.insert(v.end(), by_length[static_cast<std::size_t>(len)].begin(), by_length[static_cast<std::size_t>(len)].end());
    Matrix m(static_cast<Index>(v.size()), a.ngens());
    for (std::size_t i = 0; i < v.size(); ++i) m.row(static_cast<Index>(i)) = v[i].transpose();
    return m;
  };
  if (!is_right_normed_generated(a)) return "not generated in degree 1";
  for (int n = 1; n <= top; ++n) {
    const Submodule span(a.module, rows(n, top));
    if (!(ideal_closure(a, rows(n, n)) == span)) return "ideal closure differs at n = " + std::to_string(n);
    if (!(ideal_In(a, t, n) == span)) return "I_n differs at n = " + std::to_string(n);
  }
  return "";
}

Tally free_dimensions() {
  Tally t("checks");
  const Scalars z = Scalars::integers();
  for (FreeKind kind : {FreeKind::AssocNoncomm, FreeKind::AssocComm, FreeKind::Lie})
    for (Index rank = 1; rank <= 4; ++rank)
      for (int bound = 2; bound <= 6; ++bound)
        for (bool unital : {false, true}) {
          if (kind == FreeKind::Lie && unital) continue;
          const FreeTruncationSpec spec{kind, rank, unital, bound, z};
          const std::string name = free_kind_name(kind) + " rank " + std::to_string(rank) + " degree < " + std::to_string(bound) +
                                   (unital ? " unital" : "");
          const FreeBasis fb = free_basis(spec);
          std::string bad;
          Integer total = unital ? 1 : 0;
          for (int d = 1; d < bound; ++d) {
            const Integer expected = kind == FreeKind::AssocNoncomm ? power_of(rank, d)
                                     : kind == FreeKind::AssocComm  ? binomial(rank + d - 1, d)
                                                                    : witt(rank, d);
            if (Integer(fb.graded_dims[static_cast<std::size_t>(d - 1)]) != expected)
              bad = "degree " + std::to_string(d) + " has " + std::to_string(fb.graded_dims[static_cast<std::size_t>(d - 1)]) +
                    ", expected " + expected.str();
            total += expected;
          }
          if (bad.empty() && Integer(static_cast<long long>(fb.words.size())) != total) bad = "basis size";
          const bool dense = static_cast<long long>(fb.words.size()) <= 120 || (kind == FreeKind::Lie && (rank <= 3 || bound <= 5));
          if (bad.empty() && dense) {
            const FreeTruncation tf = truncated_free(spec);
            if (tf.words != fb.words || tf.graded_dims != fb.graded_dims) bad = "dense truncation has another basis";
            if (bad.empty() && kind == FreeKind::Lie) bad = lie_identities(tf.algebra);
            if (bad.empty() && kind == FreeKind::Lie && rank <= 3 && bound <= 5) bad = right_normed_ideals(tf);
          }
          t.record(bad.empty(), name + ": " + bad);
        }
  return t;
}

Tally square_infinite() {
  Tally t("truncations");
  for (FreeKind kind : {FreeKind::AssocNoncomm, FreeKind::Lie})
    for (int bound = 2; bound <= 6; ++bound) {
      const FreeTruncation tf = truncated_free({kind, 2, false, bound, Scalars::integers()});
      const Cardinality c = square_span(tf.algebra).cardinality();
      const bool expect_infinite = bound >= 3;
      const bool ok = expect_infinite ? c.kind == Cardinality::Kind::Infinite : c.kind == Cardinality::Kind::Zero;
      t.record(ok, free_kind_name(kind) + " degree < " + std::to_string(bound) + ": square is " + c.str());
    }
  return t;
}

double elapsed(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

}  // namespace

Fixtures default_fixtures() {
  Fixtures fx;
  for (int order = 1; order <= 16; ++order) {
    const std::vector<oracle::SmallRing> rings = oracle::commutative_unital_rings(order);
    for (std::size_t k = 0; k < rings.size(); ++k) {
      AlgebraPresentation a = oracle::to_algebra(rings[k]);
      fx.census.push_back({"R" + std::to_string(order) + "." + std::to_string(k + 1), a});
    }
  }
  fx.infinite = {{"Z", integer_ring()}, {"Z[i]", gaussian_integers()}, {"Z[sqrt 2]", root_two_integers()}};
  const Scalars z = Scalars::integers();
  fx.forms.push_back({"Z/256", multiplication(cyclic_ring(256))});
  fx.forms.push_back({"Z/16 x Z/16", multiplication(cyclic_square(16))});
  fx.forms.push_back({"(Z/16)[i]", multiplication(gaussian_mod(16))});
  fx.forms.push_back({"M2(F2)", multiplication(matrix_ring_f2())});
  fx.forms.push_back({"T2(F2)", multiplication(upper_triangular_f2())});
  {
    FgModule n = FgModule::cyclic_sum(z, {2, 4});
    FgModule c = FgModule::cyclic_sum(z, {4});
    BilinearTensor f = BilinearTensor::zero(n, n, c);
    f.tensor[0][0] = make_vector({2});
    f.tensor[1][1] = make_vector({1});
    fx.forms.push_back({"2 x1 y1 + x2 y2 on Z/2 + Z/4", f});
  }
  {
    FgModule n = FgModule::cyclic_sum(z, {4, 4});
    FgModule c = FgModule::cyclic_sum(z, {4});
    BilinearTensor f = BilinearTensor::zero(n, n, c);
    f.tensor[0][1] = make_vector({1});
    f.tensor[1][0] = make_vector({-1});
    fx.forms.push_back({"x1 y2 - x2 y1 on (Z/4)^2", f});
  }
  for (const NamedAlgebra& r : fx.census)
    if (r.algebra.module.cardinality().kind != Cardinality::Kind::Zero) fx.finite.push_back(r);
  const Scalars f2 = Scalars::modular(2);
  fx.finite.push_back({"F2[t]/t^6", f2_truncated_polynomial(6)});
  fx.finite.push_back({"M2(F2)", matrix_ring_f2()});
  fx.finite.push_back({"T2(F2)", upper_triangular_f2()});
  fx.finite.push_back({"free assoc rank 2 degree < 3 over F2", truncated_free({FreeKind::AssocNoncomm, 2, false, 3, f2}).algebra});
  fx.finite.push_back({"free comm rank 2 degree < 3 over F2", truncated_free({FreeKind::AssocComm, 2, false, 3, f2}).algebra});
  fx.finite.push_back({"free Lie rank 2 degree < 4 over F2", truncated_free({FreeKind::Lie, 2, false, 4, f2}).algebra});
  fx.finite.push_back({"free Lie rank 3 degree < 3 over F2", truncated_free({FreeKind::Lie, 3, false, 3, f2}).algebra});
  fx.finite.push_back({"Z/8 x Z/8", cyclic_square(8)});
  return fx;
}

void corrupt_structure_constant(Fixtures& f, std::size_t ring) {
  AlgebraPresentation& a = f.census.at(ring).algebra;
  if (a.module.is_trivial()) throw ValidationError("invalid fixture", "census ring " + std::to_string(ring) + " is the zero ring");
  const std::size_t last = a.mult.size() - 1;
  a.mult[last][last](0) += 1;
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {"C1", "modules", "Smith normal form and linear solve over Z/m", 10},
      {"C2", "scalars", "Sym agrees with brute force", 60},
      {"C3", "scalars", "Z(Sym) of a ring multiplication is the ring", 0},
      {"C4", "scalars", "trichotomy on random tensors", 0},
      {"C5", "scalars", "largest ring inside Z(Sym) inside Sym", 0},
      {"C6", "interp", "translated solutions project onto direct solutions", 120},
      {"C7", "solver", "finite-square decision agrees with brute force", 0},
      {"C8", "algebra", "free nilpotent dimensions and identities", 60},
      {"C9", "algebra", "square of a free truncation is infinite", 0},
  };
  return all;
}

bool selected(const Criterion& c, const std::string& filter) {
  if (filter.empty()) return true;
  std::stringstream ss(filter);
  std::string token;
  while (std::getline(ss, token, ','))
    if (token == c.id || token == c.group || token == c.id.substr(1)) return true;
  return false;
}

std::vector<Result> run(const Fixtures& fixtures, const std::string& filter) {
  const std::map<std::string, std::function<Tally()>> body{
      {"C1", [] { return smith_and_solve(); }},
      {"C2", [&] { return sym_oracle(fixtures); }},
      {"C3", [&] { return center_iso(fixtures); }},
      {"C4", [] { return trichotomy(); }},
      {"C5", [&] { return ring_chain(fixtures); }},
      {"C6", [&] { return interpretation_soundness(fixtures); }},
      {"C7", [&] { return decision_vs_oracle(fixtures); }},
      {"C8", [] { return free_dimensions(); }},
      {"C9", [] { return square_infinite(); }},
  };
  std::vector<Result> out;
  for (const Criterion& c : criteria()) {
    if (!selected(c, filter)) continue;
    Result r{c.id, c.group, c.title, false, "", 0, c.budget};
    const auto start = std::chrono::steady_clock::now();
    try {
      const Tally t = body.at(c.id)();
      r.pass = t.ok();
      r.detail = t.detail();
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = elapsed(start);
    if (r.pass && r.budget > 0 && r.seconds > r.budget) {
      r.pass = false;
      r.detail += "; over the time budget";
    }
    out.push_back(r);
  }
  return out;
}

}  // namespace cf::selftest
