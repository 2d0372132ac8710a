#include "cf/algebra.hpp"

#include <algorithm>
#include <deque>

#include "cf/error.hpp"

namespace cf {

Element AlgebraPresentation::multiply(const Element& x, const Element& y) const {
  Element z = module.zero();
  for (Index i = 0; i < ngens(); ++i) {
    if (x(i) == 0) continue;
    for (Index j = 0; j < ngens(); ++j)
      if (y(j) != 0) z += (x(i) * y(j)) * mult[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return z;
}

BilinearTensor AlgebraPresentation::as_bilinear() const { return {module, module, module, mult}; }

namespace {

std::string gen_name(const AlgebraPresentation& a, Index i) {
  if (static_cast<Index>(a.labels.size()) == a.ngens()) return a.labels[static_cast<std::size_t>(i)];
  return "r" + std::to_string(i + 1);
}

const Element& entry(const AlgebraPresentation& a, Index i, Index j) {
  return a.mult[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
}

}  // namespace

std::vector<std::string> validate_algebra(const AlgebraPresentation& a) {
  std::vector<std::string> out;
  const Index n = a.ngens();
  if (static_cast<Index>(a.mult.size()) != n) return {"multiplication table must have " + std::to_string(n) + " rows"};
  for (const auto& row : a.mult) {
    if (static_cast<Index>(row.size()) != n) return {"multiplication rows must have " + std::to_string(n) + " entries"};
    for (const Element& e : row)
      if (e.size() != n) return {"products must have " + std::to_string(n) + " coordinates"};
  }
  for (const Violation& v : validate(a.as_bilinear())) out.push_back("multiplication is not well defined: " + v.str());
  const FgModule& m = a.module;
  auto e = [&](Index i) { return m.generator(i); };
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      const std::string ij = gen_name(a, i) + ", " + gen_name(a, j);
      if (a.flags.commutative && !m.equal(entry(a, i, j), entry(a, j, i))) out.push_back("not commutative on " + ij);
      if (a.flags.lie) {
        if (i == j && !m.is_zero(entry(a, i, i))) out.push_back("square of " + gen_name(a, i) + " is not zero");
        if (!m.is_zero(Vector(entry(a, i, j) + entry(a, j, i)))) out.push_back("not anticommutative on " + ij);
      }
      for (Index k = 0; k < n; ++k) {
        const std::string ijk = ij + ", " + gen_name(a, k);
        if (a.flags.associative) {
          Element l = a.multiply(entry(a, i, j), e(k));
          Element r = a.multiply(e(i), entry(a, j, k));
          if (!m.equal(l, r)) out.push_back("not associative on " + ijk);
        }
        if (a.flags.lie && i <= j && j <= k) {
          Element s = a.multiply(e(i), entry(a, j, k)) + a.multiply(e(j), entry(a, k, i)) + a.multiply(e(k), entry(a, i, j));
          if (!m.is_zero(s)) out.push_back("Jacobi identity fails on " + ijk);
        }
      }
    }
  if (a.flags.identity) {
    const Element& one = *a.flags.identity;
    if (one.size() != n) {
      out.push_back("identity must have " + std::to_string(n) + " coordinates");
    } else {
      for (Index i = 0; i < n; ++i)
        if (!m.equal(a.multiply(one, e(i)), e(i)) || !m.equal(a.multiply(e(i), one), e(i)))
          out.push_back("identity law fails on " + gen_name(a, i));
    }
  }
  if (a.flags.degrees) {
    const std::vector<int>& d = *a.flags.degrees;
    if (static_cast<Index>(d.size()) != n) {
      out.push_back("degrees must list one entry per generator");
    } else {
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j)
          for (Index k = 0; k < n; ++k)
            if (entry(a, i, j)(k) != 0 && d[static_cast<std::size_t>(k)] != d[static_cast<std::size_t>(i)] + d[static_cast<std::size_t>(j)])
              out.push_back("product of " + gen_name(a, i) + " and " + gen_name(a, j) + " is not homogeneous");
    }
  }
  return out;
}

void require_valid_algebra(const AlgebraPresentation& a) {
  std::vector<std::string> v = validate_algebra(a);
  if (!v.empty()) throw ValidationError("invalid algebra", v.front());
}

Submodule square_span(const AlgebraPresentation& a) {
  Matrix g(a.ngens() * a.ngens(), a.ngens());
  for (Index i = 0; i < a.ngens(); ++i)
    for (Index j = 0; j < a.ngens(); ++j) g.row(i * a.ngens() + j) = entry(a, i, j).transpose();
  return Submodule(a.module, g).pruned();
}

Submodule ideal_closure(const AlgebraPresentation& a, const Matrix& gens) {
  const FgModule& m = a.module;
  Lattice l = Lattice::from_generators(m.effective_relations(), m.ngens());
  std::vector<Element> kept;
  std::deque<Element> queue;
  auto offer = [&](const Element& x) {
    if (l.contains(x)) return;
    l = l.add(x);
    kept.push_back(x);
    queue.push_back(x);
  };
  for (Index i = 0; i < gens.rows(); ++i) offer(gens.row(i).transpose());
  while (!queue.empty()) {
    Element g = queue.front();
    queue.pop_front();
    for (Index i = 0; i < a.ngens(); ++i) {
      offer(a.multiply(m.generator(i), g));
      offer(a.multiply(g, m.generator(i)));
    }
  }
  Matrix out(static_cast<Index>(kept.size()), m.ngens());
  for (std::size_t i = 0; i < kept.size(); ++i) out.row(static_cast<Index>(i)) = kept[i].transpose();
  return Submodule(m, out);
}

bool is_ideal(const AlgebraPresentation& a, const Submodule& s) {
  for (Index r = 0; r < s.size(); ++r) {
    Element g = s.generators().row(r).transpose();
    for (Index i = 0; i < a.ngens(); ++i)
      if (!s.contains(a.multiply(a.module.generator(i), g)) || !s.contains(a.multiply(g, a.module.generator(i))))
        return false;
  }
  return true;
}

Element right_normed(const AlgebraPresentation& a, const std::vector<Element>& factors) {
  Element z = factors.back();
  for (std::size_t k = factors.size() - 1; k-- > 0;) z = a.multiply(factors[k], z);
  return z;
}

bool is_right_normed_generated(const AlgebraPresentation& a) {
  if (!a.flags.degrees) return false;
  const std::vector<int>& d = *a.flags.degrees;
  const Index n = a.ngens();
  int top = 0;
  for (int x : d) top = std::max(top, x);
  for (int deg = 2; deg <= top; ++deg) {
    std::vector<Element> products;
    for (Index i = 0; i < n; ++i) {
      if (d[static_cast<std::size_t>(i)] != 1) continue;
      for (Index j = 0; j < n; ++j)
        if (d[static_cast<std::size_t>(j)] == deg - 1) products.push_back(entry(a, i, j));
    }
    Matrix p(static_cast<Index>(products.size()), n);
    for (std::size_t k = 0; k < products.size(); ++k) p.row(static_cast<Index>(k)) = products[k].transpose();
    Submodule span(a.module, p);
    for (Index j = 0; j < n; ++j)
      if (d[static_cast<std::size_t>(j)] == deg && !span.contains(a.module.generator(j))) return false;
  }
  for (Index j = 0; j < n; ++j)
    if (d[static_cast<std::size_t>(j)] < 1) return false;
  return true;
}

namespace {

// All sequences of length k over t's rows, first index slowest.
template <class F>
void for_each_tuple(Index size, int k, F&& f) {
  std::vector<Index> idx(static_cast<std::size_t>(k), 0);
  if (size == 0) return;
  for (;;) {
    f(idx);
    int p = k - 1;
    while (p >= 0) {
      if (++idx[static_cast<std::size_t>(p)] < size) break;
      idx[static_cast<std::size_t>(p)] = 0;
      --p;
    }
    if (p < 0) return;
  }
}

}  // namespace

Submodule ideal_In(const AlgebraPresentation& a, const Matrix& t, int n) {
  require_valid_algebra(a);
  if (n < 1) throw ValidationError("invalid degree", "n must be at least 1");
  if (t.cols() != a.ngens() && t.rows() > 0) throw ValidationError("dimension mismatch", "elements of T must have " + std::to_string(a.ngens()) + " coordinates");
  if (a.unital()) {
    Submodule scalars_one(a.module, Matrix(a.flags.identity->transpose()));
    for (Index r = 0; r < t.rows(); ++r)
      if (scalars_one.contains(Vector(t.row(r).transpose())))
        throw ValidationError("invalid T", "element " + std::to_string(r) + " of T is a scalar multiple of 1");
  }
  std::vector<Element> factors(static_cast<std::size_t>(t.rows()));
  for (Index r = 0; r < t.rows(); ++r) factors[static_cast<std::size_t>(r)] = t.row(r).transpose();
  if (a.flags.associative) {
    std::vector<Element> products;
    for_each_tuple(t.rows(), n, [&](const std::vector<Index>& idx) {
      std::vector<Element> f;
      for (Index i : idx) f.push_back(factors[static_cast<std::size_t>(i)]);
      products.push_back(right_normed(a, f));
    });
    Matrix p(static_cast<Index>(products.size()), a.ngens());
    for (std::size_t k = 0; k < products.size(); ++k) p.row(static_cast<Index>(k)) = products[k].transpose();
    return ideal_closure(a, p);
  }
  if (a.flags.lie && a.flags.degrees && is_right_normed_generated(a)) {
    const std::vector<int>& d = *a.flags.degrees;
    for (const Element& f : factors)
      for (Index k = 0; k < a.ngens(); ++k)
        if (f(k) != 0 && d[static_cast<std::size_t>(k)] != 1)
          throw ValidationError("invalid T", "elements of T must be homogeneous of degree 1");
    int top = 0;
    for (int x : d) top = std::max(top, x);
    std::vector<Element> products;
    for (int len = n; len <= top; ++len)
      for_each_tuple(t.rows(), len, [&](const std::vector<Index>& idx) {
        std::vector<Element> f;
        for (Index i : idx) f.push_back(factors[static_cast<std::size_t>(i)]);
        products.push_back(right_normed(a, f));
      });
    if (n == 1) products.insert(products.end(), factors.begin(), factors.end());
    Matrix p(static_cast<Index>(products.size()), a.ngens());
    for (std::size_t k = 0; k < products.size(); ++k) p.row(static_cast<Index>(k)) = products[k].transpose();
    return Submodule(a.module, p).pruned();
  }
  throw Refusal("not certifiable", "I_n is computed only for associative algebras and simply graded Lie algebras");
}

AlgebraQuotient quotient_algebra(const AlgebraPresentation& a, const Submodule& ideal) {
  if (!is_ideal(a, ideal)) throw ValidationError("not an ideal", "the span is not closed under multiplication");
  AlgebraPresentation q = a;
  q.module = ideal.quotient();
  if (q.flags.degrees) {
    const std::vector<int>& d = *q.flags.degrees;
    for (Index r = 0; r < ideal.size() && q.flags.degrees; ++r) {
      int deg = -1;
      for (Index k = 0; k < a.ngens(); ++k) {
        if (ideal.generators()(r, k) == 0) continue;
        if (deg >= 0 && d[static_cast<std::size_t>(k)] != deg) {
          q.flags.degrees.reset();
          break;
        }
        deg = d[static_cast<std::size_t>(k)];
      }
    }
  }
  require_valid_algebra(q);
  return {q, {a.module, q.module, identity(a.ngens())}};
}

AlgebraQuotient quotient_by_In(const AlgebraPresentation& a, const Matrix& t, int n) {
  return quotient_algebra(a, ideal_In(a, t, n));
}

}  // namespace cf
