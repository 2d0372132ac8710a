#include "cf/oracle.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

namespace cf::oracle {

int Group::size() const {
  int n = 1;
  for (int d : orders) n *= d;
  return n;
}

Coords Group::reduce(Coords x) const {
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = ((x[i] % orders[i]) + orders[i]) % orders[i];
  return x;
}

Coords Group::add(const Coords& a, const Coords& b) const {
  Coords c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = (a[i] + b[i]) % orders[i];
  return c;
}

Coords Group::scale(long long c, const Coords& a) const {
  Coords out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    long long v = (c % orders[i]) * a[i] % orders[i];
    out[i] = static_cast<int>((v + orders[i]) % orders[i]);
  }
  return out;
}

int Group::index(const Coords& x) const {
  int idx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) idx = idx * orders[i] + x[i];
  return idx;
}

Coords Group::element(int index) const {
  Coords x(orders.size());
  for (std::size_t i = orders.size(); i-- > 0;) {
    x[i] = index % orders[i];
    index /= orders[i];
  }
  return x;
}

std::vector<Coords> Group::elements() const {
  std::vector<Coords> out;
  for (int i = 0; i < size(); ++i) out.push_back(element(i));
  return out;
}

std::vector<Coords> Group::torsion(int n) const {
  std::vector<Coords> out;
  for (const Coords& x : elements())
    if (scale(n, x) == zero()) out.push_back(x);
  return out;
}

Group group_of(const FgModule& m) {
  Group g;
  const long long mod = m.scalars().is_modular() ? static_cast<long long>(m.scalars().modulus()) : 0;
  g.orders.assign(static_cast<std::size_t>(m.ngens()), static_cast<int>(mod));
  const Matrix& r = m.relations();
  for (Index j = 0; j < r.rows(); ++j) {
    Index col = -1;
    for (Index i = 0; i < r.cols(); ++i)
      if (r(j, i) != 0) {
        if (col >= 0) throw std::invalid_argument("relators must involve one generator each");
        col = i;
      }
    if (col < 0) continue;
    long long v = std::llabs(static_cast<long long>(r(j, col)));
    int& o = g.orders[static_cast<std::size_t>(col)];
    o = static_cast<int>(std::gcd(static_cast<long long>(o), v));
  }
  for (int o : g.orders)
    if (o == 0) throw std::invalid_argument("infinite group");
  return g;
}

Coords coords_of(const Element& x) {
  Coords c;
  for (Index i = 0; i < x.size(); ++i) c.push_back(static_cast<int>(static_cast<long long>(x(i))));
  return c;
}

Coords Form::apply(const Coords& x, const Coords& y) const {
  Coords z = out.zero();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!x[i]) continue;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (y[j]) z = out.add(z, out.scale(static_cast<long long>(x[i]) * y[j], table[i][j]));
  }
  return z;
}

Form form_of(const BilinearTensor& f) {
  Form out{group_of(f.A), group_of(f.B), group_of(f.C), {}};
  for (const auto& row : f.tensor) {
    std::vector<Coords> r;
    for (const Element& e : row) r.push_back(out.out.reduce(coords_of(e)));
    out.table.push_back(std::move(r));
  }
  return out;
}

Coords act(const Group& g, const Endo& a, const Coords& x) {
  Coords z = g.zero();
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i]) z = g.add(z, g.scale(x[i], a[i]));
  return z;
}

namespace {

Coords unit_coords(const Group& g, std::size_t i) {
  Coords c = g.zero();
  c[i] = 1 % g.orders[i];
  return c;
}

void each_endomorphism(const Group& g, const std::function<void(const Endo&)>& visit) {
  std::vector<std::vector<Coords>> choices;
  for (int d : g.orders) choices.push_back(g.torsion(d));
  Endo a(g.orders.size());
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == a.size()) {
      visit(a);
      return;
    }
    for (const Coords& c : choices[i]) {
      a[i] = c;
      rec(i + 1);
    }
  };
  rec(0);
}

}  // namespace

std::vector<Endo> endomorphisms(const Group& g) {
  std::vector<Endo> out;
  each_endomorphism(g, [&](const Endo& a) { out.push_back(a); });
  return out;
}

std::uint64_t endomorphism_count(const Group& g) {
  std::uint64_t n = 1;
  for (int d : g.orders) n *= g.torsion(d).size();
  return n;
}

std::vector<Endo> symmetric_endomorphisms(const Form& f) {
  const Group& g = f.left;
  const std::vector<Coords> all = g.elements();
  std::vector<Endo> out;
  each_endomorphism(g, [&](const Endo& a) {
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < a.size(); ++j)
        if (f.apply(a[i], unit_coords(g, j)) != f.apply(unit_coords(g, i), a[j])) return;
    for (const Coords& x : all) {
      const Coords ax = act(g, a, x);
      for (const Coords& y : all)
        if (f.apply(ax, y) != f.apply(x, act(g, a, y))) return;
    }
    out.push_back(a);
  });
  return out;
}

std::vector<Coords> left_annihilator(const Form& f) {
  std::vector<Coords> out;
  const std::vector<Coords> ys = f.right.elements();
  for (const Coords& x : f.left.elements())
    if (std::all_of(ys.begin(), ys.end(), [&](const Coords& y) { return f.apply(x, y) == f.out.zero(); })) out.push_back(x);
  return out;
}

std::vector<Coords> right_annihilator(const Form& f) {
  std::vector<Coords> out;
  const std::vector<Coords> xs = f.left.elements();
  for (const Coords& y : f.right.elements())
    if (std::all_of(xs.begin(), xs.end(), [&](const Coords& x) { return f.apply(x, y) == f.out.zero(); })) out.push_back(y);
  return out;
}

Coords SmallRing::multiply(const Coords& x, const Coords& y) const {
  Coords z = group.zero();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!x[i]) continue;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (y[j]) z = group.add(z, group.scale(static_cast<long long>(x[i]) * y[j], table[i][j]));
  }
  return z;
}

namespace {

// Invariant factor lists d_1 | d_2 | ... with product n.
void factor_chains(int n, int first, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (n == 1) {
    out.push_back(cur);
    return;
  }
  for (int d = first; d <= n; ++d) {
    if (n % d || (cur.size() && d % cur.back())) continue;
    // remaining factors are multiples of d
    cur.push_back(d);
    factor_chains(n / d, d, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<SmallRing> commutative_unital_rings(int order) {
  std::vector<SmallRing> out;
  if (order == 1) {
    SmallRing z{Group{{1}}, {{Coords{0}}}, Coords{0}};
    out.push_back(z);
    return out;
  }
  std::vector<std::vector<int>> chains;
  std::vector<int> cur;
  factor_chains(order, 2, cur, chains);
  for (const std::vector<int>& orders : chains) {
    Group g{orders};
    const std::size_t k = orders.size(), u = k - 1;
    SmallRing r{g, std::vector<std::vector<Coords>>(k, std::vector<Coords>(k)), unit_coords(g, u)};
    std::vector<std::vector<bool>> known(k, std::vector<bool>(k, false));
    for (std::size_t i = 0; i < k; ++i) {
      r.table[i][u] = r.table[u][i] = unit_coords(g, i);
      known[i][u] = known[u][i] = true;
    }
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < u; ++i)
      for (std::size_t j = i; j < u; ++j) pairs.push_back({i, j});
    // Product x e_c when every needed entry is known.
    auto times = [&](const Coords& x, std::size_t c, Coords& z) {
      z = g.zero();
      for (std::size_t m = 0; m < k; ++m) {
        if (!x[m]) continue;
        if (!known[m][c]) return false;
        z = g.add(z, g.scale(x[m], r.table[m][c]));
      }
      return true;
    };
    auto associative_so_far = [&]() {
      Coords lhs, rhs;
      for (std::size_t a = 0; a < u; ++a)
        for (std::size_t b = 0; b < u; ++b)
          for (std::size_t c = 0; c < u; ++c) {
            if (!known[a][b] || !known[b][c]) continue;
            if (!times(r.table[a][b], c, lhs)) continue;
            if (!times(r.table[b][c], a, rhs)) continue;
            if (lhs != rhs) return false;
          }
      return true;
    };
    std::vector<SmallRing> found;
    std::function<void(std::size_t)> rec = [&](std::size_t p) {
      if (p == pairs.size()) {
        found.push_back(r);
        return;
      }
      auto [i, j] = pairs[p];
      for (const Coords& c : g.torsion(std::gcd(orders[i], orders[j]))) {
        r.table[i][j] = r.table[j][i] = c;
        known[i][j] = known[j][i] = true;
        if (associative_so_far()) rec(p + 1);
        known[i][j] = known[j][i] = false;
      }
    };
    rec(0);
    // Automorphisms of the group fixing 1.
    std::vector<Endo> autos;
    for (const Endo& a : endomorphisms(g)) {
      if (a[u] != r.one) continue;
      std::set<int> image;
      for (const Coords& x : g.elements()) image.insert(g.index(act(g, a, x)));
      if (static_cast<int>(image.size()) == g.size()) autos.push_back(a);
    }
    std::vector<std::vector<int>> inverses;
    for (const Endo& a : autos) {
      std::vector<int> inverse(static_cast<std::size_t>(g.size()));
      for (const Coords& x : g.elements()) inverse[static_cast<std::size_t>(g.index(act(g, a, x)))] = g.index(x);
      inverses.push_back(std::move(inverse));
    }
    std::vector<std::vector<int>> images;
    for (const Endo& a : autos) {
      std::vector<int> im;
      for (const Coords& c : a) im.push_back(g.index(c));
      images.push_back(std::move(im));
    }
    const std::size_t n = static_cast<std::size_t>(g.size());
    const std::vector<Coords> all = g.elements();
    std::set<std::vector<int>> classes;
    for (const SmallRing& s : found) {
      std::vector<int> mul(n * n);
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) mul[x * n + y] = g.index(s.multiply(all[x], all[y]));
      std::vector<int> best, key(k * k);
      for (std::size_t t = 0; t < autos.size(); ++t) {
        const std::vector<int>& im = images[t];
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j)
            key[i * k + j] = inverses[t][static_cast<std::size_t>(mul[static_cast<std::size_t>(im[i]) * n + static_cast<std::size_t>(im[j])])];
        if (best.empty() || key < best) best = key;
      }
      if (classes.insert(best).second) out.push_back(s);
    }
  }
  return out;
}

AlgebraPresentation to_algebra(const SmallRing& r) {
  AlgebraPresentation a;
  std::vector<Integer> orders;
  for (int d : r.group.orders) orders.push_back(d);
  a.module = FgModule::cyclic_sum(Scalars::integers(), orders);
  for (const auto& row : r.table) {
    std::vector<Element> out;
    for (const Coords& c : row) {
      Vector v(static_cast<Index>(c.size()));
      for (std::size_t i = 0; i < c.size(); ++i) v(static_cast<Index>(i)) = c[i];
      out.push_back(v);
    }
    a.mult.push_back(std::move(out));
  }
  a.flags.associative = true;
  a.flags.commutative = true;
  Vector one(static_cast<Index>(r.one.size()));
  for (std::size_t i = 0; i < r.one.size(); ++i) one(static_cast<Index>(i)) = r.one[i];
  a.flags.identity = one;
  return a;
}

Integer determinant(const Matrix& input) {
  Matrix m = input;
  const Index n = m.rows();
  if (n == 0) return 1;
  Integer sign = 1, prev = 1;
  for (Index k = 0; k < n - 1; ++k) {
    if (m(k, k) == 0) {
      Index p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.row(k).swap(m.row(p));
      sign = -sign;
    }
    for (Index i = k + 1; i < n; ++i)
      for (Index j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

}  // namespace cf::oracle
