#include "cf/linear.hpp"

#include "cf/error.hpp"
#include "cf/lattice.hpp"
#include "cf/normal_form.hpp"

namespace cf {

Scalars Scalars::modular(const Integer& m) {
  if (m < 2) throw ValidationError("invalid scalars", "modulus must be at least 2, got " + m.str());
  Scalars s;
  s.modulus_ = m;
  return s;
}

std::string Scalars::name() const { return is_modular() ? "Z/" + modulus_.str() : "Z"; }

namespace {

LinearSolution solve_over_integers(const Matrix& a, const Vector& b) {
  const Index n = a.cols();
  LinearSolution out;
  SmithForm<Integer> s = smith_normal_form(a);
  Vector c = s.U * b;
  Vector y = Vector::Zero(n);
  for (Index i = 0; i < c.size(); ++i) {
    if (i < s.rank) {
      if (c(i) % s.diagonal[static_cast<std::size_t>(i)] != 0) return out;
      y(i) = c(i) / s.diagonal[static_cast<std::size_t>(i)];
    } else if (c(i) != 0) {
      return out;
    }
  }
  Matrix kernel_cols = s.V.rightCols(n - s.rank);
  Lattice kernel = Lattice::from_generators(Matrix(kernel_cols.transpose()), n);
  out.solvable = true;
  out.particular = kernel.reduce(s.V * y);
  out.kernel = kernel.basis();
  return out;
}

}  // namespace

LinearSolution solve_linear(const Matrix& a, const Vector& b, const Scalars& scalars) {
  if (a.rows() != b.size())
    throw ValidationError("dimension mismatch", "right-hand side length does not match row count");
  if (!scalars.is_modular()) return solve_over_integers(a, b);

  const Integer& m = scalars.modulus();
  const Index n = a.cols();
  Matrix extended(a.rows(), n + a.rows());
  extended.leftCols(n) = a;
  extended.rightCols(a.rows()) = m * identity(a.rows());
  LinearSolution z = solve_over_integers(extended, b);
  LinearSolution out;
  if (!z.solvable) return out;
  Matrix gens = stack_rows(Matrix(z.kernel.leftCols(n)), Matrix(m * identity(n)));
  Lattice kernel = Lattice::from_generators(gens, n);
  out.solvable = true;
  out.particular = kernel.reduce(Vector(z.particular.head(n)));
  std::vector<Index> keep;
  for (Index i = 0; i < kernel.rank(); ++i)
    if (kernel.basis()(i, kernel.pivots()[static_cast<std::size_t>(i)]) != m) keep.push_back(i);
  out.kernel = Matrix(static_cast<Index>(keep.size()), n);
  for (std::size_t r = 0; r < keep.size(); ++r)
    for (Index c = 0; c < n; ++c) out.kernel(static_cast<Index>(r), c) = mod_floor(kernel.basis()(keep[r], c), m);
  return out;
}

namespace {

using Small = long long;

Small reduce_small(Small a, Small m) {
  a %= m;
  return a < 0 ? a + m : a;
}

// Inverse of a modulo a coprime m.
Small inverse_small(Small a, Small m) {
  const Bezout<Small> e = extended_gcd(a, m);
  return reduce_small(e.s, m);
}

}  // namespace

std::optional<Vector> solve_congruences(const Matrix& a, const Vector& b, const Integer& modulus) {
  if (a.rows() != b.size())
    throw ValidationError("dimension mismatch", "right-hand side length does not match row count");
  if (modulus < 1 || modulus > Integer(1) << 30) throw ValidationError("invalid modulus", "expected 1 <= m <= 2^30");
  const Small m = static_cast<Small>(modulus);
  const Index rows = a.rows(), cols = a.cols();
  MatrixX<Small> d(rows, cols);
  VectorX<Small> c(rows);
  for (Index i = 0; i < rows; ++i) {
    c(i) = static_cast<Small>(mod_floor(b(i), modulus));
    for (Index j = 0; j < cols; ++j) d(i, j) = static_cast<Small>(mod_floor(a(i, j), modulus));
  }
  MatrixX<Small> v = MatrixX<Small>::Identity(cols, cols);
  // Row i <- s r_i + t r_k, row k <- u r_k - w r_i; the same on columns.
  auto mix_rows = [&](Index i, Index k, Small s, Small t, Small u, Small w) {
    for (Index j = 0; j < cols; ++j) {
      const Small x = d(i, j), y = d(k, j);
      d(i, j) = reduce_small(s * x + t * y, m);
      d(k, j) = reduce_small(u * y - w * x, m);
    }
    const Small x = c(i), y = c(k);
    c(i) = reduce_small(s * x + t * y, m);
    c(k) = reduce_small(u * y - w * x, m);
  };
  auto mix_cols = [&](Index i, Index k, Small s, Small t, Small u, Small w) {
    for (Index r = 0; r < rows; ++r) {
      const Small x = d(r, i), y = d(r, k);
      d(r, i) = reduce_small(s * x + t * y, m);
      d(r, k) = reduce_small(u * y - w * x, m);
    }
    for (Index r = 0; r < cols; ++r) {
      const Small x = v(r, i), y = v(r, k);
      v(r, i) = reduce_small(s * x + t * y, m);
      v(r, k) = reduce_small(u * y - w * x, m);
    }
  };
  Index t = 0;
  for (; t < rows && t < cols; ++t) {
    Index pi = -1, pj = -1;
    for (Index i = t; i < rows && pi < 0; ++i)
      for (Index j = t; j < cols; ++j)
        if (d(i, j) != 0) {
          pi = i;
          pj = j;
          break;
        }
    if (pi < 0) break;
    if (pi != t) {
      d.row(t).swap(d.row(pi));
      std::swap(c(t), c(pi));
    }
    if (pj != t) {
      d.col(t).swap(d.col(pj));
      v.col(t).swap(v.col(pj));
    }
    // Divisible entries are cleared without touching the pivot; otherwise the pivot drops to a gcd.
    for (bool dirty = true; dirty;) {
      dirty = false;
      for (Index i = t + 1; i < rows; ++i) {
        if (d(i, t) == 0) continue;
        if (d(i, t) % d(t, t) == 0) {
          mix_rows(i, t, 1, m - d(i, t) / d(t, t), 1, 0);
          continue;
        }
        const Bezout<Small> e = extended_gcd(d(t, t), d(i, t));
        mix_rows(t, i, e.s, e.t, d(t, t) / e.g, d(i, t) / e.g);
      }
      for (Index j = t + 1; j < cols; ++j) {
        if (d(t, j) == 0) continue;
        if (d(t, j) % d(t, t) == 0) {
          mix_cols(j, t, 1, m - d(t, j) / d(t, t), 1, 0);
          continue;
        }
        const Bezout<Small> e = extended_gcd(d(t, t), d(t, j));
        mix_cols(t, j, e.s, e.t, d(t, t) / e.g, d(t, j) / e.g);
        dirty = true;
      }
    }
  }
  VectorX<Small> y = VectorX<Small>::Zero(cols);
  for (Index i = 0; i < rows; ++i) {
    const Small p = i < t ? d(i, i) : 0;
    const Small g = gcd_value(p, m);
    if (c(i) % g != 0) return std::nullopt;
    if (i < t) {
      const Small mg = m / g;
      y(i) = mg == 1 ? 0 : reduce_small((c(i) / g) % mg * inverse_small((p / g) % mg, mg), mg);
    }
  }
  Vector x(cols);
  for (Index r = 0; r < cols; ++r) {
    Small acc = 0;
    for (Index k = 0; k < cols; ++k) acc = reduce_small(acc + v(r, k) * y(k), m);
    x(r) = acc;
  }
  return x;
}

}  // namespace cf
