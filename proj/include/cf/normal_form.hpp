#pragma once

#include <utility>
#include <vector>

#include "cf/integer.hpp"

namespace cf {

template <class Scalar>
struct EchelonForm {
  MatrixX<Scalar> form;       // transform * input
  MatrixX<Scalar> transform;  // unimodular
  std::vector<Index> pivot_cols;
  Index rank = 0;
};

namespace detail {

// Replace rows (i, k) by (s r_i + t r_k, -v r_i + u r_k); the 2x2 block has determinant 1.
template <class Scalar>
void combine_rows(MatrixX<Scalar>& m, Index i, Index k, const Scalar& s, const Scalar& t,
                  const Scalar& u, const Scalar& v) {
  for (Index c = 0; c < m.cols(); ++c) {
    Scalar a = m(i, c);
    Scalar b = m(k, c);
    m(i, c) = s * a + t * b;
    m(k, c) = u * b - v * a;
  }
}

template <class Scalar>
void axpy_row(MatrixX<Scalar>& m, Index dst, Index src, const Scalar& q) {
  if (q == Scalar(0)) return;
  for (Index c = 0; c < m.cols(); ++c)
    if (m(src, c) != Scalar(0)) m(dst, c) -= q * m(src, c);
}

template <class Scalar>
void axpy_col(MatrixX<Scalar>& m, Index dst, Index src, const Scalar& q) {
  if (q == Scalar(0)) return;
  for (Index r = 0; r < m.rows(); ++r)
    if (m(r, src) != Scalar(0)) m(r, dst) -= q * m(r, src);
}

template <class Scalar>
void negate_row(MatrixX<Scalar>& m, Index i) {
  for (Index c = 0; c < m.cols(); ++c) m(i, c) = -m(i, c);
}

}  // namespace detail

// Row echelon form over the integers by unimodular row operations. With `reduce`
// entries above each pivot lie in [0, pivot), giving the Hermite normal form.
template <class Scalar>
EchelonForm<Scalar> row_echelon(const MatrixX<Scalar>& input, bool reduce = true,
                                bool with_transform = true) {
  using detail::axpy_row;
  EchelonForm<Scalar> out;
  out.form = input;
  MatrixX<Scalar>& b = out.form;
  const Index rows = b.rows();
  if (with_transform) out.transform = MatrixX<Scalar>::Identity(rows, rows);
  MatrixX<Scalar>& u = out.transform;
  Index r = 0;
  for (Index j = 0; j < b.cols() && r < rows; ++j) {
    Index best = -1;
    for (Index i = r; i < rows; ++i) {
      if (b(i, j) == Scalar(0)) continue;
      if (best < 0 || abs_value(b(i, j)) < abs_value(b(best, j))) best = i;
    }
    if (best < 0) continue;
    if (best != r) {
      b.row(r).swap(b.row(best));
      if (with_transform) u.row(r).swap(u.row(best));
    }
    for (Index i = r + 1; i < rows; ++i) {
      if (b(i, j) == Scalar(0)) continue;
      const Scalar a = b(r, j);
      const Scalar c = b(i, j);
      if (c % a == Scalar(0)) {
        const Scalar q = c / a;
        axpy_row(b, i, r, q);
        if (with_transform) axpy_row(u, i, r, q);
        continue;
      }
      const Bezout<Scalar> e = extended_gcd(a, c);
      const Scalar x = a / e.g;
      const Scalar y = c / e.g;
      detail::combine_rows(b, r, i, e.s, e.t, x, y);
      if (with_transform) detail::combine_rows(u, r, i, e.s, e.t, x, y);
    }
    if (b(r, j) < Scalar(0)) {
      detail::negate_row(b, r);
      if (with_transform) detail::negate_row(u, r);
    }
    if (reduce) {
      for (Index i = 0; i < r; ++i) {
        const Scalar q = floor_div(b(i, j), b(r, j));
        axpy_row(b, i, r, q);
        if (with_transform) axpy_row(u, i, r, q);
      }
    }
    out.pivot_cols.push_back(j);
    ++r;
  }
  out.rank = r;
  return out;
}

// Nonzero rows of the Hermite normal form: a canonical basis of the row lattice.
template <class Scalar>
MatrixX<Scalar> hermite_normal_form(const MatrixX<Scalar>& m) {
  EchelonForm<Scalar> e = row_echelon(m, true, false);
  return e.form.topRows(e.rank);
}

// Rows spanning {x : x m = 0}, in Hermite normal form.
template <class Scalar>
MatrixX<Scalar> left_kernel(const MatrixX<Scalar>& m) {
  EchelonForm<Scalar> e = row_echelon(m, false, true);
  MatrixX<Scalar> k = e.transform.bottomRows(m.rows() - e.rank);
  return hermite_normal_form(k);
}

template <class Scalar>
struct SmithForm {
  MatrixX<Scalar> U, D, V, V_inverse;  // U * M * V = D
  Index rank = 0;
  std::vector<Scalar> diagonal;  // d_1 | d_2 | ... , all positive
};

// Smith normal form with smallest-absolute-value pivoting, ties broken row-major.
template <class Scalar>
SmithForm<Scalar> smith_normal_form(const MatrixX<Scalar>& m) {
  using detail::axpy_col;
  using detail::axpy_row;
  SmithForm<Scalar> s;
  const Index rows = m.rows();
  const Index cols = m.cols();
  s.D = m;
  s.U = MatrixX<Scalar>::Identity(rows, rows);
  s.V = MatrixX<Scalar>::Identity(cols, cols);
  s.V_inverse = MatrixX<Scalar>::Identity(cols, cols);
  MatrixX<Scalar>& d = s.D;

  Index t = 0;
  while (t < rows && t < cols) {
    Index pi = -1, pj = -1;
    for (Index i = t; i < rows; ++i)
      for (Index j = t; j < cols; ++j) {
        if (d(i, j) == Scalar(0)) continue;
        if (pi < 0 || abs_value(d(i, j)) < abs_value(d(pi, pj))) {
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;
    if (pi != t) {
      d.row(t).swap(d.row(pi));
      s.U.row(t).swap(s.U.row(pi));
    }
    if (pj != t) {
      d.col(t).swap(d.col(pj));
      s.V.col(t).swap(s.V.col(pj));
      s.V_inverse.row(t).swap(s.V_inverse.row(pj));
    }
    bool clean = true;
    for (Index i = t + 1; i < rows; ++i) {
      if (d(i, t) == Scalar(0)) continue;
      const Scalar q = d(i, t) / d(t, t);
      axpy_row(d, i, t, q);
      axpy_row(s.U, i, t, q);
      if (d(i, t) != Scalar(0)) clean = false;
    }
    for (Index j = t + 1; j < cols; ++j) {
      if (d(t, j) == Scalar(0)) continue;
      const Scalar q = d(t, j) / d(t, t);
      axpy_col(d, j, t, q);
      axpy_col(s.V, j, t, q);
      // V <- V E with E = I - q e_t e_j^T, so V^{-1} <- (I + q e_t e_j^T) V^{-1}.
      axpy_row(s.V_inverse, t, j, Scalar(-q));
      if (d(t, j) != Scalar(0)) clean = false;
    }
    if (!clean) continue;
    Index bad = -1;
    for (Index i = t + 1; i < rows && bad < 0; ++i)
      for (Index j = t + 1; j < cols; ++j)
        if (d(i, j) % d(t, t) != Scalar(0)) {
          bad = i;
          break;
        }
    if (bad >= 0) {
      axpy_row(d, t, bad, Scalar(-1));
      axpy_row(s.U, t, bad, Scalar(-1));
      continue;
    }
    if (d(t, t) < Scalar(0)) {
      detail::negate_row(d, t);
      detail::negate_row(s.U, t);
    }
    s.diagonal.push_back(d(t, t));
    ++t;
  }
  s.rank = t;
  return s;
}

}  // namespace cf
