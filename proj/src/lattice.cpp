#include "cf/lattice.hpp"

#include "cf/normal_form.hpp"

namespace cf {

Lattice Lattice::from_generators(const Matrix& rows, Index dimension) {
  Lattice l(dimension);
  if (rows.rows() == 0) return l;
  EchelonForm<Integer> e = row_echelon(rows, true, false);
  l.basis_ = e.form.topRows(e.rank);
  l.pivots_ = e.pivot_cols;
  return l;
}

Integer Lattice::pivot_product() const {
  Integer p = 1;
  for (Index i = 0; i < rank(); ++i) p *= basis_(i, pivots_[static_cast<std::size_t>(i)]);
  return p;
}

Vector Lattice::reduce(const Vector& x) const {
  Vector y = x;
  for (Index i = 0; i < rank(); ++i) {
    const Index p = pivots_[static_cast<std::size_t>(i)];
    const Integer q = floor_div(y(p), basis_(i, p));
    if (q == 0) continue;
    for (Index c = p; c < dim_; ++c)
      if (basis_(i, c) != 0) y(c) -= q * basis_(i, c);
  }
  return y;
}

bool Lattice::contains(const Vector& x) const { return is_zero(reduce(x)); }

bool Lattice::contains(const Lattice& other) const {
  for (Index i = 0; i < other.rank(); ++i)
    if (!contains(Vector(other.basis_.row(i).transpose()))) return false;
  return true;
}

Lattice Lattice::sum(const Lattice& other) const {
  return from_generators(stack_rows(basis_, other.basis_), dim_);
}

Lattice Lattice::add(const Vector& x) const {
  if (contains(x)) return *this;
  return from_generators(append_row(basis_, x), dim_);
}

bool Lattice::operator==(const Lattice& other) const {
  return dim_ == other.dim_ && basis_.rows() == other.basis_.rows() && basis_ == other.basis_;
}

Matrix congruence_kernel(const Matrix& a, const std::vector<Integer>& moduli) {
  Matrix k = identity(a.rows());
  for (Index j = 0; j < a.cols(); ++j) {
    const Integer& d = moduli[static_cast<std::size_t>(j)];
    Vector v = k * a.col(j);
    if (d != 0)
      for (Index i = 0; i < v.size(); ++i) v(i) = mod_floor(v(i), d);
    Index p = -1;
    for (Index i = 0; i < v.size(); ++i)
      if (v(i) != 0 && (p < 0 || abs_value(v(i)) < abs_value(v(p)))) p = i;
    if (p < 0) continue;
    for (Index i = 0; i < v.size(); ++i) {
      if (i == p || v(i) == 0) continue;
      if (v(i) % v(p) == 0) {
        const Integer q = v(i) / v(p);
        detail::axpy_row(k, i, p, q);
        v(i) = 0;
        continue;
      }
      const Bezout<Integer> e = extended_gcd(v(p), v(i));
      const Integer x = v(p) / e.g;
      const Integer y = v(i) / e.g;
      detail::combine_rows(k, p, i, e.s, e.t, x, y);
      v(p) = e.g;
      v(i) = 0;
    }
    if (d == 0) {
      Matrix next(k.rows() - 1, k.cols());
      for (Index i = 0, r = 0; i < k.rows(); ++i)
        if (i != p) next.row(r++) = k.row(i);
      k = next;
    } else {
      const Integer factor = d / gcd_value(v(p), d);
      if (factor != 1) k.row(p) *= factor;
    }
    k = hermite_normal_form(k);
  }
  return hermite_normal_form(k);
}

}  // namespace cf
