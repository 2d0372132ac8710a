#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>

// Dense Eigen matrices expose a void const_iterator, which the byte-container
// constructor check of cpp_int cannot inspect.
namespace boost::multiprecision::detail {
template <class S, int R, int C, int O, int MR, int MC>
struct is_byte_container<Eigen::Matrix<S, R, C, O, MR, MC>> : public boost::false_type {};
template <class D>
struct is_byte_container<Eigen::MatrixBase<D>> : public boost::false_type {};
template <class D>
struct is_byte_container<Eigen::DenseBase<D>> : public boost::false_type {};
template <class X, int R, int C, bool I>
struct is_byte_container<Eigen::Block<X, R, C, I>> : public boost::false_type {};
template <class X>
struct is_byte_container<Eigen::Transpose<X>> : public boost::false_type {};
template <class Op, class L, class R>
struct is_byte_container<Eigen::CwiseBinaryOp<Op, L, R>> : public boost::false_type {};
template <class Op, class X>
struct is_byte_container<Eigen::CwiseUnaryOp<Op, X>> : public boost::false_type {};
template <class Op, class X>
struct is_byte_container<Eigen::CwiseNullaryOp<Op, X>> : public boost::false_type {};
template <class L, class R, int O>
struct is_byte_container<Eigen::Product<L, R, O>> : public boost::false_type {};
}  // namespace boost::multiprecision::detail

namespace cf {

using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                              boost::multiprecision::et_off>;

template <class Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Matrix = MatrixX<Integer>;
using Vector = VectorX<Integer>;
using Index = Eigen::Index;

template <class Scalar>
Scalar abs_value(const Scalar& a) {
  return a < Scalar(0) ? Scalar(-a) : a;
}

// Quotient rounded toward negative infinity.
template <class Scalar>
Scalar floor_div(const Scalar& a, const Scalar& b) {
  Scalar q = a / b;
  if ((a % b != Scalar(0)) && ((a < Scalar(0)) != (b < Scalar(0)))) q -= Scalar(1);
  return q;
}

// Remainder in [0, |m|).
template <class Scalar>
Scalar mod_floor(const Scalar& a, const Scalar& m) {
  Scalar r = a % m;
  if (r < Scalar(0)) r += abs_value(m);
  return r;
}

template <class Scalar>
struct Bezout {
  Scalar g, s, t;  // g = s a + t b, g >= 0
};

template <class Scalar>
Bezout<Scalar> extended_gcd(Scalar a, Scalar b) {
  Scalar s0(1), s1(0), t0(0), t1(1);
  while (b != Scalar(0)) {
    Scalar q = a / b;
    Scalar r = a - q * b;
    a = b;
    b = r;
    Scalar s2 = s0 - q * s1;
    s0 = s1;
    s1 = s2;
    Scalar t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  if (a < Scalar(0)) return {Scalar(-a), Scalar(-s0), Scalar(-t0)};
  return {a, s0, t0};
}

template <class Scalar>
Scalar gcd_value(const Scalar& a, const Scalar& b) {
  return extended_gcd(a, b).g;
}

template <class Scalar>
Scalar lcm_value(const Scalar& a, const Scalar& b) {
  if (a == Scalar(0) || b == Scalar(0)) return Scalar(0);
  return abs_value(a / gcd_value(a, b) * b);
}

template <class Scalar>
bool is_zero(const MatrixX<Scalar>& m) {
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (m(i, j) != Scalar(0)) return false;
  return true;
}

template <class Scalar>
bool is_zero(const VectorX<Scalar>& v) {
  for (Index i = 0; i < v.size(); ++i)
    if (v(i) != Scalar(0)) return false;
  return true;
}

inline Vector unit_vector(Index n, Index i) {
  Vector v = Vector::Zero(n);
  v(i) = 1;
  return v;
}

inline Matrix identity(Index n) { return Matrix::Identity(n, n); }

inline std::optional<std::int64_t> to_int64(const Integer& a) {
  if (a > Integer(INT64_MAX) || a < Integer(INT64_MIN)) return std::nullopt;
  return static_cast<std::int64_t>(a);
}

inline std::string to_string(const Integer& a) { return a.str(); }

Vector make_vector(const std::vector<long long>& entries);
Matrix make_matrix(const std::vector<std::vector<long long>>& rows, Index cols = -1);
Matrix stack_rows(const Matrix& top, const Matrix& bottom);
Matrix append_row(const Matrix& m, const Vector& row);
Matrix block_diagonal(const std::vector<Matrix>& blocks);
std::string format_vector(const Vector& v);

}  // namespace cf
