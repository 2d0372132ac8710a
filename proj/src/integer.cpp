#include "cf/integer.hpp"

#include <sstream>

namespace cf {

Vector make_vector(const std::vector<long long>& entries) {
  Vector v(static_cast<Index>(entries.size()));
  for (std::size_t i = 0; i < entries.size(); ++i) v(static_cast<Index>(i)) = entries[i];
  return v;
}

Matrix make_matrix(const std::vector<std::vector<long long>>& rows, Index cols) {
  if (cols < 0) cols = rows.empty() ? 0 : static_cast<Index>(rows.front().size());
  Matrix m = Matrix::Zero(static_cast<Index>(rows.size()), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      m(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
  return m;
}

Matrix stack_rows(const Matrix& top, const Matrix& bottom) {
  const Index cols = top.rows() > 0 ? top.cols() : bottom.cols();
  Matrix m(top.rows() + bottom.rows(), cols);
  if (top.rows() > 0) m.topRows(top.rows()) = top;
  if (bottom.rows() > 0) m.bottomRows(bottom.rows()) = bottom;
  return m;
}

Matrix append_row(const Matrix& m, const Vector& row) {
  Matrix out(m.rows() + 1, row.size());
  if (m.rows() > 0) out.topRows(m.rows()) = m;
  out.row(m.rows()) = row.transpose();
  return out;
}

Matrix block_diagonal(const std::vector<Matrix>& blocks) {
  Index r = 0, c = 0;
  for (const Matrix& b : blocks) {
    r += b.rows();
    c += b.cols();
  }
  Matrix out = Matrix::Zero(r, c);
  r = 0;
  c = 0;
  for (const Matrix& b : blocks) {
    if (b.size() > 0) out.block(r, c, b.rows(), b.cols()) = b;
    r += b.rows();
    c += b.cols();
  }
  return out;
}

std::string format_vector(const Vector& v) {
  std::ostringstream os;
  os << '(';
  for (Index i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v(i);
  os << ')';
  return os.str();
}

}  // namespace cf
