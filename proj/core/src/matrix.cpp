#include "dihedral/matrix.hpp"

#include <sstream>

#include "dihedral/errors.hpp"

namespace dihedral {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
  : rows_(rows), cols_(cols), data_(rows * cols)
{}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
{
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (auto const &row : rows) {
    if (row.size() != cols_)
      throw InvalidInput("IntMatrix: ragged initializer");
    for (long v : row)
      data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n)
{
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::column(std::vector<Integer> const &entries)
{
  IntMatrix m(entries.size(), 1);
  for (std::size_t i = 0; i < entries.size(); ++i)
    m(i, 0) = entries[i];
  return m;
}

IntMatrix IntMatrix::operator*(IntMatrix const &other) const
{
  if (cols_ != other.rows_)
    throw InvalidInput("IntMatrix: dimension mismatch in product");
  IntMatrix out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      Integer const &a = (*this)(i, k);
      if (a == 0)
        continue;
      for (std::size_t j = 0; j < other.cols_; ++j)
        if (other(k, j) != 0)
          out(i, j) += a * other(k, j);
    }
  return out;
}

IntMatrix IntMatrix::operator+(IntMatrix const &other) const
{
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw InvalidInput("IntMatrix: dimension mismatch in sum");
  IntMatrix out(*this);
  for (std::size_t i = 0; i < data_.size(); ++i)
    out.data_[i] += other.data_[i];
  return out;
}

IntMatrix IntMatrix::operator-(IntMatrix const &other) const
{
  return *this + (-other);
}

IntMatrix IntMatrix::operator-() const
{
  IntMatrix out(*this);
  for (auto &x : out.data_)
    x = -x;
  return out;
}

IntMatrix IntMatrix::transpose() const
{
  IntMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      out(j, i) = (*this)(i, j);
  return out;
}

bool IntMatrix::is_zero() const
{
  for (auto const &x : data_)
    if (x != 0)
      return false;
  return true;
}

IntMatrix IntMatrix::hconcat(IntMatrix const &other) const
{
  if (rows_ != other.rows_)
    throw InvalidInput("IntMatrix: row mismatch in hconcat");
  IntMatrix out(rows_, cols_ + other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j)
      out(i, j) = (*this)(i, j);
    for (std::size_t j = 0; j < other.cols_; ++j)
      out(i, cols_ + j) = other(i, j);
  }
  return out;
}

IntMatrix IntMatrix::vconcat(IntMatrix const &other) const
{
  if (cols_ != other.cols_)
    throw InvalidInput("IntMatrix: column mismatch in vconcat");
  IntMatrix out(rows_ + other.rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      out(i, j) = (*this)(i, j);
  for (std::size_t i = 0; i < other.rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      out(rows_ + i, j) = other(i, j);
  return out;
}

IntMatrix IntMatrix::direct_sum(IntMatrix const &other) const
{
  IntMatrix out(rows_ + other.rows_, cols_ + other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      out(i, j) = (*this)(i, j);
  for (std::size_t i = 0; i < other.rows_; ++i)
    for (std::size_t j = 0; j < other.cols_; ++j)
      out(rows_ + i, cols_ + j) = other(i, j);
  return out;
}

IntMatrix IntMatrix::columns(std::size_t first, std::size_t count) const
{
  IntMatrix out(rows_, count);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < count; ++j)
      out(i, j) = (*this)(i, first + j);
  return out;
}

IntMatrix IntMatrix::rows_range(std::size_t first, std::size_t count) const
{
  IntMatrix out(count, cols_);
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      out(i, j) = (*this)(first + i, j);
  return out;
}

std::vector<Integer> IntMatrix::column_vector(std::size_t j) const
{
  std::vector<Integer> v(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    v[i] = (*this)(i, j);
  return v;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b)
{
  if (a == b)
    return;
  for (std::size_t j = 0; j < cols_; ++j)
    swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b)
{
  if (a == b)
    return;
  for (std::size_t i = 0; i < rows_; ++i)
    swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row(std::size_t dst, std::size_t src, Integer const &factor)
{
  if (factor == 0)
    return;
  for (std::size_t j = 0; j < cols_; ++j)
    if ((*this)(src, j) != 0)
      (*this)(dst, j) += factor * (*this)(src, j);
}

void IntMatrix::add_col(std::size_t dst, std::size_t src, Integer const &factor)
{
  if (factor == 0)
    return;
  for (std::size_t i = 0; i < rows_; ++i)
    if ((*this)(i, src) != 0)
      (*this)(i, dst) += factor * (*this)(i, src);
}

void IntMatrix::negate_row(std::size_t r)
{
  for (std::size_t j = 0; j < cols_; ++j)
    (*this)(r, j) = -(*this)(r, j);
}

void IntMatrix::negate_col(std::size_t c)
{
  for (std::size_t i = 0; i < rows_; ++i)
    (*this)(i, c) = -(*this)(i, c);
}

std::string IntMatrix::to_string() const
{
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j)
      os << (j ? ", " : "") << (*this)(i, j).get_str();
    os << ']';
  }
  os << ']';
  return os.str();
}

std::vector<Integer> operator*(IntMatrix const &m, std::vector<Integer> const &v)
{
  if (m.cols() != v.size())
    throw InvalidInput("IntMatrix: dimension mismatch in matrix-vector product");
  std::vector<Integer> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0 && v[j] != 0)
        out[i] += m(i, j) * v[j];
  return out;
}

} // namespace dihedral
