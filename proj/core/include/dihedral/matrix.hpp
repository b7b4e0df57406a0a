#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace dihedral {

using Integer = mpz_class;
using Rational = mpq_class;

/// Dense row-major matrix over Z with arbitrary-precision entries.
class IntMatrix
{
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix column(std::vector<Integer> const &entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Integer const &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntMatrix operator*(IntMatrix const &other) const;
  IntMatrix operator+(IntMatrix const &other) const;
  IntMatrix operator-(IntMatrix const &other) const;
  IntMatrix operator-() const;
  bool operator==(IntMatrix const &other) const = default;

  IntMatrix transpose() const;
  bool is_zero() const;

  /// Columns of `this` followed by columns of `other` (row counts must agree).
  IntMatrix hconcat(IntMatrix const &other) const;
  /// Rows of `this` followed by rows of `other` (column counts must agree).
  IntMatrix vconcat(IntMatrix const &other) const;
  /// Block-diagonal sum.
  IntMatrix direct_sum(IntMatrix const &other) const;

  IntMatrix columns(std::size_t first, std::size_t count) const;
  IntMatrix rows_range(std::size_t first, std::size_t count) const;
  std::vector<Integer> column_vector(std::size_t j) const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += factor * row[src]
  void add_row(std::size_t dst, std::size_t src, Integer const &factor);
  /// col[dst] += factor * col[src]
  void add_col(std::size_t dst, std::size_t src, Integer const &factor);
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

std::vector<Integer> operator*(IntMatrix const &m, std::vector<Integer> const &v);

} // namespace dihedral
