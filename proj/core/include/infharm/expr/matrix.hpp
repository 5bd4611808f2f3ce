#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "infharm/expr/rational.hpp"

namespace infharm::expr {

/// Dense row-major matrix over the rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  /// Builds from nested rows; every row must have the same length.
  RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows);
  static RationalMatrix from_rows(const std::vector<std::vector<Rational>>& rows);
  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<Rational> row(std::size_t r) const;
  std::vector<Rational> col(std::size_t c) const;

  bool is_zero() const;
  bool is_symmetric() const;
  bool is_skew_symmetric() const;
  bool row_is_zero(std::size_t r) const;
  bool col_is_zero(std::size_t c) const;

  RationalMatrix transpose() const;
  /// Gauss-Jordan inverse; throws ValidationError if singular or non-square.
  RationalMatrix inverse() const;
  /// First `count` columns.
  RationalMatrix leading_columns(std::size_t count) const;

  RationalMatrix& operator+=(const RationalMatrix& o);
  RationalMatrix& operator-=(const RationalMatrix& o);
  RationalMatrix& operator*=(const Rational& s);

  friend RationalMatrix operator+(RationalMatrix a, const RationalMatrix& b) { return a += b; }
  friend RationalMatrix operator-(RationalMatrix a, const RationalMatrix& b) { return a -= b; }
  friend RationalMatrix operator*(RationalMatrix a, const Rational& s) { return a *= s; }
  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) = default;

  std::vector<std::vector<std::string>> to_strings() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

}  // namespace infharm::expr
