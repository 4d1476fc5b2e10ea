#pragma once

// Exact sparse linear algebra over the rationals.

#include "aqft/rational.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

namespace aqft {

using SparseVector = std::map<std::size_t, Rational>;

SparseVector add(const SparseVector& a, const SparseVector& b);
SparseVector scale(const SparseVector& a, const Rational& s);
void axpy(SparseVector& y, const Rational& a, const SparseVector& x);  // y += a x

/// Row-major sparse matrix; zero entries are never stored.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows) {}

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<std::vector<Rational>>& rows, std::size_t cols);
  /// Columns given as sparse vectors of length `rows`.
  static Matrix from_columns(std::size_t rows, const std::vector<SparseVector>& columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, const Rational& value);
  void add(std::size_t i, std::size_t j, const Rational& value);
  const SparseVector& row(std::size_t i) const { return data_.at(i); }
  std::size_t nonzeros() const;
  bool is_zero() const;

  Matrix transpose() const;
  SparseVector apply(const SparseVector& v) const;
  std::vector<SparseVector> columns() const;
  Matrix scaled(const Rational& s) const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<SparseVector> data_;
};

/// [a | b].
Matrix hstack(const Matrix& a, const Matrix& b);

enum class PivotOrder {
  MinFill,  // shortest remaining row first
  Natural,  // rows in index order
};

/// Rank by fraction-free elimination: rows are cleared of denominators and
/// reduced over the integers, each combined row divided by its content.
std::size_t rank(const Matrix& m, PivotOrder order = PivotOrder::MinFill);

/// Basis of the kernel {x : m x = 0}.
std::vector<SparseVector> nullspace(const Matrix& m);
/// Some x with m x = b, if one exists.
std::optional<SparseVector> solve(const Matrix& m, const SparseVector& b);
std::optional<Matrix> inverse(const Matrix& m);
/// Indices of a maximal linearly independent subset of `vectors`, greedy in order.
std::vector<std::size_t> independent_subset(const std::vector<SparseVector>& vectors);

}  // namespace aqft
