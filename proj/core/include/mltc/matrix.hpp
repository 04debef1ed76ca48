#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mltc/algebra.hpp"

namespace mltc {

/// Dense row-major matrix of symbols.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Symbol& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Symbol at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<Symbol> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Symbol> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  Matrix select_columns(std::span<const std::size_t> cols) const;
  Matrix select_rows(std::span<const std::size_t> rows) const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Symbol> data_;
};

Matrix multiply(const Algebra& alg, const Matrix& a, const Matrix& b);

/// out = x * m for a row vector x.
void multiply_vector(const Algebra& alg, std::span<const Symbol> x, const Matrix& m,
                     std::span<Symbol> out);

/// Inverse of a square matrix, or nullopt if singular.
///
/// Over a ring, a pivot must be a unit. If no row offers a unit in the
/// current column the elimination tries random ring combinations of the
/// remaining rows (seeded, so results are reproducible). A matrix that
/// still has no unit pivot is reported as singular.
std::optional<Matrix> invert(const Algebra& alg, const Matrix& m);

/// Full-rank test for square matrices; same pivoting rules as invert().
bool is_invertible(const Algebra& alg, const Matrix& m);

}  // namespace mltc
