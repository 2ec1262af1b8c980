#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "suborb/rational.hpp"

namespace suborb {

using Vector = std::vector<Rational>;

Vector zero_vector(std::size_t n);
Vector unit_vector(std::size_t n, std::size_t i);
Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector scale(const Rational& s, const Vector& v);
Rational dot(const Vector& a, const Vector& b);
bool is_zero(const Vector& v);
std::string to_string(const Vector& v);

/// Dense row-major matrix of exact rationals. Zero-sized dimensions are allowed.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
  RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static RatMatrix identity(std::size_t n);
  static RatMatrix from_rows(const std::vector<Vector>& rows, std::size_t cols);
  static RatMatrix from_columns(const std::vector<Vector>& cols, std::size_t rows);
  static RatMatrix block_diagonal(const RatMatrix& a, const RatMatrix& b);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  std::span<const Rational> entries() const { return entries_; }

  Vector row(std::size_t r) const;
  Vector column(std::size_t c) const;

  RatMatrix transpose() const;
  RatMatrix operator*(const RatMatrix& o) const;
  Vector operator*(const Vector& v) const;
  RatMatrix operator+(const RatMatrix& o) const;
  RatMatrix operator-(const RatMatrix& o) const;

  /// Columns of `this` followed by columns of `o` (same row count).
  RatMatrix hstack(const RatMatrix& o) const;
  /// Rows of `this` followed by rows of `o` (same column count).
  RatMatrix vstack(const RatMatrix& o) const;

  bool is_identity() const;
  std::size_t rank() const;
  /// Throws std::domain_error when singular.
  RatMatrix inverse() const;

  std::string to_string() const;

  friend bool operator==(const RatMatrix&, const RatMatrix&) = default;
  /// Canonical order: dimensions first, then lexicographic on row-major entries.
  friend std::strong_ordering operator<=>(const RatMatrix& a, const RatMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

RatMatrix operator*(const RatMatrix& m, const Rational& s);

std::ostream& operator<<(std::ostream& os, const RatMatrix& m);

struct RrefResult {
  RatMatrix matrix;
  std::size_t rank = 0;
  /// Pivot column of each nonzero row, ascending.
  std::vector<std::size_t> pivots;
};

/// Reduced row-echelon form with leftmost-nonzero pivoting (deterministic).
RrefResult rref(const RatMatrix& m);

/// Basis of {x : m x = 0}, one vector per free column, in ascending free-column order.
std::vector<Vector> null_space(const RatMatrix& m);

}  // namespace suborb
