// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "linwidth/field.hpp"
#include "linwidth/text.hpp"

namespace linwidth {

using Vector = std::vector<Scalar>;

/// Dense row-major matrix over a finite field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldPtr field, std::size_t rows, std::size_t cols);
  /// Entries are validated against the field order.
  Matrix(FieldPtr field, std::size_t rows, std::size_t cols, std::vector<Scalar> entries);

  static Matrix identity(FieldPtr field, std::size_t n);
  /// Matrix whose rows are the given vectors (all of length cols).
  static Matrix from_rows(FieldPtr field, std::size_t cols, const std::vector<Vector>& rows);
  /// Matrix whose columns are the given vectors (all of length rows).
  static Matrix from_columns(FieldPtr field, std::size_t rows, const std::vector<Vector>& cols);

  const FieldPtr& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::vector<Scalar>& entries() const { return data_; }

  Scalar operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::span<const Scalar> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  Vector column(std::size_t c) const;

  Matrix transpose() const;
  Matrix operator*(const Matrix& rhs) const;
  Vector apply(std::span<const Scalar> x) const;

  /// In-place reduced row echelon form; returns the pivot columns in order.
  std::vector<std::size_t> reduce();
  std::size_t rank() const;

  bool operator==(const Matrix& o) const {
    return same_field(field_, o.field_) && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  FieldPtr field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

std::size_t rank(const Matrix& m);

/// Subspace of GF(q)^n stored as its reduced row echelon basis (no zero
/// rows). Equal subspaces have identical bases.
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(FieldPtr field, std::size_t ambient);
  static Subspace full(FieldPtr field, std::size_t ambient);
  /// Span of vectors of length `ambient`; throws DimensionMismatch otherwise.
  static Subspace span(FieldPtr field, std::size_t ambient, const std::vector<Vector>& vectors);
  static Subspace row_space(const Matrix& m);

  const FieldPtr& field() const { return field_; }
  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return pivots_.size(); }
  bool is_zero() const { return pivots_.empty(); }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  std::span<const Scalar> basis_row(std::size_t i) const {
    return {basis_.data() + i * ambient_, ambient_};
  }
  std::vector<Vector> basis() const;
  Matrix basis_matrix() const;

  /// x minus its projection along the echelon basis; zero iff x lies in the
  /// subspace. Distinct cosets of the subspace have distinct residuals.
  Vector residual(std::span<const Scalar> x) const;
  bool contains(std::span<const Scalar> x) const;
  bool contains(const Subspace& other) const;

  /// Every vector of the subspace (q^dim of them), in a fixed order.
  std::vector<Vector> elements() const;

  std::size_t hash() const;

  bool operator==(const Subspace& o) const {
    return ambient_ == o.ambient_ && pivots_ == o.pivots_ && basis_ == o.basis_ &&
           same_field(field_, o.field_);
  }
  std::strong_ordering operator<=>(const Subspace& o) const;

 private:
  FieldPtr field_;
  std::size_t ambient_ = 0;
  std::vector<std::size_t> pivots_;
  std::vector<Scalar> basis_;
};

Subspace sum(const Subspace& u, const Subspace& v);
/// Zassenhaus intersection.
Subspace intersect(const Subspace& u, const Subspace& v);

/// Linear map GF(q)^in -> GF(q)^out given by an out x in matrix.
class LinearMap {
 public:
  LinearMap() = default;
  explicit LinearMap(Matrix m) : m_(std::move(m)) {}

  static LinearMap identity(FieldPtr field, std::size_t n);

  const Matrix& matrix() const { return m_; }
  const FieldPtr& field() const { return m_.field(); }
  std::size_t in_dim() const { return m_.cols(); }
  std::size_t out_dim() const { return m_.rows(); }

  Vector operator()(std::span<const Scalar> x) const { return m_.apply(x); }
  Subspace image(const Subspace& s) const;
  Subspace kernel() const;
  bool injective_on(const Subspace& s) const { return image(s).dim() == s.dim(); }
  LinearMap then(const LinearMap& next) const { return LinearMap(next.m_ * m_); }

 private:
  Matrix m_;
};

/// Surjection GF(q)^n -> GF(q)^{n - dim c} with kernel exactly c: reduce x
/// against the echelon basis of c and keep the non-pivot coordinates.
LinearMap quotient_map(const Subspace& c);
LinearMap quotient_map(std::size_t ambient, const Subspace& c);

/// e_i in GF(q)^n.
Vector unit_vector(const FieldPtr& field, std::size_t n, std::size_t i);
Vector add(const Field& f, std::span<const Scalar> a, std::span<const Scalar> b);
Vector subtract(const Field& f, std::span<const Scalar> a, std::span<const Scalar> b);
bool is_zero(std::span<const Scalar> x);

std::ostream& operator<<(std::ostream& os, const Matrix& m);

/// Matrix text format: `field p m [modulus...]`, `rows cols`, then the
/// entries row by row. Lines starting with '#' are comments. Errors name the
/// offending line and column.
Matrix parse_matrix(const std::string& text);
/// Reads one matrix and leaves the stream positioned after it.
Matrix parse_matrix(text::TokenStream& ts);
std::string format_matrix(const Matrix& m);

}  // namespace linwidth

template <>
struct std::hash<linwidth::Subspace> {
  std::size_t operator()(const linwidth::Subspace& s) const noexcept { return s.hash(); }
};
