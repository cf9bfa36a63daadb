// SPDX-License-Identifier: Apache-2.0
#include "linwidth/ffla.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "linwidth/errors.hpp"
#include "linwidth/text.hpp"

namespace linwidth {

namespace {

void require_same(const Subspace& u, const Subspace& v, const char* op) {
  if (u.ambient() != v.ambient() || !same_field(u.field(), v.field())) {
    throw DimensionMismatch(std::string(op) + ": subspaces live in different spaces");
  }
}

}  // namespace

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix::Matrix(FieldPtr field, std::size_t rows, std::size_t cols, std::vector<Scalar> entries)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) throw DimensionMismatch("matrix entry count does not match shape");
  for (Scalar x : data_) {
    if (!field_->contains(x)) throw InputError("matrix entry outside " + field_->name());
  }
}

Matrix Matrix::identity(FieldPtr field, std::size_t n) {
  Matrix m(std::move(field), n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(FieldPtr field, std::size_t cols, const std::vector<Vector>& rows) {
  Matrix m(std::move(field), rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw DimensionMismatch("row length does not match ambient dimension");
    std::copy(rows[r].begin(), rows[r].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(r * cols));
  }
  return m;
}

Matrix Matrix::from_columns(FieldPtr field, std::size_t rows, const std::vector<Vector>& cols) {
  Matrix m(std::move(field), rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) throw DimensionMismatch("column length does not match ambient dimension");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  }
  return m;
}

Vector Matrix::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_ || !same_field(field_, rhs.field_)) {
    throw DimensionMismatch("matrix product shape mismatch");
  }
  const Field& f = *field_;
  Matrix out(field_, rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar a = (*this)(r, k);
      if (a == 0) continue;
      for (std::size_t c = 0; c < rhs.cols_; ++c) out(r, c) = f.add(out(r, c), f.mul(a, rhs(k, c)));
    }
  }
  return out;
}

Vector Matrix::apply(std::span<const Scalar> x) const {
  if (x.size() != cols_) throw DimensionMismatch("vector length does not match matrix columns");
  const Field& f = *field_;
  Vector y(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    Scalar acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) acc = f.add(acc, f.mul((*this)(r, c), x[c]));
    y[r] = acc;
  }
  return y;
}

std::vector<std::size_t> Matrix::reduce() {
  std::vector<std::size_t> pivots;
  if (rows_ == 0) return pivots;
  const Field& f = *field_;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
    std::size_t p = r;
    while (p < rows_ && (*this)(p, c) == 0) ++p;
    if (p == rows_) continue;
    if (p != r) {
      std::swap_ranges(data_.begin() + static_cast<std::ptrdiff_t>(p * cols_),
                       data_.begin() + static_cast<std::ptrdiff_t>((p + 1) * cols_),
                       data_.begin() + static_cast<std::ptrdiff_t>(r * cols_));
    }
    const Scalar lead = (*this)(r, c);
    if (lead != 1) {
      const Scalar inv = f.inv(lead);
      for (std::size_t j = c; j < cols_; ++j) (*this)(r, j) = f.mul((*this)(r, j), inv);
    }
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r) continue;
      const Scalar factor = (*this)(i, c);
      if (factor == 0) continue;
      const Scalar nf = f.neg(factor);
      for (std::size_t j = c; j < cols_; ++j) {
        const Scalar rj = (*this)(r, j);
        if (rj != 0) (*this)(i, j) = f.add((*this)(i, j), f.mul(nf, rj));
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t Matrix::rank() const {
  Matrix copy = *this;
  return copy.reduce().size();
}

std::size_t rank(const Matrix& m) { return m.rank(); }

std::ostream& operator<<(std::ostream& os, const Matrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? " " : "") << m(r, c);
    os << '\n';
  }
  return os;
}

// -------------------------------------------------------------- Subspace

Subspace Subspace::zero(FieldPtr field, std::size_t ambient) {
  Subspace s;
  s.field_ = std::move(field);
  s.ambient_ = ambient;
  return s;
}

Subspace Subspace::full(FieldPtr field, std::size_t ambient) {
  return row_space(Matrix::identity(std::move(field), ambient));
}

Subspace Subspace::span(FieldPtr field, std::size_t ambient, const std::vector<Vector>& vectors) {
  return row_space(Matrix::from_rows(std::move(field), ambient, vectors));
}

Subspace Subspace::row_space(const Matrix& m) {
  Matrix work = m;
  Subspace s;
  s.field_ = m.field();
  s.ambient_ = m.cols();
  s.pivots_ = work.reduce();
  s.basis_.assign(work.entries().begin(),
                  work.entries().begin() + static_cast<std::ptrdiff_t>(s.pivots_.size() * s.ambient_));
  return s;
}

std::vector<Vector> Subspace::basis() const {
  std::vector<Vector> out;
  out.reserve(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    auto r = basis_row(i);
    out.emplace_back(r.begin(), r.end());
  }
  return out;
}

Matrix Subspace::basis_matrix() const { return Matrix(field_, dim(), ambient_, basis_); }

Vector Subspace::residual(std::span<const Scalar> x) const {
  if (x.size() != ambient_) throw DimensionMismatch("vector length does not match ambient dimension");
  Vector r(x.begin(), x.end());
  const Field& f = *field_;
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    const Scalar c = r[pivots_[i]];
    if (c == 0) continue;
    const Scalar nc = f.neg(c);
    auto row = basis_row(i);
    for (std::size_t j = pivots_[i]; j < ambient_; ++j) {
      if (row[j] != 0) r[j] = f.add(r[j], f.mul(nc, row[j]));
    }
  }
  return r;
}

bool Subspace::contains(std::span<const Scalar> x) const { return linwidth::is_zero(residual(x)); }

bool Subspace::contains(const Subspace& other) const {
  require_same(*this, other, "contains");
  if (other.dim() > dim()) return false;
  for (std::size_t i = 0; i < other.dim(); ++i) {
    if (!contains(other.basis_row(i))) return false;
  }
  return true;
}

std::vector<Vector> Subspace::elements() const {
  const Field& f = *field_;
  const unsigned q = f.order();
  std::vector<Vector> out;
  std::vector<Scalar> coeff(dim(), 0);
  while (true) {
    Vector v(ambient_, 0);
    for (std::size_t i = 0; i < dim(); ++i) {
      if (coeff[i] == 0) continue;
      auto row = basis_row(i);
      for (std::size_t j = 0; j < ambient_; ++j) v[j] = f.add(v[j], f.mul(coeff[i], row[j]));
    }
    out.push_back(std::move(v));
    std::size_t i = 0;
    while (i < coeff.size() && ++coeff[i] == q) coeff[i++] = 0;
    if (i == coeff.size()) break;
  }
  return out;
}

std::size_t Subspace::hash() const {
  std::size_t h = 1469598103934665603ull ^ ambient_;
  for (Scalar x : basis_) h = (h ^ x) * 1099511628211ull;
  return h ^ (dim() << 1);
}

std::strong_ordering Subspace::operator<=>(const Subspace& o) const {
  if (auto c = ambient_ <=> o.ambient_; c != 0) return c;
  if (auto c = dim() <=> o.dim(); c != 0) return c;
  if (auto c = basis_ <=> o.basis_; c != 0) return c;
  if (same_field(field_, o.field_)) return std::strong_ordering::equal;
  const FieldSpec& a = field_->spec();
  const FieldSpec& b = o.field_->spec();
  if (auto c = a.p <=> b.p; c != 0) return c;
  if (auto c = a.m <=> b.m; c != 0) return c;
  return a.modulus <=> b.modulus;
}

Subspace sum(const Subspace& u, const Subspace& v) {
  require_same(u, v, "sum");
  if (u.is_zero()) return v;
  if (v.is_zero()) return u;
  std::vector<Vector> rows = u.basis();
  for (auto& r : v.basis()) rows.push_back(std::move(r));
  return Subspace::span(u.field(), u.ambient(), rows);
}

Subspace intersect(const Subspace& u, const Subspace& v) {
  require_same(u, v, "intersect");
  const std::size_t n = u.ambient();
  if (u.is_zero() || v.is_zero()) return Subspace::zero(u.field(), n);
  // Rows (u | u) and (v | 0); echelon rows with zero left half span u ∩ v on
  // the right half.
  Matrix z(u.field(), u.dim() + v.dim(), 2 * n);
  for (std::size_t i = 0; i < u.dim(); ++i) {
    auto r = u.basis_row(i);
    for (std::size_t j = 0; j < n; ++j) z(i, j) = z(i, n + j) = r[j];
  }
  for (std::size_t i = 0; i < v.dim(); ++i) {
    auto r = v.basis_row(i);
    for (std::size_t j = 0; j < n; ++j) z(u.dim() + i, j) = r[j];
  }
  const auto pivots = z.reduce();
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] < n) continue;
    auto r = z.row(i);
    rows.emplace_back(r.begin() + static_cast<std::ptrdiff_t>(n), r.end());
  }
  return Subspace::span(u.field(), n, rows);
}

// ------------------------------------------------------------- LinearMap

LinearMap LinearMap::identity(FieldPtr field, std::size_t n) {
  return LinearMap(Matrix::identity(std::move(field), n));
}

Subspace LinearMap::image(const Subspace& s) const {
  if (s.ambient() != in_dim() || !same_field(s.field(), field())) {
    throw DimensionMismatch("linear map applied to a subspace of the wrong space");
  }
  std::vector<Vector> imgs;
  imgs.reserve(s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i) imgs.push_back(m_.apply(s.basis_row(i)));
  return Subspace::span(field(), out_dim(), imgs);
}

Subspace LinearMap::kernel() const {
  Matrix work = m_;
  const auto pivots = work.reduce();
  const Field& f = *field();
  std::vector<bool> is_pivot(in_dim(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < in_dim(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(in_dim(), 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = f.neg(work(i, free));
    basis.push_back(std::move(v));
  }
  return Subspace::span(field(), in_dim(), basis);
}

LinearMap quotient_map(const Subspace& c) {
  const std::size_t n = c.ambient();
  std::vector<bool> is_pivot(n, false);
  for (auto p : c.pivots()) is_pivot[p] = true;
  std::vector<std::size_t> kept;
  for (std::size_t j = 0; j < n; ++j) {
    if (!is_pivot[j]) kept.push_back(j);
  }
  Matrix m(c.field(), kept.size(), n);
  for (std::size_t j = 0; j < n; ++j) {
    const Vector r = c.residual(unit_vector(c.field(), n, j));
    for (std::size_t i = 0; i < kept.size(); ++i) m(i, j) = r[kept[i]];
  }
  return LinearMap(std::move(m));
}

LinearMap quotient_map(std::size_t ambient, const Subspace& c) {
  if (c.ambient() != ambient) throw DimensionMismatch("quotient: subspace not in the ambient space");
  return quotient_map(c);
}

// --------------------------------------------------------------- helpers

Vector unit_vector(const FieldPtr& field, std::size_t n, std::size_t i) {
  (void)field;
  Vector v(n, 0);
  v.at(i) = 1;
  return v;
}

Vector add(const Field& f, std::span<const Scalar> a, std::span<const Scalar> b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector length mismatch");
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.add(a[i], b[i]);
  return r;
}

Vector subtract(const Field& f, std::span<const Scalar> a, std::span<const Scalar> b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector length mismatch");
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.sub(a[i], b[i]);
  return r;
}

bool is_zero(std::span<const Scalar> x) {
  return std::all_of(x.begin(), x.end(), [](Scalar s) { return s == 0; });
}

// ------------------------------------------------------------ text format

Matrix parse_matrix(text::TokenStream& ts) {
  const text::Token head = ts.next();
  if (head.value != "field") ts.fail(head, "expected 'field', found '" + head.value + "'");
  FieldSpec spec;
  spec.p = static_cast<unsigned>(ts.next_uint("characteristic"));
  spec.m = static_cast<unsigned>(ts.next_uint("degree"));
  while (!ts.done() && ts.peek().line == head.line) {
    spec.modulus.push_back(static_cast<unsigned>(ts.next_uint("modulus coefficient")));
  }
  FieldPtr field;
  try {
    field = Field::make(spec);
  } catch (const InputError& e) {
    ts.fail(head, e.what());
  }
  const auto rows = ts.next_uint("rows");
  const auto cols = ts.next_uint("cols");
  Matrix m(field, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (ts.done()) ts.fail_eof("matrix has fewer entries than rows*cols");
      const text::Token tok = ts.peek();
      const auto v = ts.next_uint("matrix entry");
      if (!field->contains(v)) ts.fail(tok, "entry " + tok.value + " outside " + field->name());
      m(r, c) = static_cast<Scalar>(v);
    }
  }
  return m;
}

Matrix parse_matrix(const std::string& text) {
  text::TokenStream ts(text);
  Matrix m = parse_matrix(ts);
  if (!ts.done()) ts.fail(ts.peek(), "unexpected trailing token '" + ts.peek().value + "'");
  return m;
}

std::string format_matrix(const Matrix& m) {
  std::ostringstream os;
  const FieldSpec& s = m.field()->spec();
  os << "field " << s.p << " " << s.m;
  if (s.m > 1) {
    for (unsigned c : s.modulus) os << " " << c;
  }
  os << "\n" << m.rows() << " " << m.cols() << "\n" << m;
  return os.str();
}

}  // namespace linwidth
