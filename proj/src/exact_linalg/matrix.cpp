#include "suborb/matrix.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "suborb/error.hpp"

namespace suborb {

Vector zero_vector(std::size_t n) { return Vector(n); }

Vector unit_vector(std::size_t n, std::size_t i) {
  Vector v(n);
  v.at(i) = 1;
  return v;
}

Vector operator+(const Vector& a, const Vector& b) {
  require(a.size() == b.size(), ErrorCode::DimensionMismatch, "vector sum of different lengths");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Vector operator-(const Vector& a, const Vector& b) {
  require(a.size() == b.size(), ErrorCode::DimensionMismatch, "vector difference of different lengths");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vector scale(const Rational& s, const Vector& v) {
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
  return out;
}

Rational dot(const Vector& a, const Vector& b) {
  require(a.size() == b.size(), ErrorCode::DimensionMismatch, "dot product of different lengths");
  Rational s;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool is_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& r) { return r.is_zero(); });
}

std::string to_string(const Vector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].to_string();
  }
  return s + ")";
}

RatMatrix::RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("RatMatrix: ragged initializer");
    entries_.insert(entries_.end(), r.begin(), r.end());
  }
}

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
  RatMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    require(rows[r].size() == cols, ErrorCode::DimensionMismatch, "row length mismatch");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

RatMatrix RatMatrix::from_columns(const std::vector<Vector>& cols, std::size_t rows) {
  RatMatrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    require(cols[c].size() == rows, ErrorCode::DimensionMismatch, "column length mismatch");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  }
  return m;
}

RatMatrix RatMatrix::block_diagonal(const RatMatrix& a, const RatMatrix& b) {
  RatMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) m(r, c) = a(r, c);
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) m(a.rows() + r, a.cols() + c) = b(r, c);
  return m;
}

Vector RatMatrix::row(std::size_t r) const {
  return Vector(entries_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                entries_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vector RatMatrix::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

RatMatrix RatMatrix::operator*(const RatMatrix& o) const {
  require(cols_ == o.rows_, ErrorCode::DimensionMismatch, "matrix product shape mismatch");
  RatMatrix p(rows_, o.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(r, k);
      if (a.is_zero()) continue;
      for (std::size_t c = 0; c < o.cols_; ++c) p(r, c) += a * o(k, c);
    }
  }
  return p;
}

Vector RatMatrix::operator*(const Vector& v) const {
  require(cols_ == v.size(), ErrorCode::DimensionMismatch, "matrix-vector shape mismatch");
  Vector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (!v[c].is_zero()) out[r] += (*this)(r, c) * v[c];
    }
  }
  return out;
}

RatMatrix RatMatrix::operator+(const RatMatrix& o) const {
  require(rows_ == o.rows_ && cols_ == o.cols_, ErrorCode::DimensionMismatch, "matrix sum shape mismatch");
  RatMatrix s(rows_, cols_);
  for (std::size_t i = 0; i < entries_.size(); ++i) s.entries_[i] = entries_[i] + o.entries_[i];
  return s;
}

RatMatrix RatMatrix::operator-(const RatMatrix& o) const {
  require(rows_ == o.rows_ && cols_ == o.cols_, ErrorCode::DimensionMismatch, "matrix difference shape mismatch");
  RatMatrix s(rows_, cols_);
  for (std::size_t i = 0; i < entries_.size(); ++i) s.entries_[i] = entries_[i] - o.entries_[i];
  return s;
}

RatMatrix RatMatrix::hstack(const RatMatrix& o) const {
  require(rows_ == o.rows_, ErrorCode::DimensionMismatch, "hstack row mismatch");
  RatMatrix m(rows_, cols_ + o.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) m(r, c) = (*this)(r, c);
    for (std::size_t c = 0; c < o.cols_; ++c) m(r, cols_ + c) = o(r, c);
  }
  return m;
}

RatMatrix RatMatrix::vstack(const RatMatrix& o) const {
  require(cols_ == o.cols_, ErrorCode::DimensionMismatch, "vstack column mismatch");
  RatMatrix m(rows_ + o.rows_, cols_);
  std::copy(entries_.begin(), entries_.end(), m.entries_.begin());
  std::copy(o.entries_.begin(), o.entries_.end(), m.entries_.begin() + static_cast<std::ptrdiff_t>(entries_.size()));
  return m;
}

bool RatMatrix::is_identity() const {
  if (!is_square()) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if ((*this)(r, c) != Rational(r == c ? 1 : 0)) return false;
  return true;
}

std::size_t RatMatrix::rank() const { return rref(*this).rank; }

RatMatrix RatMatrix::inverse() const {
  if (!is_square()) throw std::domain_error("inverse of non-square matrix");
  const std::size_t n = rows_;
  RrefResult r = rref(hstack(identity(n)));
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= r.pivots.size() || r.pivots[i] != i) throw std::domain_error("inverse of singular matrix");
  }
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = r.matrix(i, n + j);
  return inv;
}

std::string RatMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) os << ", ";
    os << "[";
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) os << ", ";
      os << (*this)(r, c);
    }
    os << "]";
  }
  os << "]";
  return os.str();
}

std::strong_ordering operator<=>(const RatMatrix& a, const RatMatrix& b) {
  if (auto c = a.rows_ <=> b.rows_; c != 0) return c;
  if (auto c = a.cols_ <=> b.cols_; c != 0) return c;
  for (std::size_t i = 0; i < a.entries_.size(); ++i) {
    if (auto c = a.entries_[i] <=> b.entries_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

RatMatrix operator*(const RatMatrix& m, const Rational& s) {
  RatMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c) * s;
  return out;
}

std::ostream& operator<<(std::ostream& os, const RatMatrix& m) { return os << m.to_string(); }

RrefResult rref(const RatMatrix& m) {
  RrefResult out{m, 0, {}};
  RatMatrix& a = out.matrix;
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::size_t lead_row = 0;
  for (std::size_t col = 0; col < cols && lead_row < rows; ++col) {
    std::size_t pivot = lead_row;
    while (pivot < rows && a(pivot, col).is_zero()) ++pivot;
    if (pivot == rows) continue;
    if (pivot != lead_row) {
      for (std::size_t c = 0; c < cols; ++c) std::swap(a(pivot, c), a(lead_row, c));
    }
    const Rational inv = Rational(1) / a(lead_row, col);
    for (std::size_t c = col; c < cols; ++c) a(lead_row, c) *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == lead_row || a(r, col).is_zero()) continue;
      const Rational factor = a(r, col);
      for (std::size_t c = col; c < cols; ++c) a(r, c) -= factor * a(lead_row, c);
    }
    out.pivots.push_back(col);
    ++lead_row;
  }
  out.rank = lead_row;
  return out;
}

std::vector<Vector> null_space(const RatMatrix& m) {
  const RrefResult r = rref(m);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (std::size_t p : r.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vector v(n);
    v[free] = 1;
    for (std::size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = -r.matrix(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace suborb
