#include "suborb/affine.hpp"

#include <algorithm>

#include "suborb/error.hpp"

namespace suborb {

AffineSubspace::AffineSubspace(Vector base_point, const std::vector<Vector>& directions)
    : base_(std::move(base_point)) {
  const std::size_t n = base_.size();
  const RrefResult r = rref(RatMatrix::from_rows(directions, n));
  for (std::size_t i = 0; i < r.rank; ++i) basis_.push_back(r.matrix.row(i));
  pivots_ = r.pivots;
  // Reduce the base point modulo the direction space: zero at every pivot column.
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const Rational coef = base_[pivots_[i]];
    if (coef.is_zero()) continue;
    for (std::size_t c = 0; c < n; ++c) base_[c] -= coef * basis_[i][c];
  }
}

AffineSubspace AffineSubspace::whole(std::size_t n) {
  AffineSubspace v;
  v.base_ = zero_vector(n);
  for (std::size_t i = 0; i < n; ++i) {
    v.basis_.push_back(unit_vector(n, i));
    v.pivots_.push_back(i);
  }
  return v;
}

AffineSubspace AffineSubspace::point(Vector p) {
  AffineSubspace v;
  v.base_ = std::move(p);
  return v;
}

AffineSubspace AffineSubspace::linear_span(std::size_t n, const std::vector<Vector>& directions) {
  return AffineSubspace(zero_vector(n), directions);
}

RatMatrix AffineSubspace::basis_matrix() const { return RatMatrix::from_columns(basis_, ambient_dim()); }

std::pair<RatMatrix, Vector> AffineSubspace::equations() const {
  // Rows of N span the annihilator of the direction space.
  const std::size_t n = ambient_dim();
  const std::vector<Vector> normals = null_space(RatMatrix::from_rows(basis_, n));
  RatMatrix eq = RatMatrix::from_rows(normals, n);
  return {eq, eq * base_};
}

Vector AffineSubspace::direction_coordinates(const Vector& d) const {
  Vector coords(dim());
  for (std::size_t i = 0; i < dim(); ++i) coords[i] = d.at(pivots_[i]);
  return coords;
}

bool AffineSubspace::direction_contains(const Vector& d) const {
  require(d.size() == ambient_dim(), ErrorCode::DimensionMismatch, "direction length mismatch");
  // With an RREF basis the only candidate combination uses the pivot entries of d.
  Vector residual = d;
  for (std::size_t i = 0; i < dim(); ++i) {
    const Rational coef = d[pivots_[i]];
    if (coef.is_zero()) continue;
    for (std::size_t c = 0; c < residual.size(); ++c) residual[c] -= coef * basis_[i][c];
  }
  return is_zero(residual);
}

bool AffineSubspace::contains(const Vector& x) const {
  require(x.size() == ambient_dim(), ErrorCode::DimensionMismatch, "point length mismatch");
  return direction_contains(x - base_);
}

Vector AffineSubspace::at(const Vector& coefficients) const {
  require(coefficients.size() == dim(), ErrorCode::DimensionMismatch, "coefficient count mismatch");
  Vector x = base_;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (coefficients[i].is_zero()) continue;
    for (std::size_t c = 0; c < x.size(); ++c) x[c] += coefficients[i] * basis_[i][c];
  }
  return x;
}

std::string AffineSubspace::to_string() const {
  std::string s = suborb::to_string(base_) + " + span{";
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (i) s += ", ";
    s += suborb::to_string(basis_[i]);
  }
  return s + "}";
}

bool operator<(const AffineSubspace& a, const AffineSubspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) return a.ambient_dim() < b.ambient_dim();
  if (a.dim() != b.dim()) return a.dim() < b.dim();
  if (a.basis_ != b.basis_) return a.basis_ < b.basis_;
  return a.base_ < b.base_;
}

std::optional<AffineSubspace> solve_affine(const RatMatrix& a, const Vector& b) {
  require(a.rows() == b.size(), ErrorCode::DimensionMismatch,
          "solve_affine: right-hand side length does not match row count");
  const std::size_t n = a.cols();
  RatMatrix augmented(a.rows(), n + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < n; ++c) augmented(r, c) = a(r, c);
    augmented(r, n) = b[r];
  }
  const RrefResult r = rref(augmented);
  if (!r.pivots.empty() && r.pivots.back() == n) return std::nullopt;
  Vector particular(n);
  for (std::size_t i = 0; i < r.rank; ++i) particular[r.pivots[i]] = r.matrix(i, n);
  return AffineSubspace(std::move(particular), null_space(a));
}

std::optional<AffineSubspace> intersect(const AffineSubspace& a, const AffineSubspace& b) {
  require(a.ambient_dim() == b.ambient_dim(), ErrorCode::DimensionMismatch, "intersect: ambient mismatch");
  auto [na, ca] = a.equations();
  auto [nb, cb] = b.equations();
  Vector rhs = ca;
  rhs.insert(rhs.end(), cb.begin(), cb.end());
  return solve_affine(na.vstack(nb), rhs);
}

bool direction_sum_is_full(const AffineSubspace& a, const AffineSubspace& b) {
  require(a.ambient_dim() == b.ambient_dim(), ErrorCode::DimensionMismatch,
          "direction_sum_is_full: ambient mismatch");
  std::vector<Vector> all = a.basis();
  all.insert(all.end(), b.basis().begin(), b.basis().end());
  return RatMatrix::from_rows(all, a.ambient_dim()).rank() == a.ambient_dim();
}

bool contains_point(const AffineSubspace& v, const Vector& x) { return v.contains(x); }

bool subspace_contained_in(const AffineSubspace& a, const AffineSubspace& b) {
  require(a.ambient_dim() == b.ambient_dim(), ErrorCode::DimensionMismatch,
          "subspace_contained_in: ambient mismatch");
  if (!b.contains(a.base_point())) return false;
  return std::all_of(a.basis().begin(), a.basis().end(),
                     [&](const Vector& d) { return b.direction_contains(d); });
}

AffineSubspace affine_image(const RatMatrix& m, const Vector& offset, const AffineSubspace& v) {
  require(m.cols() == v.ambient_dim() && m.rows() == offset.size(), ErrorCode::DimensionMismatch,
          "affine_image: shape mismatch");
  std::vector<Vector> dirs;
  dirs.reserve(v.dim());
  for (const Vector& d : v.basis()) dirs.push_back(m * d);
  return AffineSubspace(m * v.base_point() + offset, dirs);
}

std::optional<AffineSubspace> affine_preimage(const RatMatrix& m, const Vector& offset, const AffineSubspace& v) {
  require(m.rows() == v.ambient_dim() && m.rows() == offset.size(), ErrorCode::DimensionMismatch,
          "affine_preimage: shape mismatch");
  auto [eq, c] = v.equations();
  // eq (m x + offset) = c
  return solve_affine(eq * m, c - eq * offset);
}

AffineSubspace fixed_space(const RatMatrix& g) {
  require(g.is_square(), ErrorCode::DimensionMismatch, "fixed_space of non-square matrix");
  return *solve_affine(g - RatMatrix::identity(g.rows()), zero_vector(g.rows()));
}

}  // namespace suborb
