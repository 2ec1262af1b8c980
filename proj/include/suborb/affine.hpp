#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "suborb/matrix.hpp"

namespace suborb {

/// Affine subspace base_point + span(basis) of Q^n in canonical form.
///
/// The basis rows are in reduced row-echelon form and the base point has a
/// zero in every pivot column, so two values describe the same point set
/// exactly when their fields compare equal.
class AffineSubspace {
 public:
  /// Canonicalizes; dependent directions are dropped.
  AffineSubspace(Vector base_point, const std::vector<Vector>& directions);

  static AffineSubspace whole(std::size_t n);
  static AffineSubspace point(Vector p);
  static AffineSubspace linear_span(std::size_t n, const std::vector<Vector>& directions);

  std::size_t ambient_dim() const { return base_.size(); }
  std::size_t dim() const { return basis_.size(); }
  const Vector& base_point() const { return base_; }
  const std::vector<Vector>& basis() const { return basis_; }
  /// Column index of the leading 1 of each basis vector.
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Basis vectors as columns (ambient_dim x dim).
  RatMatrix basis_matrix() const;
  /// A matrix N and vector c with this = {x : N x = c}; N has ambient_dim - dim rows.
  std::pair<RatMatrix, Vector> equations() const;

  bool contains(const Vector& x) const;
  bool direction_contains(const Vector& d) const;

  /// Coordinates of a direction vector in the canonical basis (entries at pivot columns).
  Vector direction_coordinates(const Vector& d) const;
  /// base + sum_i t_i basis_i.
  Vector at(const Vector& coefficients) const;

  std::string to_string() const;

  friend bool operator==(const AffineSubspace&, const AffineSubspace&) = default;
  friend bool operator<(const AffineSubspace& a, const AffineSubspace& b);

 private:
  AffineSubspace() = default;

  Vector base_;
  std::vector<Vector> basis_;
  std::vector<std::size_t> pivots_;
};

/// Solution set of A x = b; nullopt when the system is inconsistent.
std::optional<AffineSubspace> solve_affine(const RatMatrix& a, const Vector& b);

/// nullopt when disjoint. Throws DimensionMismatch on differing ambient dimensions.
std::optional<AffineSubspace> intersect(const AffineSubspace& a, const AffineSubspace& b);

/// True iff dir(a) + dir(b) = Q^n.
bool direction_sum_is_full(const AffineSubspace& a, const AffineSubspace& b);

bool contains_point(const AffineSubspace& v, const Vector& x);

/// True iff every point of a lies in b.
bool subspace_contained_in(const AffineSubspace& a, const AffineSubspace& b);

/// Image { m x + offset : x in v } (m may be rectangular; dimension may drop).
AffineSubspace affine_image(const RatMatrix& m, const Vector& offset, const AffineSubspace& v);
inline AffineSubspace linear_image(const RatMatrix& m, const AffineSubspace& v) {
  return affine_image(m, zero_vector(m.rows()), v);
}

/// Preimage { x : m x + offset in v }; nullopt when empty.
std::optional<AffineSubspace> affine_preimage(const RatMatrix& m, const Vector& offset, const AffineSubspace& v);

/// Fixed-point set { x : g x = x } of a square matrix; always contains 0.
AffineSubspace fixed_space(const RatMatrix& g);

}  // namespace suborb
