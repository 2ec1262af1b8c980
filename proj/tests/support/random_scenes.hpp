#pragma once

// Seeded random groups, candidates and equivariant maps for property tests.

#include <cstddef>
#include <random>
#include <vector>

#include "suborb/maps.hpp"

namespace suborb::testing {

class Gen {
 public:
  explicit Gen(unsigned seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return uniform(0, 1) == 1; }
  Rational small_rational() { return {uniform(-6, 6), uniform(1, 4)}; }
  Vector small_vector(std::size_t n);
  /// Integer entries in [-2, 2], retried until invertible.
  RatMatrix invertible_matrix(std::size_t n);
  RatMatrix signed_permutation(std::size_t n);

  /// Signed-permutation group of order <= max_order, conjugated by a random
  /// invertible matrix when `conjugate` is set.
  GroupPtr group(std::size_t dim, std::size_t max_order, bool conjugate);
  Subgroup subgroup(const GroupPtr& g);
  /// Δ-invariant: Δ-averaged base point plus the span of Δ-orbits of random vectors.
  AffineSubspace invariant_subspace(const Subgroup& delta);
  /// Random affine subspace of a random dimension (not necessarily invariant).
  AffineSubspace affine_subspace(std::size_t n);

  /// Mixes invariant subspaces for random Δ, fixed spaces and random affine spaces with
  /// their setwise stabilizer, and small subgroups of that stabilizer.
  SuborbifoldCandidate candidate(const ChartModel& chart);

 private:
  std::mt19937 rng_;
};

/// { g in Γ : g Ṽ = Ṽ }.
Subgroup setwise_stabilizer(const ChartModel& chart, const AffineSubspace& v);
/// Fix of every element of k.
AffineSubspace fixed_space(const Subgroup& k);
/// Average of g x over g in s.
Vector average(const Subgroup& s, const Vector& x);
RatMatrix average_conjugate(const Subgroup& s, const RatMatrix& m);

/// Block-diagonal chart Γa x Γb on R^a ⊕ R^b, with the two factor inclusions.
struct SplitChart {
  ChartModel left;
  ChartModel right;
  ProductChart product;
};
SplitChart split_chart(Gen& gen, std::size_t a, std::size_t b, std::size_t max_factor_order);

/// Full candidate U x R^b or R^a x W in a split chart, where U (resp. W) is the whole
/// factor or a point with its stabilizer.
SuborbifoldCandidate split_full_candidate(Gen& gen, const SplitChart& s, bool left_factor);

/// Conjugates a candidate by x -> P x: group P Γ P⁻¹, subgroup by index, subspace P Ṽ.
SuborbifoldCandidate conjugate_candidate(const SuborbifoldCandidate& c, const RatMatrix& p,
                                         const ChartModel& conjugated_chart);
ChartModel conjugate_chart(const ChartModel& c, const RatMatrix& p);

/// f: (R^n, Γ) -> (R^n ⊕ R^m, Γ x S), x -> (M x + b₁, R P x + b₂), Θ(γ) = (γ, e), with M
/// commuting with Γ, b₁ Γ-fixed and P the projection onto Fix(Γ).
EquivariantAffineMap random_equivariant_map(Gen& gen, const ChartModel& domain, std::size_t m);

/// Γ-invariant map R^n -> R^m (trivial codomain group) of full rank m; needs m <= dim Fix(Γ).
EquivariantAffineMap random_invariant_submersion(Gen& gen, const ChartModel& domain, std::size_t m);

/// Projection of a split chart onto its left factor, Θ the first component.
EquivariantAffineMap left_projection(const SplitChart& s);

}  // namespace suborb::testing
