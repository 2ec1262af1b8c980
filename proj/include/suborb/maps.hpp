#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "suborb/suborbifold.hpp"

namespace suborb {

/// Affine lift x -> A x + b between chart models together with Θ: Γ₁ -> Γ₂,
/// satisfying f(γx) = Θ(γ) f(x) for every γ in Γ₁.
class EquivariantAffineMap {
 public:
  /// `theta[i]` is the codomain index of domain element i. Throws DimensionMismatch,
  /// NotHomomorphism or NotEquivariant (naming the first offending element).
  EquivariantAffineMap(ChartModel domain, ChartModel codomain, RatMatrix linear, Vector offset,
                       std::vector<std::size_t> theta);

  /// Θ fixed by the images of the domain group's generators.
  static EquivariantAffineMap from_generator_images(ChartModel domain, ChartModel codomain, RatMatrix linear,
                                                    Vector offset, const std::vector<RatMatrix>& images);
  /// Θ found by search: first homomorphism (generator images in canonical order) making the map equivariant.
  static EquivariantAffineMap with_inferred_theta(ChartModel domain, ChartModel codomain, RatMatrix linear,
                                                  Vector offset);

  const ChartModel& domain() const { return domain_; }
  const ChartModel& codomain() const { return codomain_; }
  const RatMatrix& linear() const { return linear_; }
  const Vector& offset() const { return offset_; }
  const std::vector<std::size_t>& theta() const { return theta_; }
  std::size_t theta(std::size_t domain_index) const { return theta_.at(domain_index); }

  Vector operator()(const Vector& x) const { return linear_ * x + offset_; }
  GroupHom theta_hom() const;
  /// Image of the whole domain (an affine subspace of the codomain).
  AffineSubspace image() const;

 private:
  ChartModel domain_;
  ChartModel codomain_;
  RatMatrix linear_;
  Vector offset_;
  std::vector<std::size_t> theta_;
};

/// outer ∘ inner; throws ChartMismatch when inner's codomain is not outer's domain.
EquivariantAffineMap compose(const EquivariantAffineMap& outer, const EquivariantAffineMap& inner);

/// Rank of the lift; constant for affine maps, x is accepted for interface uniformity.
std::size_t rank_at(const EquivariantAffineMap& f, const Vector& x);
bool is_immersion(const EquivariantAffineMap& f);
bool is_submersion(const EquivariantAffineMap& f);

struct QuotientInjectivity {
  bool injective = true;
  /// γ in Γ₂ whose solution set {(x, y) : f(x) = γ f(y)} lies in no {x = γ₁ y}.
  std::optional<std::size_t> element;
  std::optional<AffineSubspace> solutions;
};

/// Decides exactly whether the induced map R^n₁/Γ₁ -> R^n₂/Γ₂ is injective.
QuotientInjectivity check_quotient_injective(const EquivariantAffineMap& f);
/// Immersion, Θ injective, and injective on quotients.
bool is_embedding(const EquivariantAffineMap& f);

struct ProductChart {
  ChartModel left;
  ChartModel right;
  /// Γ₁ x Γ₂ as block-diagonal matrices on R^(n₁+n₂).
  ChartModel combined;
  /// combined index of (i, j) at i * |Γ₂| + j.
  std::vector<std::size_t> pair_index;
  std::vector<std::pair<std::size_t, std::size_t>> components;

  std::size_t index_of(std::size_t i, std::size_t j) const { return pair_index.at(i * right.group->order() + j); }
};

/// Throws GroupTooLarge when |Γ₁||Γ₂| exceeds max_order.
ProductChart product_chart(const ChartModel& left, const ChartModel& right, std::size_t max_order = kDefaultMaxOrder);

/// f₁ x f₂ between product charts.
EquivariantAffineMap product_map(const EquivariantAffineMap& f1, const EquivariantAffineMap& f2,
                                 const ProductChart& domain, const ProductChart& codomain);

struct GraphSuborbifold {
  ProductChart product;
  SuborbifoldCandidate candidate;
  ClassificationReport report;
  bool image_in_regular_part = false;
};

/// Ṽ = {(x, f(x))} with Δ = {(γ, Θγ)}; asserts saturated and embedded, and full exactly
/// when the image of f avoids every Fix(g), g ≠ e.
GraphSuborbifold graph_suborbifold(const EquivariantAffineMap& f);

/// (codomain chart, Θ(Δ), f(Ṽ)). Requires an immersion that is injective on quotients.
SuborbifoldCandidate image_suborbifold(const EquivariantAffineMap& f, const SuborbifoldCandidate& cand);

/// Both candidates full in chart c, meeting, with directions spanning R^n.
bool transverse_candidates(const ChartModel& c, const SuborbifoldCandidate& a, const SuborbifoldCandidate& b);

/// (chart, Δ₁ ∩ Δ₂, Ṽ₁ ∩ Ṽ₂), full of dimension k₁ + k₂ - n. Throws NotTransverse.
SuborbifoldCandidate intersect_full(const SuborbifoldCandidate& a, const SuborbifoldCandidate& b);

/// (domain chart, Θ⁻¹(Δ₂), f⁻¹(Ṽ)), full of dimension n₁ - (n₂ - k); nullopt when the
/// preimage is empty. With Δ₂ = Γ₂ the group is all of Γ₁. Throws NotTransverseToQ.
std::optional<SuborbifoldCandidate> preimage_suborbifold(const EquivariantAffineMap& f, const SuborbifoldCandidate& q);

struct FiberedProduct {
  ProductChart product;
  SuborbifoldCandidate candidate;
};

/// {(x, y) : f₁(x) = f₂(y)} for submersions into a manifold chart (trivial group).
FiberedProduct fibered_product(const EquivariantAffineMap& f1, const EquivariantAffineMap& f2);

/// Preimage of the point candidate ({q}, Γ₂_q); requires rank n₂ (RankDeficient) and q in the image.
SuborbifoldCandidate regular_value_preimage(const EquivariantAffineMap& f, const Vector& q);

/// Inclusion of the induced chart of an effective candidate into its chart: coordinates
/// on Ṽ -> R^n with Θ the restriction inverse. Throws NotInjectiveOnQuotient when Δ
/// does not act effectively on Ṽ.
EquivariantAffineMap inclusion_map(const SuborbifoldCandidate& cand);

/// The same subgroup re-parented onto an identical chart group (indices coincide).
Subgroup rebase(const Subgroup& s, const ChartModel& chart);

}  // namespace suborb
