#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "suborb/affine.hpp"
#include "suborb/group.hpp"

namespace suborb {

/// One orbifold chart R^n / Γ with Γ a finite linear group. Distinct elements are
/// distinct matrices, so the action is effective by construction.
struct ChartModel {
  GroupPtr group;

  std::size_t dim() const { return group->dim(); }
  Subgroup whole() const { return Subgroup::whole(group); }
};

/// Same ambient dimension and identical canonical element lists.
bool same_chart(const ChartModel& a, const ChartModel& b);

/// (chart, Δ, Ṽ) with Ṽ invariant under Δ.
class SuborbifoldCandidate {
 public:
  /// Throws ChartMismatch if delta is not a subgroup of the chart group,
  /// DimensionMismatch on ambient mismatch, NonInvariant if some δ moves Ṽ.
  SuborbifoldCandidate(ChartModel chart, Subgroup delta, AffineSubspace v);

  const ChartModel& chart() const { return chart_; }
  const Subgroup& delta() const { return delta_; }
  const AffineSubspace& v() const { return v_; }
  std::size_t dim() const { return v_.dim(); }

  /// Same chart and Ṽ, different subgroup.
  SuborbifoldCandidate with_delta(Subgroup delta) const { return {chart_, std::move(delta), v_}; }

 private:
  ChartModel chart_;
  Subgroup delta_;
  AffineSubspace v_;
};

/// g x lies in Ṽ but no δ in Δ has δ x = g x.
struct SaturationWitness {
  std::size_t element = 0;
  Vector point;
  Vector image;
};

struct SaturationVerdict {
  bool saturated = false;
  std::optional<SaturationWitness> witness;
};

/// g outside Δ fixes a point of Ṽ.
struct FullnessWitness {
  std::size_t element = 0;
  Vector point;
};

struct FullnessVerdict {
  bool full = false;
  std::optional<FullnessWitness> witness;
};

struct EmbeddingVerdict {
  bool embedded = false;
  bool searched_all_delta = false;
  /// Kernel K of the Δ-action on Ṽ.
  Subgroup kernel;
  /// Δ' with Δ' K = Δ and Δ' ∩ K = {e}, when it exists.
  std::optional<Subgroup> complement;
  std::optional<NoComplementCertificate> no_complement;
  /// Exhaustive mode: first subgroup of Γ acting effectively with Ṽ saturated.
  std::optional<Subgroup> effective_delta;
  std::size_t subgroups_searched = 0;
};

/// Ṽ is a Δ-submanifold of the Γ-space R^n.
///
/// For each g, W_g = Ṽ ∩ g⁻¹Ṽ must be covered by the sets {x : g x = h x}, h in Δ.
/// W_g is an affine space over an infinite field and so is not a finite union of
/// proper affine subspaces; the pointwise "for every x some h" therefore holds iff
/// a single h covers all of W_g. This is the one place the check is stronger in
/// form than the pointwise definition, and equivalent to it.
SaturationVerdict check_saturated(const SuborbifoldCandidate& cand);
bool replay_saturation_witness(const SuborbifoldCandidate& cand, const SaturationWitness& w);

/// Requires saturation (throws CandidateNotSaturated). Full iff no g outside Δ fixes a point of Ṽ.
FullnessVerdict check_full(const SuborbifoldCandidate& cand);
bool replay_fullness_witness(const SuborbifoldCandidate& cand, const FullnessWitness& w);

/// Requires saturation. Embedded for the given Δ iff K = pointwise_stabilizer(Δ, Ṽ) has a
/// complement in Δ; with search_all_delta, any subgroup of Γ that leaves Ṽ invariant, acts
/// effectively and keeps Ṽ saturated also certifies. Verdicts are relative to this chart.
EmbeddingVerdict check_embedded(const SuborbifoldCandidate& cand, bool search_all_delta);

/// The k-dimensional chart Ṽ / (Δ/K) in affine coordinates on Ṽ.
struct InducedChart {
  ChartModel chart;
  /// Δ-fixed point of Ṽ used as coordinate origin.
  Vector origin;
  /// Columns are the canonical basis of Ṽ (ambient_dim x k).
  RatMatrix coordinates_to_ambient;
  std::vector<std::size_t> pivots;
  /// Induced-group element of each δ, indexed by position in Δ.
  std::vector<std::size_t> restriction;

  Vector to_ambient(const Vector& y) const;
  Vector to_coordinates(const Vector& x) const;
};

InducedChart induced_chart(const SuborbifoldCandidate& cand);

Fingerprint isotropy_point(const ChartModel& chart, const Vector& x);

/// Δ_x / K.
AbstractGroup sub_isotropy_via_quotient(const SuborbifoldCandidate& cand, const Vector& x);
/// Stabilizer of the coordinates of x inside the induced chart group.
AbstractGroup sub_isotropy_via_induced_chart(const SuborbifoldCandidate& cand, const Vector& x);
/// Isotropy of x in the induced suborbifold; both routes above must agree.
Fingerprint isotropy_sub_point(const SuborbifoldCandidate& cand, const Vector& x);

/// Γ_x / Ω with Ω the pointwise stabilizer of v in Γ. Requires Γ abelian.
Fingerprint abelian_omega_isotropy(const ChartModel& chart, const AffineSubspace& v, const Vector& x);

struct ObstructionProbe {
  bool obstruction = false;
  Fingerprint sub_isotropy;
  Fingerprint omega_isotropy;
};

/// Compares Δ_x/K with Γ_x/Ω; differing classes certify that the candidate admits no full structure at x.
ObstructionProbe full_obstruction_probe(const SuborbifoldCandidate& cand, const Vector& x);

struct LocalizedChart {
  ChartModel chart;
  /// Stabilizer of the center inside the original chart group.
  Subgroup stabilizer;
  Vector center;
};

/// Chart group Γ_x acting on the same R^n; requires a full candidate (CandidateNotFull).
LocalizedChart full_characterization_chart(const SuborbifoldCandidate& cand, const Vector& x);

/// Re-centers a chart at p: the group becomes Γ_p acting linearly on x - p.
LocalizedChart localize_chart(const ChartModel& chart, const Vector& center);

/// True iff no g ≠ e fixes a point of v.
bool contained_in_regular_part(const ChartModel& chart, const AffineSubspace& v);

struct InjectivityProbe {
  bool passed = true;
  std::size_t pairs_checked = 0;
  /// x, y in Ṽ with Γx = Γy but Hx ≠ Hy.
  std::optional<std::pair<Vector, Vector>> witness;
};

/// Checks Γx = Γy ⇒ Hx = Hy on all pairs drawn from the samples and their Γ-images in v.
InjectivityProbe quotient_injectivity_probe(const ChartModel& chart, const Subgroup& h, const AffineSubspace& v,
                                            const std::vector<Vector>& samples);

struct ClassifyOptions {
  bool search_all_delta = false;
  std::vector<Vector> isotropy_points;
};

struct ClassificationReport {
  SaturationVerdict saturated;
  /// Not saturated implies not full; the witness is then absent.
  FullnessVerdict full;
  /// Evaluated only for saturated candidates.
  std::optional<EmbeddingVerdict> embedded;
  Subgroup kernel;
  std::vector<std::pair<Vector, Fingerprint>> induced_isotropy_at;
};

ClassificationReport classify(const SuborbifoldCandidate& cand, const ClassifyOptions& options = {});

}  // namespace suborb
