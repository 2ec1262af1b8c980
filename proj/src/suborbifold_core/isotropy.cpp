#include <algorithm>

#include "suborb/error.hpp"
#include "suborb/suborbifold.hpp"

namespace suborb {

namespace {

void require_saturated(const SuborbifoldCandidate& cand) {
  require(check_saturated(cand).saturated, ErrorCode::CandidateNotSaturated, "subspace is not a Δ-submanifold");
}

void require_in_v(const AffineSubspace& v, const Vector& x) {
  require(x.size() == v.ambient_dim(), ErrorCode::DimensionMismatch, "point has wrong length");
  require(v.contains(x), ErrorCode::PointNotInV, "point " + to_string(x) + " is not in the subspace");
}

}  // namespace

Vector InducedChart::to_ambient(const Vector& y) const { return origin + coordinates_to_ambient * y; }

Vector InducedChart::to_coordinates(const Vector& x) const {
  const Vector d = x - origin;
  Vector y(pivots.size());
  for (std::size_t i = 0; i < pivots.size(); ++i) y[i] = d.at(pivots[i]);
  return y;
}

InducedChart induced_chart(const SuborbifoldCandidate& cand) {
  require_saturated(cand);
  const Subgroup& delta = cand.delta();
  const AffineSubspace& v = cand.v();
  const std::size_t k = v.dim();

  // The Δ-average of any point of Ṽ is Δ-fixed, so every δ acts linearly around it.
  Vector origin = zero_vector(v.ambient_dim());
  for (std::size_t d : delta.members()) origin = origin + delta.matrix(d) * v.base_point();
  origin = scale(Rational(1) / Rational(static_cast<long>(delta.order())), origin);
  ensure(v.contains(origin), "Δ-average left the subspace");

  std::vector<RatMatrix> restricted;
  restricted.reserve(delta.order());
  for (std::size_t d : delta.members()) {
    RatMatrix m(k, k);
    for (std::size_t j = 0; j < k; ++j) {
      const Vector image = delta.matrix(d) * v.basis()[j];
      require(v.direction_contains(image), ErrorCode::NonInvariant, "restriction does not preserve the subspace");
      const Vector coords = v.direction_coordinates(image);
      for (std::size_t i = 0; i < k; ++i) m(i, j) = coords[i];
    }
    restricted.push_back(std::move(m));
  }

  InducedChart chart{
      .chart = ChartModel{FiniteMatrixGroup::from_elements(restricted, k)},
      .origin = std::move(origin),
      .coordinates_to_ambient = v.basis_matrix(),
      .pivots = v.pivots(),
      .restriction = {},
  };
  for (const RatMatrix& m : restricted) chart.restriction.push_back(*chart.chart.group->index_of(m));

  const Subgroup kernel = pointwise_stabilizer(delta, v);
  ensure(chart.chart.group->order() * kernel.order() == delta.order(), "induced chart order is not |Δ|/|K|");
  return chart;
}

Fingerprint isotropy_point(const ChartModel& chart, const Vector& x) {
  return iso_fingerprint(stabilizer(chart.whole(), x));
}

AbstractGroup sub_isotropy_via_quotient(const SuborbifoldCandidate& cand, const Vector& x) {
  require_in_v(cand.v(), x);
  require_saturated(cand);
  const Subgroup kernel = pointwise_stabilizer(cand.delta(), cand.v());
  return quotient_group(stabilizer(cand.delta(), x), kernel).group;
}

AbstractGroup sub_isotropy_via_induced_chart(const SuborbifoldCandidate& cand, const Vector& x) {
  require_in_v(cand.v(), x);
  const InducedChart ic = induced_chart(cand);
  return stabilizer(ic.chart.whole(), ic.to_coordinates(x)).as_abstract();
}

Fingerprint isotropy_sub_point(const SuborbifoldCandidate& cand, const Vector& x) {
  const AbstractGroup via_quotient = sub_isotropy_via_quotient(cand, x);
  const AbstractGroup via_chart = sub_isotropy_via_induced_chart(cand, x);
  ensure(same_isomorphism_class(via_quotient, via_chart),
         "Δ_x/K and the induced-chart stabilizer disagree at " + to_string(x));
  return iso_fingerprint(via_quotient);
}

namespace {

AbstractGroup omega_quotient(const ChartModel& chart, const AffineSubspace& v, const Vector& x) {
  require(chart.group->table().is_abelian(), ErrorCode::GroupNotAbelian, "chart group is not abelian");
  require_in_v(v, x);
  const Subgroup omega = pointwise_stabilizer(chart.whole(), v);
  return quotient_group(stabilizer(chart.whole(), x), omega).group;
}

}  // namespace

Fingerprint abelian_omega_isotropy(const ChartModel& chart, const AffineSubspace& v, const Vector& x) {
  return iso_fingerprint(omega_quotient(chart, v, x));
}

ObstructionProbe full_obstruction_probe(const SuborbifoldCandidate& cand, const Vector& x) {
  const AbstractGroup omega = omega_quotient(cand.chart(), cand.v(), x);
  const AbstractGroup sub = sub_isotropy_via_quotient(cand, x);
  return {!same_isomorphism_class(sub, omega), iso_fingerprint(sub), iso_fingerprint(omega)};
}

LocalizedChart localize_chart(const ChartModel& chart, const Vector& center) {
  require(center.size() == chart.dim(), ErrorCode::DimensionMismatch, "center has wrong length");
  Subgroup stab = stabilizer(chart.whole(), center);
  std::vector<RatMatrix> mats;
  for (std::size_t g : stab.members()) mats.push_back(stab.matrix(g));
  return {ChartModel{FiniteMatrixGroup::from_elements(std::move(mats), chart.dim())}, std::move(stab), center};
}

LocalizedChart full_characterization_chart(const SuborbifoldCandidate& cand, const Vector& x) {
  require_in_v(cand.v(), x);
  const FullnessVerdict full = check_full(cand);
  require(full.full, ErrorCode::CandidateNotFull,
          "element " + std::to_string(full.witness->element) + " outside Δ fixes " + to_string(full.witness->point));
  LocalizedChart local = localize_chart(cand.chart(), x);
  // Γ_x = Δ_x for full candidates, and Ṽ is Γ_x-invariant.
  ensure(local.stabilizer.is_subgroup_of(cand.delta()), "Γ_x is not contained in Δ for a full candidate");
  for (std::size_t g : local.stabilizer.members()) {
    ensure(linear_image(local.stabilizer.matrix(g), cand.v()) == cand.v(), "Ṽ is not Γ_x-invariant");
  }
  return local;
}

}  // namespace suborb
