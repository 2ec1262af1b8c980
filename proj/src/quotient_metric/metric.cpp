#include "suborb/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "suborb/error.hpp"

namespace suborb {

namespace {

Rational squared_distance(const Vector& a, const Vector& b) {
  Rational s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Rational d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double root(const Rational& squared) { return std::sqrt(squared.to_double()); }

void require_orthogonal(const FiniteMatrixGroup& g) {
  require(is_orthogonal_group(g), ErrorCode::NonOrthogonalGroup, "some group element is not orthogonal");
}

double min_distance(const std::vector<const RatMatrix*>& elements, const Vector& x, const Vector& y) {
  std::optional<Rational> best;
  for (const RatMatrix* g : elements) {
    Rational d = squared_distance(x, *g * y);
    if (!best || d < *best) best = std::move(d);
  }
  return root(*best);
}

}  // namespace

bool is_orthogonal_group(const FiniteMatrixGroup& g) {
  return std::all_of(g.elements().begin(), g.elements().end(),
                     [](const RatMatrix& m) { return (m.transpose() * m).is_identity(); });
}

MetricProbe::MetricProbe(ChartModel chart, Subgroup subgroup, AffineSubspace subspace,
                         std::vector<std::pair<Vector, Vector>> sample_pairs, std::size_t partition_depth,
                         double tolerance)
    : chart_(std::move(chart)),
      subgroup_(std::move(subgroup)),
      subspace_(std::move(subspace)),
      sample_pairs_(std::move(sample_pairs)),
      partition_depth_(partition_depth),
      tolerance_(tolerance) {
  require_orthogonal(*chart_.group);
  require(subgroup_.parent()->same_elements(*chart_.group), ErrorCode::ChartMismatch,
          "subgroup belongs to a different group");
  if (subgroup_.parent() != chart_.group) subgroup_ = Subgroup::from_members(chart_.group, subgroup_.members());
  require(subspace_.ambient_dim() == chart_.dim(), ErrorCode::DimensionMismatch,
          "subspace ambient dimension differs from the chart");
  require(tolerance_ >= 0, ErrorCode::DimensionMismatch, "tolerance must be nonnegative");
  for (const auto& [x, y] : sample_pairs_) {
    require(x.size() == chart_.dim() && y.size() == chart_.dim(), ErrorCode::DimensionMismatch,
            "sample point has wrong length");
    require(subspace_.contains(x) && subspace_.contains(y), ErrorCode::PointsNotInSubspace,
            "sample pair " + to_string(x) + ", " + to_string(y) + " leaves the subspace");
  }
}

double quotient_distance(const Subgroup& group, const Vector& x, const Vector& y) {
  require_orthogonal(*group.parent());
  require(x.size() == group.parent()->dim() && y.size() == x.size(), ErrorCode::DimensionMismatch,
          "point has wrong length");
  std::vector<const RatMatrix*> elements;
  for (std::size_t i : group.members()) elements.push_back(&group.parent()->element(i));
  return min_distance(elements, x, y);
}

double quotient_distance(const GroupPtr& group, const Vector& x, const Vector& y) {
  return quotient_distance(Subgroup::whole(group), x, y);
}

std::vector<double> segment_partition_sums(const FiniteMatrixGroup& group, const Vector& x, const Vector& hy,
                                           std::size_t depth) {
  require(depth < 31, ErrorCode::DimensionMismatch, "partition depth too large");
  const std::size_t pieces = std::size_t{1} << depth;
  // Points of the finest partition; coarser partitions use every 2^(depth-d)-th one.
  std::vector<Vector> points;
  points.reserve(pieces + 1);
  const Vector step = hy - x;
  for (std::size_t i = 0; i <= pieces; ++i) {
    points.push_back(x + scale(Rational(static_cast<long>(i), static_cast<long>(pieces)), step));
  }

  std::vector<const RatMatrix*> elements;
  for (const RatMatrix& g : group.elements()) elements.push_back(&g);

  std::vector<double> sums;
  for (std::size_t d = 0; d <= depth; ++d) {
    const std::size_t stride = std::size_t{1} << (depth - d);
    double sum = 0;
    for (std::size_t i = 0; i + stride <= pieces; i += stride) {
      sum += min_distance(elements, points[i], points[i + stride]);
    }
    sums.push_back(sum);
  }
  return sums;
}

double intrinsic_quotient_distance(const MetricProbe& probe, const Vector& x, const Vector& y) {
  require(x.size() == probe.chart().dim() && y.size() == x.size(), ErrorCode::DimensionMismatch,
          "point has wrong length");
  require(probe.subspace().contains(x) && probe.subspace().contains(y), ErrorCode::PointsNotInSubspace,
          to_string(x) + " or " + to_string(y) + " is not in the subspace");
  const FiniteMatrixGroup& group = *probe.chart().group;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t h : probe.subgroup().members()) {
    const Vector hy = probe.subgroup().parent()->element(h) * y;
    const std::vector<double> sums = segment_partition_sums(group, x, hy, probe.partition_depth());
    best = std::min(best, *std::max_element(sums.begin(), sums.end()));
  }
  return best;
}

MetricReport lemma_metrics_check(const MetricProbe& probe) {
  std::optional<SuborbifoldCandidate> cand;
  try {
    cand.emplace(probe.chart(), probe.subgroup(), probe.subspace());
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NonInvariant) throw;
    fail(ErrorCode::CandidateNotSaturated, std::string("subspace is not invariant: ") + e.what());
  }
  const SaturationVerdict sat = check_saturated(*cand);
  require(sat.saturated, ErrorCode::CandidateNotSaturated,
          "element " + std::to_string(sat.witness ? sat.witness->element : 0) +
              " maps a point of the subspace into it outside the subgroup orbit");

  MetricReport report;
  report.partition_depth = probe.partition_depth();
  report.tolerance = probe.tolerance();
  for (const auto& [x, y] : probe.sample_pairs()) {
    MetricPairResult r{x, y};
    r.quotient = quotient_distance(probe.subgroup(), x, y);
    r.intrinsic = intrinsic_quotient_distance(probe, x, y);
    r.deviation = std::abs(r.quotient - r.intrinsic);
    r.passed = r.deviation <= probe.tolerance();
    report.max_deviation = std::max(report.max_deviation, r.deviation);
    report.passed = report.passed && r.passed;
    report.pairs.push_back(std::move(r));
  }
  report.increase_depth = !report.passed;
  return report;
}

}  // namespace suborb
