#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "suborb/suborbifold.hpp"

namespace suborb {

inline constexpr std::size_t kDefaultPartitionDepth = 8;
inline constexpr double kDefaultMetricTolerance = 1e-9;

/// Exact check gᵀg = I for every element.
bool is_orthogonal_group(const FiniteMatrixGroup& g);

/// Orthogonal chart group with a subgroup H, a subspace N and sample pairs in N.
class MetricProbe {
 public:
  /// Throws NonOrthogonalGroup, ChartMismatch (subgroup of another group),
  /// DimensionMismatch, or PointsNotInSubspace.
  MetricProbe(ChartModel chart, Subgroup subgroup, AffineSubspace subspace,
              std::vector<std::pair<Vector, Vector>> sample_pairs, std::size_t partition_depth = kDefaultPartitionDepth,
              double tolerance = kDefaultMetricTolerance);

  const ChartModel& chart() const { return chart_; }
  const Subgroup& subgroup() const { return subgroup_; }
  const AffineSubspace& subspace() const { return subspace_; }
  const std::vector<std::pair<Vector, Vector>>& sample_pairs() const { return sample_pairs_; }
  std::size_t partition_depth() const { return partition_depth_; }
  double tolerance() const { return tolerance_; }

 private:
  ChartModel chart_;
  Subgroup subgroup_;
  AffineSubspace subspace_;
  std::vector<std::pair<Vector, Vector>> sample_pairs_;
  std::size_t partition_depth_;
  double tolerance_;
};

/// min over g in `group` of |x - g y|, minimized exactly on squared distances and
/// converted to floating point at the end. Throws NonOrthogonalGroup.
double quotient_distance(const Subgroup& group, const Vector& x, const Vector& y);
double quotient_distance(const GroupPtr& group, const Vector& x, const Vector& y);

/// Length of the straight segment from x to h y measured in R^n / Γ, over dyadic partitions.
/// Entry d is the sum for 2^d pieces; the sequence is nondecreasing.
std::vector<double> segment_partition_sums(const FiniteMatrixGroup& group, const Vector& x, const Vector& hy,
                                           std::size_t depth);

/// Min over h in H of the sup over depths 0..partition_depth of the partition sums.
/// Uses flatness: segments in the affine subspace are its geodesics.
/// Throws PointsNotInSubspace when x or y leaves the subspace.
double intrinsic_quotient_distance(const MetricProbe& probe, const Vector& x, const Vector& y);

struct MetricPairResult {
  Vector x;
  Vector y;
  /// Quotient distance on N / H.
  double quotient = 0;
  /// Intrinsic distance induced on N / H by the quotient metric of R^n / Γ.
  double intrinsic = 0;
  double deviation = 0;
  bool passed = false;
};

struct MetricReport {
  std::vector<MetricPairResult> pairs;
  double max_deviation = 0;
  bool passed = true;
  /// The candidate is saturated, so a failure means the partitions are too coarse.
  bool increase_depth = false;
  std::size_t partition_depth = 0;
  double tolerance = 0;
};

/// Requires (Γ, H, N) saturated (CandidateNotSaturated otherwise, including when N is not H-invariant).
MetricReport lemma_metrics_check(const MetricProbe& probe);

}  // namespace suborb
