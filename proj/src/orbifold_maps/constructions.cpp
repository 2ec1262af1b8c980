#include <algorithm>

#include "suborb/error.hpp"
#include "suborb/maps.hpp"

namespace suborb {

GraphSuborbifold graph_suborbifold(const EquivariantAffineMap& f) {
  ProductChart product = product_chart(f.domain(), f.codomain());
  const std::size_t n1 = f.domain().dim();
  const std::size_t n2 = f.codomain().dim();

  Vector base = zero_vector(n1);
  base.insert(base.end(), f.offset().begin(), f.offset().end());
  std::vector<Vector> directions;
  for (std::size_t i = 0; i < n1; ++i) {
    Vector d = unit_vector(n1, i);
    const Vector image = f.linear().column(i);
    d.insert(d.end(), image.begin(), image.end());
    directions.push_back(std::move(d));
  }
  AffineSubspace graph(std::move(base), directions);

  std::vector<std::size_t> members;
  for (std::size_t g = 0; g < f.domain().group->order(); ++g) members.push_back(product.index_of(g, f.theta(g)));
  Subgroup delta = Subgroup::from_members(product.combined.group, std::move(members));

  SuborbifoldCandidate cand(product.combined, std::move(delta), std::move(graph));
  ensure(cand.dim() == n1, "graph has the wrong dimension");
  ClassificationReport report = classify(cand);
  ensure(report.saturated.saturated, "graph is not saturated");
  ensure(report.embedded && report.embedded->embedded, "graph is not embedded");

  const bool regular = contained_in_regular_part(f.codomain(), f.image());
  ensure(report.full.full == regular, "graph fullness disagrees with the regular-part criterion");
  (void)n2;
  return {std::move(product), std::move(cand), std::move(report), regular};
}

SuborbifoldCandidate image_suborbifold(const EquivariantAffineMap& f, const SuborbifoldCandidate& cand) {
  require(same_chart(f.domain(), cand.chart()), ErrorCode::ChartMismatch, "candidate is not in the map's domain");
  require(is_immersion(f), ErrorCode::NotImmersion, "linear part is not injective");
  require(f.theta_hom().is_injective(), ErrorCode::NotInjectiveOnQuotient, "theta is not injective");
  const QuotientInjectivity inj = check_quotient_injective(f);
  require(inj.injective, ErrorCode::NotInjectiveOnQuotient,
          "element " + std::to_string(*inj.element) + " of Γ₂ identifies points not related by Γ₁; solutions " +
              inj.solutions->to_string());
  require(check_saturated(cand).saturated, ErrorCode::CandidateNotSaturated, "input is not a Δ-submanifold");

  std::vector<std::size_t> image_members;
  for (std::size_t d : cand.delta().members()) image_members.push_back(f.theta(d));
  Subgroup image_delta = Subgroup::from_members(f.codomain().group, std::move(image_members));
  SuborbifoldCandidate out(f.codomain(), std::move(image_delta), affine_image(f.linear(), f.offset(), cand.v()));

  ensure(out.dim() == cand.dim(), "image changed dimension");
  ensure(check_saturated(out).saturated, "image is not saturated");
  if (check_embedded(cand, false).embedded) {
    ensure(check_embedded(out, false).embedded, "image of an embedded candidate is not embedded");
  }
  return out;
}

bool transverse_candidates(const ChartModel& c, const SuborbifoldCandidate& a, const SuborbifoldCandidate& b) {
  require(same_chart(c, a.chart()) && same_chart(c, b.chart()), ErrorCode::ChartMismatch,
          "candidates live in different charts");
  require(check_full(a).full, ErrorCode::CandidateNotFull, "first candidate is not full");
  require(check_full(b).full, ErrorCode::CandidateNotFull, "second candidate is not full");
  return intersect(a.v(), b.v()).has_value() && direction_sum_is_full(a.v(), b.v());
}

SuborbifoldCandidate intersect_full(const SuborbifoldCandidate& a, const SuborbifoldCandidate& b) {
  require(transverse_candidates(a.chart(), a, b), ErrorCode::NotTransverse,
          "subspaces are disjoint or their directions do not span");
  const Subgroup delta = intersection(a.delta(), rebase(b.delta(), a.chart()));
  SuborbifoldCandidate out(a.chart(), delta, *intersect(a.v(), b.v()));
  const std::size_t n = a.chart().dim();
  ensure(out.dim() + n == a.dim() + b.dim(), "intersection dimension is not k1 + k2 - n");
  ensure(check_full(out).full, "transverse intersection is not full");
  return out;
}

std::optional<SuborbifoldCandidate> preimage_suborbifold(const EquivariantAffineMap& f,
                                                         const SuborbifoldCandidate& q) {
  require(same_chart(f.codomain(), q.chart()), ErrorCode::ChartMismatch, "candidate is not in the map's codomain");
  require(check_full(q).full, ErrorCode::CandidateNotFull, "target candidate is not full");

  auto pre = affine_preimage(f.linear(), f.offset(), q.v());
  if (!pre) return std::nullopt;

  // Transversality of an affine map is the constant condition im(A) + dir(Ṽ) = R^n₂.
  const std::size_t n2 = f.codomain().dim();
  require(f.linear().hstack(q.v().basis_matrix()).rank() == n2, ErrorCode::NotTransverseToQ,
          "image of the linear part and the subspace directions do not span the codomain");

  const Subgroup delta2 = rebase(q.delta(), f.codomain());
  std::vector<std::size_t> members;
  for (std::size_t g = 0; g < f.domain().group->order(); ++g) {
    if (delta2.contains(f.theta(g))) members.push_back(g);
  }
  SuborbifoldCandidate out(f.domain(), Subgroup::from_members(f.domain().group, std::move(members)), std::move(*pre));

  const std::size_t n1 = f.domain().dim();
  ensure(out.dim() + n2 == n1 + q.dim(), "preimage dimension is not n1 - (n2 - k)");
  ensure(check_full(out).full, "preimage is not full");
  return out;
}

FiberedProduct fibered_product(const EquivariantAffineMap& f1, const EquivariantAffineMap& f2) {
  require(f1.codomain().group->order() == 1 && f2.codomain().group->order() == 1, ErrorCode::CodomainNotManifold,
          "fibered product needs submersions into a manifold chart (trivial group)");
  require(f1.codomain().dim() == f2.codomain().dim(), ErrorCode::DimensionMismatch,
          "the two maps have different codomain dimensions");
  require(is_submersion(f1) && is_submersion(f2), ErrorCode::NotSubmersion, "both maps must be submersions");

  ProductChart domain = product_chart(f1.domain(), f2.domain());
  const ProductChart codomain = product_chart(f1.codomain(), f2.codomain());
  const EquivariantAffineMap f = product_map(f1, f2, domain, codomain);

  const std::size_t m = f1.codomain().dim();
  std::vector<Vector> diagonal;
  for (std::size_t i = 0; i < m; ++i) {
    Vector d = zero_vector(2 * m);
    d[i] = 1;
    d[m + i] = 1;
    diagonal.push_back(std::move(d));
  }
  const SuborbifoldCandidate q(codomain.combined, codomain.combined.whole(),
                               AffineSubspace::linear_span(2 * m, diagonal));
  auto pre = preimage_suborbifold(f, q);
  ensure(pre.has_value(), "submersions into a connected manifold have a nonempty fibered product");
  ensure(pre->dim() + m == f1.domain().dim() + f2.domain().dim(), "fibered product dimension is not n1 + n2 - m");
  return {std::move(domain), std::move(*pre)};
}

SuborbifoldCandidate regular_value_preimage(const EquivariantAffineMap& f, const Vector& q) {
  const std::size_t n2 = f.codomain().dim();
  require(q.size() == n2, ErrorCode::DimensionMismatch, "value has wrong length");
  require(f.linear().rank() == n2, ErrorCode::RankDeficient,
          "rank " + std::to_string(f.linear().rank()) + " < " + std::to_string(n2));
  require(f.image().contains(q), ErrorCode::NotInImage, to_string(q) + " is not in the image");

  const SuborbifoldCandidate point(f.codomain(), stabilizer(f.codomain().whole(), q), AffineSubspace::point(q));
  auto pre = preimage_suborbifold(f, point);
  ensure(pre.has_value(), "value in the image has an empty preimage");
  ensure(pre->dim() + n2 == f.domain().dim(), "regular value preimage dimension is not n1 - n2");
  return std::move(*pre);
}

EquivariantAffineMap inclusion_map(const SuborbifoldCandidate& cand) {
  require(pointwise_stabilizer(cand.delta(), cand.v()).is_trivial(), ErrorCode::NotInjectiveOnQuotient,
          "Δ does not act effectively on the subspace");
  const InducedChart ic = induced_chart(cand);
  std::vector<std::size_t> theta(ic.chart.group->order());
  for (std::size_t pos = 0; pos < cand.delta().order(); ++pos) theta[ic.restriction[pos]] = cand.delta().members()[pos];
  return {ic.chart, cand.chart(), ic.coordinates_to_ambient, ic.origin, std::move(theta)};
}

}  // namespace suborb
