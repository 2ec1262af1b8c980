#include <algorithm>

#include "suborb/error.hpp"
#include "suborb/suborbifold.hpp"

namespace suborb {

bool same_chart(const ChartModel& a, const ChartModel& b) {
  return a.group == b.group || (a.dim() == b.dim() && a.group->same_elements(*b.group));
}

SuborbifoldCandidate::SuborbifoldCandidate(ChartModel chart, Subgroup delta, AffineSubspace v)
    : chart_(std::move(chart)), delta_(std::move(delta)), v_(std::move(v)) {
  require(delta_.parent() == chart_.group, ErrorCode::ChartMismatch, "subgroup belongs to a different chart group");
  require(v_.ambient_dim() == chart_.dim(), ErrorCode::DimensionMismatch,
          "subspace lives in R^" + std::to_string(v_.ambient_dim()) + ", chart in R^" + std::to_string(chart_.dim()));
  for (std::size_t d : delta_.members()) {
    require(linear_image(delta_.matrix(d), v_) == v_, ErrorCode::NonInvariant,
            "element " + std::to_string(d) + " " + delta_.matrix(d).to_string() + " does not preserve the subspace");
  }
}

namespace {

// A point of w outside every listed proper affine subspace of w.
//
// Walks the moment curve base + t b_1 + t^2 b_2 + ... for t = 0, 1, 2, ...; a proper
// subspace lies in a hyperplane of w, which meets the curve in at most dim(w) values
// of t, so the search stops after at most dim(w) * |avoid| + 1 steps.
Vector generic_point(const AffineSubspace& w, const std::vector<AffineSubspace>& avoid) {
  const std::size_t limit = w.dim() * avoid.size() + 1;
  for (std::size_t t = 0; t <= limit; ++t) {
    Vector coefs(w.dim());
    Rational power = 1;
    for (std::size_t i = 0; i < w.dim(); ++i) {
      power *= Rational(static_cast<long>(t));
      coefs[i] = power;
    }
    Vector x = w.at(coefs);
    if (std::none_of(avoid.begin(), avoid.end(), [&](const AffineSubspace& s) { return s.contains(x); })) return x;
  }
  ensure(false, "generic_point: moment-curve search exhausted");
  return {};
}

void require_saturated(const SuborbifoldCandidate& cand) {
  const SaturationVerdict s = check_saturated(cand);
  require(s.saturated, ErrorCode::CandidateNotSaturated,
          "subspace is not a Δ-submanifold (witness element " + std::to_string(s.witness->element) + " at " +
              to_string(s.witness->point) + ")");
}

}  // namespace

SaturationVerdict check_saturated(const SuborbifoldCandidate& cand) {
  const FiniteMatrixGroup& gamma = *cand.chart().group;
  const Subgroup& delta = cand.delta();
  const AffineSubspace& v = cand.v();

  for (std::size_t g = 0; g < gamma.order(); ++g) {
    if (delta.contains(g)) continue;
    const RatMatrix& gm = gamma.element(g);
    const auto w = intersect(v, linear_image(gamma.element(gamma.inverse(g)), v));
    if (!w) continue;

    std::vector<AffineSubspace> partial;
    bool covered = false;
    for (std::size_t h : delta.members()) {
      auto agree = solve_affine(gm - gamma.element(h), zero_vector(gamma.dim()));
      if (!agree) continue;
      if (subspace_contained_in(*w, *agree)) {
        covered = true;
        break;
      }
      if (auto piece = intersect(*w, *agree)) partial.push_back(std::move(*piece));
    }
    if (covered) continue;

    Vector x = generic_point(*w, partial);
    Vector gx = gm * x;
    return {false, SaturationWitness{g, std::move(x), std::move(gx)}};
  }
  return {true, std::nullopt};
}

bool replay_saturation_witness(const SuborbifoldCandidate& cand, const SaturationWitness& w) {
  const FiniteMatrixGroup& gamma = *cand.chart().group;
  if (!cand.v().contains(w.point)) return false;
  const Vector gx = gamma.element(w.element) * w.point;
  if (gx != w.image || !cand.v().contains(gx)) return false;
  const auto& members = cand.delta().members();
  return std::none_of(members.begin(), members.end(),
                      [&](std::size_t h) { return gamma.element(h) * w.point == gx; });
}

FullnessVerdict check_full(const SuborbifoldCandidate& cand) {
  require_saturated(cand);
  const FiniteMatrixGroup& gamma = *cand.chart().group;
  for (std::size_t g = 0; g < gamma.order(); ++g) {
    if (cand.delta().contains(g)) continue;
    if (auto fixed = intersect(fixed_space(gamma.element(g)), cand.v())) {
      return {false, FullnessWitness{g, fixed->base_point()}};
    }
  }
  return {true, std::nullopt};
}

bool replay_fullness_witness(const SuborbifoldCandidate& cand, const FullnessWitness& w) {
  const FiniteMatrixGroup& gamma = *cand.chart().group;
  return !cand.delta().contains(w.element) && cand.v().contains(w.point) &&
         gamma.element(w.element) * w.point == w.point;
}

namespace {

bool acts_effectively_and_saturated(const SuborbifoldCandidate& cand) {
  return pointwise_stabilizer(cand.delta(), cand.v()).is_trivial() && check_saturated(cand).saturated;
}

bool leaves_invariant(const Subgroup& s, const AffineSubspace& v) {
  return std::all_of(s.members().begin(), s.members().end(),
                     [&](std::size_t d) { return linear_image(s.matrix(d), v) == v; });
}

}  // namespace

EmbeddingVerdict check_embedded(const SuborbifoldCandidate& cand, bool search_all_delta) {
  require_saturated(cand);
  EmbeddingVerdict out{.kernel = pointwise_stabilizer(cand.delta(), cand.v())};
  out.searched_all_delta = search_all_delta;

  ComplementResult split = find_complement(cand.delta(), out.kernel);
  if (auto* c = std::get_if<Subgroup>(&split)) {
    ensure(verify_complement(cand.delta(), out.kernel, *c), "complement failed re-verification");
    ensure(acts_effectively_and_saturated(cand.with_delta(*c)),
           "complement does not act effectively with a saturated subspace");
    out.complement = *c;
    out.embedded = true;
    return out;
  }
  out.no_complement = std::get<NoComplementCertificate>(split);
  if (!search_all_delta) return out;

  for (const Subgroup& s : all_subgroups(cand.chart().whole())) {
    ++out.subgroups_searched;
    if (s == cand.delta() || !leaves_invariant(s, cand.v())) continue;
    if (acts_effectively_and_saturated(cand.with_delta(s))) {
      out.effective_delta = s;
      out.embedded = true;
      return out;
    }
  }
  return out;
}

bool contained_in_regular_part(const ChartModel& chart, const AffineSubspace& v) {
  const FiniteMatrixGroup& gamma = *chart.group;
  for (std::size_t g = 0; g < gamma.order(); ++g) {
    if (g == gamma.identity()) continue;
    if (intersect(fixed_space(gamma.element(g)), v)) return false;
  }
  return true;
}

InjectivityProbe quotient_injectivity_probe(const ChartModel& chart, const Subgroup& h, const AffineSubspace& v,
                                            const std::vector<Vector>& samples) {
  const FiniteMatrixGroup& gamma = *chart.group;
  require(h.parent() == chart.group, ErrorCode::ChartMismatch, "subgroup belongs to a different chart group");
  for (const Vector& x : samples) {
    require(v.contains(x), ErrorCode::PointNotInV, "sample " + to_string(x) + " is not in the subspace");
  }

  auto same_h_orbit = [&](const Vector& x, const Vector& y) {
    return std::any_of(h.members().begin(), h.members().end(),
                       [&](std::size_t k) { return gamma.element(k) * x == y; });
  };

  InjectivityProbe probe;
  auto check_pair = [&](const Vector& x, const Vector& y) {
    ++probe.pairs_checked;
    if (!probe.witness && !same_h_orbit(x, y)) {
      probe.passed = false;
      probe.witness = std::make_pair(x, y);
    }
  };

  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Vector& x = samples[i];
    for (std::size_t g = 0; g < gamma.order(); ++g) {
      Vector gx = gamma.element(g) * x;
      if (v.contains(gx)) check_pair(x, gx);
    }
    for (std::size_t j = i + 1; j < samples.size(); ++j) {
      const Vector& y = samples[j];
      const bool same_gamma_orbit = std::any_of(gamma.elements().begin(), gamma.elements().end(),
                                                [&](const RatMatrix& g) { return g * x == y; });
      if (same_gamma_orbit) check_pair(x, y);
    }
  }
  return probe;
}

ClassificationReport classify(const SuborbifoldCandidate& cand, const ClassifyOptions& options) {
  ClassificationReport report{.kernel = pointwise_stabilizer(cand.delta(), cand.v())};
  report.saturated = check_saturated(cand);
  if (!report.saturated.saturated) return report;

  report.full = check_full(cand);
  report.embedded = check_embedded(cand, options.search_all_delta);
  for (const Vector& x : options.isotropy_points) {
    report.induced_isotropy_at.emplace_back(x, isotropy_sub_point(cand, x));
  }
  return report;
}

}  // namespace suborb
