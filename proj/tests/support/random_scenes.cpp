#include "random_scenes.hpp"

#include <algorithm>
#include <numeric>

#include "suborb/error.hpp"

namespace suborb::testing {

Vector Gen::small_vector(std::size_t n) {
  Vector v(n);
  for (Rational& e : v) e = uniform(0, 3) == 0 ? Rational(0) : small_rational();
  return v;
}

RatMatrix Gen::invertible_matrix(std::size_t n) {
  for (;;) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = uniform(-2, 2);
    if (m.rank() == n) return m;
  }
}

RatMatrix Gen::signed_permutation(std::size_t n) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng_);
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, perm[i]) = coin() ? 1 : -1;
  return m;
}

GroupPtr Gen::group(std::size_t dim, std::size_t max_order, bool conjugate) {
  for (;;) {
    std::vector<RatMatrix> gens;
    const int count = uniform(0, 2);
    for (int i = 0; i < count; ++i) gens.push_back(signed_permutation(dim));
    GroupPtr g = generate_group(gens, dim);
    if (g->order() > max_order) continue;
    if (!conjugate) return g;
    return conjugate_chart({g}, invertible_matrix(dim)).group;
  }
}

Subgroup Gen::subgroup(const GroupPtr& g) {
  std::vector<std::size_t> gens;
  const int count = uniform(0, 2);
  for (int i = 0; i < count; ++i) gens.push_back(static_cast<std::size_t>(uniform(0, static_cast<int>(g->order()) - 1)));
  return Subgroup::generated_by(g, gens);
}

AffineSubspace Gen::invariant_subspace(const Subgroup& delta) {
  const std::size_t n = delta.parent()->dim();
  const Vector base = coin() ? zero_vector(n) : average(delta, small_vector(n));
  std::vector<Vector> dirs;
  const int seeds = uniform(0, 2);
  for (int s = 0; s < seeds; ++s) {
    const Vector v = coin() ? unit_vector(n, static_cast<std::size_t>(uniform(0, static_cast<int>(n) - 1)))
                            : small_vector(n);
    for (std::size_t d : delta.members()) dirs.push_back(delta.matrix(d) * v);
  }
  return {base, dirs};
}

AffineSubspace Gen::affine_subspace(std::size_t n) {
  std::vector<Vector> dirs;
  const int k = uniform(0, static_cast<int>(n));
  for (int i = 0; i < k; ++i) {
    dirs.push_back(coin() ? unit_vector(n, static_cast<std::size_t>(uniform(0, static_cast<int>(n) - 1)))
                          : small_vector(n));
  }
  return {small_vector(n), dirs};
}

SuborbifoldCandidate Gen::candidate(const ChartModel& chart) {
  switch (uniform(0, 5)) {
    case 0: {
      Subgroup delta = subgroup(chart.group);
      AffineSubspace v = invariant_subspace(delta);
      return {chart, std::move(delta), std::move(v)};
    }
    case 1: {
      AffineSubspace v = fixed_space(subgroup(chart.group));
      return {chart, setwise_stabilizer(chart, v), std::move(v)};
    }
    case 2: {
      AffineSubspace v = affine_subspace(chart.dim());
      return {chart, setwise_stabilizer(chart, v), std::move(v)};
    }
    case 3: {
      AffineSubspace v = invariant_subspace(subgroup(chart.group));
      return {chart, setwise_stabilizer(chart, v), std::move(v)};
    }
    default: {
      // A random subgroup of the setwise stabilizer: invariant, often not saturated.
      AffineSubspace v = coin() ? fixed_space(subgroup(chart.group)) : invariant_subspace(subgroup(chart.group));
      const Subgroup keep = setwise_stabilizer(chart, v);
      std::vector<std::size_t> gens;
      if (coin()) gens.push_back(keep.members()[static_cast<std::size_t>(uniform(0, static_cast<int>(keep.order()) - 1))]);
      return {chart, Subgroup::generated_by(chart.group, gens), std::move(v)};
    }
  }
}

Subgroup setwise_stabilizer(const ChartModel& chart, const AffineSubspace& v) {
  std::vector<std::size_t> members;
  for (std::size_t g = 0; g < chart.group->order(); ++g) {
    const RatMatrix& m = chart.group->element(g);
    bool keeps = v.contains(m * v.base_point());
    for (const Vector& b : v.basis()) keeps = keeps && v.direction_contains(m * b);
    if (keeps) members.push_back(g);
  }
  return Subgroup::from_members(chart.group, members);
}

AffineSubspace fixed_space(const Subgroup& k) {
  const std::size_t n = k.parent()->dim();
  RatMatrix stacked(0, n);
  for (std::size_t g : k.members()) stacked = stacked.vstack(k.matrix(g) - RatMatrix::identity(n));
  return AffineSubspace::linear_span(n, null_space(stacked));
}

Vector average(const Subgroup& s, const Vector& x) {
  Vector sum = zero_vector(x.size());
  for (std::size_t g : s.members()) sum = sum + s.matrix(g) * x;
  return scale(Rational(1, static_cast<long>(s.order())), sum);
}

RatMatrix average_conjugate(const Subgroup& s, const RatMatrix& m) {
  RatMatrix sum(m.rows(), m.cols());
  for (std::size_t g : s.members()) {
    const RatMatrix& gm = s.matrix(g);
    sum = sum + gm * m * gm.inverse();
  }
  RatMatrix out = sum;
  for (std::size_t i = 0; i < out.rows(); ++i)
    for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) /= Rational(static_cast<long>(s.order()));
  return out;
}

ChartModel conjugate_chart(const ChartModel& c, const RatMatrix& p) {
  const RatMatrix pinv = p.inverse();
  std::vector<RatMatrix> gens;
  for (const RatMatrix& g : c.group->generators()) gens.push_back(p * g * pinv);
  return {generate_group(gens, c.dim())};
}

SuborbifoldCandidate conjugate_candidate(const SuborbifoldCandidate& c, const RatMatrix& p,
                                         const ChartModel& conjugated_chart) {
  const RatMatrix pinv = p.inverse();
  std::vector<std::size_t> members;
  for (std::size_t d : c.delta().members()) {
    const auto idx = conjugated_chart.group->index_of(p * c.delta().matrix(d) * pinv);
    ensure(idx.has_value(), "conjugated chart is missing an element");
    members.push_back(*idx);
  }
  std::vector<Vector> dirs;
  for (const Vector& b : c.v().basis()) dirs.push_back(p * b);
  return {conjugated_chart, Subgroup::from_members(conjugated_chart.group, members),
          AffineSubspace(p * c.v().base_point(), dirs)};
}

SplitChart split_chart(Gen& gen, std::size_t a, std::size_t b, std::size_t max_factor_order) {
  ChartModel left{gen.group(a, max_factor_order, gen.coin())};
  ChartModel right{gen.group(b, max_factor_order, gen.coin())};
  ProductChart product = product_chart(left, right);
  return {std::move(left), std::move(right), std::move(product)};
}

SuborbifoldCandidate split_full_candidate(Gen& gen, const SplitChart& s, bool left_factor) {
  const ChartModel& factor = left_factor ? s.left : s.right;
  const std::size_t a = s.left.dim();
  const std::size_t b = s.right.dim();
  const std::size_t n = a + b;

  // U is the whole factor (Δ_U = everything) or a point with its stabilizer.
  const bool whole = gen.coin();
  Vector p = whole ? zero_vector(factor.dim()) : gen.small_vector(factor.dim());
  const Subgroup du = whole ? factor.whole() : stabilizer(factor.whole(), p);

  Vector base = zero_vector(n);
  std::vector<Vector> dirs;
  const std::size_t offset = left_factor ? 0 : a;
  const std::size_t other = left_factor ? a : 0;
  const std::size_t other_dim = left_factor ? b : a;
  for (std::size_t i = 0; i < factor.dim(); ++i) base[offset + i] = p[i];
  if (whole)
    for (std::size_t i = 0; i < factor.dim(); ++i) dirs.push_back(unit_vector(n, offset + i));
  for (std::size_t i = 0; i < other_dim; ++i) dirs.push_back(unit_vector(n, other + i));

  std::vector<std::size_t> members;
  for (std::size_t k = 0; k < s.product.combined.group->order(); ++k) {
    const auto [i, j] = s.product.components[k];
    if (du.contains(left_factor ? i : j)) members.push_back(k);
  }
  return {s.product.combined, Subgroup::from_members(s.product.combined.group, members), AffineSubspace(base, dirs)};
}

EquivariantAffineMap random_equivariant_map(Gen& gen, const ChartModel& domain, std::size_t m) {
  const std::size_t n = domain.dim();
  const Subgroup whole = domain.whole();
  RatMatrix noise(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) noise(i, j) = gen.uniform(-2, 2);
  const RatMatrix mm = average_conjugate(whole, noise);
  const Vector b1 = average(whole, gen.small_vector(n));
  if (m == 0) {
    std::vector<std::size_t> theta(domain.group->order());
    std::iota(theta.begin(), theta.end(), 0);
    return {domain, domain, mm, b1, theta};
  }

  RatMatrix proj(n, n);
  for (std::size_t g : whole.members()) proj = proj + whole.matrix(g);
  RatMatrix r(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) r(i, j) = Rational(gen.uniform(-2, 2), static_cast<long>(whole.order()));

  const GroupPtr s = gen.group(m, 4, false);
  std::vector<RatMatrix> gens;
  for (const RatMatrix& g : domain.group->generators())
    gens.push_back(RatMatrix::block_diagonal(g, RatMatrix::identity(m)));
  for (const RatMatrix& g : s->generators()) gens.push_back(RatMatrix::block_diagonal(RatMatrix::identity(n), g));
  const ChartModel codomain{generate_group(gens, n + m)};

  std::vector<std::size_t> theta;
  for (const RatMatrix& g : domain.group->elements()) {
    theta.push_back(*codomain.group->index_of(RatMatrix::block_diagonal(g, RatMatrix::identity(m))));
  }
  Vector offset = b1;
  for (const Rational& e : gen.small_vector(m)) offset.push_back(e);
  return {domain, codomain, mm.vstack(r * proj), offset, theta};
}

EquivariantAffineMap random_invariant_submersion(Gen& gen, const ChartModel& domain, std::size_t m) {
  const std::size_t n = domain.dim();
  const Subgroup whole = domain.whole();
  RatMatrix proj(n, n);
  for (std::size_t g : whole.members()) proj = proj + whole.matrix(g);
  require(proj.rank() >= m, ErrorCode::RankDeficient, "fixed space too small for an invariant submersion");
  const ChartModel codomain{generate_group({}, m)};
  for (;;) {
    RatMatrix r(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) r(i, j) = gen.uniform(-2, 2);
    const RatMatrix a = r * proj;
    if (a.rank() != m) continue;
    return {domain, codomain, a, gen.small_vector(m), std::vector<std::size_t>(domain.group->order(), 0)};
  }
}

EquivariantAffineMap left_projection(const SplitChart& s) {
  const std::size_t a = s.left.dim();
  const std::size_t b = s.right.dim();
  RatMatrix p(a, a + b);
  for (std::size_t i = 0; i < a; ++i) p(i, i) = 1;
  std::vector<std::size_t> theta;
  for (const auto& [i, j] : s.product.components) theta.push_back(i);
  return {s.product.combined, s.left, p, zero_vector(a), theta};
}

}  // namespace suborb::testing
