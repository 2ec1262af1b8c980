#include <doctest.h>

#include "oracle.hpp"
#include "properties.hpp"
#include "suborb/error.hpp"
#include "suborb/maps.hpp"

using namespace suborb;

namespace {

const RatMatrix kQuarter{{0, -1}, {1, 0}};
const RatMatrix kHalf{{-1, 0}, {0, -1}};

ChartModel trivial_chart(std::size_t n) { return {generate_group({}, n)}; }
ChartModel quarter_chart() { return {generate_group({kQuarter}, 2)}; }
ChartModel plus_minus(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = -1;
  return {generate_group({m}, n)};
}

std::vector<std::size_t> identity_theta(const ChartModel& c) {
  std::vector<std::size_t> t(c.group->order());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = i;
  return t;
}

EquivariantAffineMap identity_map(const ChartModel& c) {
  return {c, c, RatMatrix::identity(c.dim()), zero_vector(c.dim()), identity_theta(c)};
}

/// First coordinate R^2 -> R with -I acting as -1.
EquivariantAffineMap sign_projection() {
  return EquivariantAffineMap::from_generator_images(plus_minus(2), plus_minus(1), RatMatrix{{1, 0}}, {0},
                                                     {RatMatrix{{-1}}});
}

SuborbifoldCandidate whole_candidate(const ChartModel& c) { return {c, c.whole(), AffineSubspace::whole(c.dim())}; }

SuborbifoldCandidate line_candidate(const ChartModel& c, Vector base, Vector dir) {
  return {c, c.whole(), AffineSubspace(std::move(base), {std::move(dir)})};
}

}  // namespace

TEST_SUITE("orbifold_maps") {
  TEST_CASE("equivariance is enforced") {
    const ChartModel pm = plus_minus(2);
    try {
      EquivariantAffineMap(pm, pm, RatMatrix::identity(2), {1, 0}, identity_theta(pm));
      FAIL("offset breaks equivariance");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotEquivariant);
    }
    try {
      EquivariantAffineMap(plus_minus(1), plus_minus(1), RatMatrix{{1}}, {0}, {0, 0});
      FAIL("theta is not a homomorphism");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotHomomorphism);
    }
    CHECK_THROWS_AS(EquivariantAffineMap(pm, pm, RatMatrix::identity(3), zero_vector(2), identity_theta(pm)), Error);
  }

  TEST_CASE("inferred theta") {
    const EquivariantAffineMap f =
        EquivariantAffineMap::with_inferred_theta(plus_minus(2), plus_minus(1), RatMatrix{{1, 0}}, {0});
    const std::size_t minus = *plus_minus(2).group->index_of(kHalf);
    CHECK(f.codomain().group->element(f.theta(minus)) == RatMatrix{{-1}});
    CHECK_THROWS_AS(EquivariantAffineMap::with_inferred_theta(plus_minus(2), plus_minus(1), RatMatrix{{1, 0}}, {1}),
                    Error);
  }

  TEST_CASE("ranks, immersions and submersions") {
    const ChartModel t2 = trivial_chart(2);
    CHECK(rank_at(identity_map(t2), {1, 2}) == 2);
    const EquivariantAffineMap zero(t2, trivial_chart(1), RatMatrix(1, 2), {0}, {0});
    CHECK(rank_at(zero, {1, 2}) == 0);
    CHECK(rank_at(sign_projection(), {0, 0}) == 1);
    CHECK(is_submersion(sign_projection()));
    CHECK_FALSE(is_immersion(sign_projection()));
    CHECK(is_immersion(identity_map(t2)));
    CHECK(is_submersion(identity_map(t2)));
    const EquivariantAffineMap axis = EquivariantAffineMap(trivial_chart(1), t2, RatMatrix{{1}, {0}}, {0, 0}, {0});
    CHECK(is_immersion(axis));
    CHECK_FALSE(is_submersion(axis));
  }

  TEST_CASE("composition") {
    const EquivariantAffineMap f = sign_projection();
    const EquivariantAffineMap g = compose(f, identity_map(plus_minus(2)));
    CHECK(g.linear() == f.linear());
    CHECK(g.theta() == f.theta());
  }

  TEST_CASE("product charts") {
    const ProductChart tt = product_chart(trivial_chart(1), trivial_chart(2));
    CHECK(tt.combined.group->order() == 1);
    CHECK(tt.combined.dim() == 3);
    const ProductChart hh = product_chart(plus_minus(2), plus_minus(2));
    CHECK(hh.combined.group->order() == 4);
    CHECK(hh.combined.dim() == 4);
    const std::size_t minus = *hh.left.group->index_of(kHalf);
    CHECK(hh.combined.group->element(hh.index_of(minus, hh.right.group->identity())) ==
          RatMatrix::block_diagonal(kHalf, RatMatrix::identity(2)));
    CHECK_THROWS_AS(product_chart(quarter_chart(), quarter_chart(), 8), Error);
  }

  TEST_CASE("graph of the identity is the embedded diagonal") {
    const GraphSuborbifold g = graph_suborbifold(identity_map(quarter_chart()));
    CHECK(g.candidate.dim() == 2);
    CHECK(g.candidate.chart().dim() == 4);
    CHECK(g.report.saturated.saturated);
    REQUIRE(g.report.embedded);
    CHECK(g.report.embedded->embedded);
    CHECK_FALSE(g.report.full.full);
    CHECK(g.candidate.v().contains({1, 2, 1, 2}));
  }

  TEST_CASE("graphs of constant maps") {
    const ChartModel pm = plus_minus(2);
    const EquivariantAffineMap regular(trivial_chart(1), pm, RatMatrix(2, 1), {1, 0}, {pm.group->identity()});
    const GraphSuborbifold r = graph_suborbifold(regular);
    CHECK(r.image_in_regular_part);
    CHECK(r.report.full.full);

    const EquivariantAffineMap singular(trivial_chart(1), pm, RatMatrix(2, 1), {0, 0}, {pm.group->identity()});
    const GraphSuborbifold s = graph_suborbifold(singular);
    CHECK_FALSE(s.image_in_regular_part);
    CHECK(s.report.saturated.saturated);
    REQUIRE(s.report.embedded);
    CHECK(s.report.embedded->embedded);
    CHECK_FALSE(s.report.full.full);
    CHECK_FALSE(testing::fullness_oracle(s.candidate));
  }

  TEST_CASE("images") {
    const ChartModel q = quarter_chart();
    const SuborbifoldCandidate line(q, Subgroup::generated_by(q.group, std::vector<std::size_t>{*q.group->index_of(kHalf)}),
                                    AffineSubspace::linear_span(2, {{1, 0}}));
    CHECK(image_suborbifold(identity_map(q), line).v() == line.v());
    CHECK(image_suborbifold(identity_map(q), line).delta() == line.delta());

    const EquivariantAffineMap inc = EquivariantAffineMap::from_generator_images(
        plus_minus(1), q, RatMatrix{{1}, {0}}, {0, 0}, {kHalf});
    CHECK(is_embedding(inc));
    const SuborbifoldCandidate img = image_suborbifold(inc, whole_candidate(plus_minus(1)));
    CHECK(img.v() == line.v());
    CHECK(img.delta() == line.delta());
    CHECK(check_saturated(img).saturated);
    CHECK_FALSE(check_full(img).full);
  }

  TEST_CASE("inclusion of an induced chart") {
    const ChartModel q = quarter_chart();
    const SuborbifoldCandidate line(q, Subgroup::generated_by(q.group, std::vector<std::size_t>{*q.group->index_of(kHalf)}),
                                    AffineSubspace::linear_span(2, {{1, 0}}));
    const EquivariantAffineMap inc = inclusion_map(line);
    CHECK(inc.domain().dim() == 1);
    CHECK(is_immersion(inc));
    const SuborbifoldCandidate back = image_suborbifold(inc, whole_candidate(inc.domain()));
    CHECK(back.v() == line.v());
    CHECK(back.delta() == line.delta());
  }

  TEST_CASE("quotient injectivity") {
    const ChartModel q = quarter_chart();
    // x -> (x, 0) from the trivial line chart identifies x with -x in the quotient.
    const EquivariantAffineMap flat(trivial_chart(1), q, RatMatrix{{1}, {0}}, {0, 0}, {q.group->identity()});
    const QuotientInjectivity r = check_quotient_injective(flat);
    CHECK_FALSE(r.injective);
    REQUIRE(r.element);
    CHECK(q.group->element(*r.element) == kHalf);
    CHECK_FALSE(is_embedding(flat));
  }

  TEST_CASE("transversality of candidates") {
    const ChartModel pm = plus_minus(2);
    const SuborbifoldCandidate x = line_candidate(pm, {0, 0}, {1, 0});
    const SuborbifoldCandidate y = line_candidate(pm, {0, 0}, {0, 1});
    CHECK(transverse_candidates(pm, x, y));
    const ChartModel t = trivial_chart(2);
    CHECK_FALSE(transverse_candidates(t, line_candidate(t, {0, 0}, {1, 0}), line_candidate(t, {0, 1}, {1, 0})));
    CHECK(transverse_candidates(t, line_candidate(t, {0, 0}, {1, 0}), line_candidate(t, {0, 0}, {1, 1})));
  }

  TEST_CASE("transverse intersections") {
    const ChartModel pm = plus_minus(2);
    const SuborbifoldCandidate origin =
        intersect_full(line_candidate(pm, {0, 0}, {1, 0}), line_candidate(pm, {0, 0}, {0, 1}));
    CHECK(origin.dim() == 0);
    CHECK(origin.v() == AffineSubspace::point(zero_vector(2)));
    CHECK(check_full(origin).full);

    const ChartModel pm3 = plus_minus(3);
    const SuborbifoldCandidate plane(pm3, pm3.whole(), AffineSubspace::linear_span(3, {{1, 0, 0}, {0, 1, 0}}));
    const SuborbifoldCandidate z(pm3, pm3.whole(), AffineSubspace::linear_span(3, {{0, 0, 1}}));
    const SuborbifoldCandidate o = intersect_full(plane, z);
    CHECK(o.dim() == 0);
    CHECK(o.v().base_point() == zero_vector(3));

    const ChartModel t = trivial_chart(2);
    try {
      intersect_full(line_candidate(t, {0, 0}, {1, 0}), line_candidate(t, {0, 1}, {1, 0}));
      FAIL("parallel lines accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotTransverse);
    }
  }

  TEST_CASE("product candidates intersect in the product of their factors") {
    const ProductChart p = product_chart(plus_minus(1), quarter_chart());
    const ChartModel& c = p.combined;
    // {0} x R^2 with Δ = Γ, and R x {(1,0)} with Δ = {±1} x {e}.
    const SuborbifoldCandidate left(c, c.whole(), AffineSubspace::linear_span(3, {{0, 1, 0}, {0, 0, 1}}));
    std::vector<std::size_t> members;
    for (std::size_t k = 0; k < c.group->order(); ++k)
      if (p.components[k].second == p.right.group->identity()) members.push_back(k);
    const SuborbifoldCandidate right(c, Subgroup::from_members(c.group, members), AffineSubspace({0, 1, 0}, {{1, 0, 0}}));
    const SuborbifoldCandidate out = intersect_full(left, right);
    CHECK(out.v() == AffineSubspace::point({0, 1, 0}));
    CHECK(out.delta().order() == 2);
    CHECK(testing::fullness_oracle(out));
  }

  TEST_CASE("preimages") {
    const EquivariantAffineMap f = sign_projection();
    const auto y_axis = preimage_suborbifold(f, {f.codomain(), f.codomain().whole(), AffineSubspace::point({0})});
    REQUIRE(y_axis);
    CHECK(y_axis->v() == AffineSubspace::linear_span(2, {{0, 1}}));
    CHECK(y_axis->dim() == 1);
    CHECK(y_axis->delta().is_whole());
    CHECK(check_full(*y_axis).full);

    const ChartModel t = trivial_chart(2);
    const EquivariantAffineMap axis(trivial_chart(1), t, RatMatrix{{1}, {0}}, {0, 0}, {0});
    CHECK_FALSE(preimage_suborbifold(axis, line_candidate(t, {0, 1}, {1, 0})));
    try {
      preimage_suborbifold(axis, line_candidate(t, {0, 0}, {1, 0}));
      FAIL("non-transverse target accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotTransverseToQ);
    }
  }

  TEST_CASE("submersions are transverse to every full candidate") {
    const EquivariantAffineMap f = sign_projection();
    for (const Vector& v : {Vector{0}, Vector{3}, Vector{Rational(-1, 2)}}) {
      const SuborbifoldCandidate q(f.codomain(), stabilizer(f.codomain().whole(), v), AffineSubspace::point(v));
      const auto pre = preimage_suborbifold(f, q);
      REQUIRE(pre);
      CHECK(pre->dim() == 1);
    }
  }

  TEST_CASE("fibered products") {
    const ChartModel t1 = trivial_chart(1);
    const FiberedProduct diag = fibered_product(identity_map(t1), identity_map(t1));
    CHECK(diag.candidate.dim() == 1);
    CHECK(diag.candidate.v() == AffineSubspace::linear_span(2, {{1, 1}}));

    const ChartModel flip{generate_group({RatMatrix{{1, 0}, {0, -1}}}, 2)};
    const EquivariantAffineMap p(flip, t1, RatMatrix{{1, 0}}, {0}, {0, 0});
    const FiberedProduct fp = fibered_product(p, p);
    CHECK(fp.candidate.dim() == 3);
    CHECK(fp.candidate.delta().order() == 4);
    CHECK(testing::fullness_oracle(fp.candidate));

    try {
      fibered_product(sign_projection(), sign_projection());
      FAIL("codomain with a nontrivial group accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::CodomainNotManifold);
    }
  }

  TEST_CASE("regular values") {
    const SuborbifoldCandidate y_axis = regular_value_preimage(sign_projection(), {0});
    CHECK(y_axis.v() == AffineSubspace::linear_span(2, {{0, 1}}));
    const SuborbifoldCandidate pt = regular_value_preimage(identity_map(quarter_chart()), {1, 2});
    CHECK(pt.v() == AffineSubspace::point({1, 2}));
    CHECK(pt.delta().is_trivial());
    const EquivariantAffineMap zero(trivial_chart(2), trivial_chart(1), RatMatrix(1, 2), {0}, {0});
    try {
      regular_value_preimage(zero, {0});
      FAIL("rank-deficient map accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::RankDeficient);
    }
  }

  TEST_CASE("small-count dimension and graph properties") {
    for (const testing::PropertyResult& r :
         {testing::intersect_dimension_property(100, 4), testing::preimage_dimension_property(200, 4),
          testing::fibered_dimension_property(300, 3), testing::graph_property(400, 6)}) {
      CHECK(r.passed());
      for (const std::string& f : r.failures) MESSAGE(f);
    }
  }
}
