#include <doctest.h>

#include <algorithm>
#include <set>

#include "oracle.hpp"
#include "random_scenes.hpp"
#include "suborb/error.hpp"
#include "suborb/group.hpp"
#include "suborb/realify.hpp"

using namespace suborb;

namespace {

const RatMatrix kQuarter{{0, -1}, {1, 0}};

GroupPtr quarter_turns() { return generate_group({kQuarter}, 2); }
GroupPtr sign_flips() { return generate_group({{{-1, 0}, {0, 1}}, {{1, 0}, {0, -1}}}, 2); }

RatMatrix complex_diag(const char* a, const char* b) {
  return realify({{GaussianRational::parse(a), GaussianRational::parse("0")},
                  {GaussianRational::parse("0"), GaussianRational::parse(b)}});
}

GroupPtr complex_order_four() { return generate_group({complex_diag("i", "-1")}, 4); }

Subgroup sub(const GroupPtr& g, std::initializer_list<RatMatrix> gens) {
  std::vector<std::size_t> idx;
  for (const RatMatrix& m : gens) idx.push_back(*g->index_of(m));
  return Subgroup::generated_by(g, idx);
}

}  // namespace

TEST_SUITE("group_engine") {
  TEST_CASE("enumeration") {
    CHECK(quarter_turns()->order() == 4);
    const GroupPtr trivial = generate_group({}, 3);
    CHECK(trivial->order() == 1);
    CHECK(trivial->element(0).is_identity());
    CHECK(complex_order_four()->order() == 4);
    CHECK(quarter_turns()->table().verify_axioms());
  }

  TEST_CASE("enumeration errors") {
    CHECK_THROWS_AS(generate_group({{{1, 1}, {0, 1}}}, 2, 50), Error);
    try {
      generate_group({{{1, 0}, {0, 0}}}, 2);
      FAIL("singular generator accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NonInvertibleGenerator);
    }
    try {
      generate_group({RatMatrix::identity(3)}, 2);
      FAIL("wrong size accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DimensionMismatch);
    }
  }

  TEST_CASE("realification of Gaussian rationals") {
    CHECK(GaussianRational::parse("1/2+3/4i") == GaussianRational{Rational(1, 2), Rational(3, 4)});
    CHECK(GaussianRational::parse("-i") == GaussianRational{0, -1});
    CHECK(GaussianRational::parse("2") == GaussianRational{2, 0});
    CHECK(realify({{GaussianRational::parse("1+2i")}}) == RatMatrix{{1, -2}, {2, 1}});
    CHECK(complex_diag("i", "-1") == RatMatrix{{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1}});
  }

  TEST_CASE("subgroup lattices") {
    CHECK(all_subgroups(Subgroup::whole(generate_group({}, 1))).size() == 1);
    const auto z4 = all_subgroups(Subgroup::whole(quarter_turns()));
    REQUIRE(z4.size() == 3);
    std::multiset<std::size_t> orders;
    for (const Subgroup& s : z4) orders.insert(s.order());
    CHECK(orders == std::multiset<std::size_t>{1, 2, 4});
    CHECK(all_subgroups(Subgroup::whole(sign_flips())).size() == 5);
  }

  TEST_CASE("subgroup lattice matches closure of every subset") {
    testing::Gen gen(3);
    for (int trial = 0; trial < 8; ++trial) {
      const GroupPtr g = gen.group(static_cast<std::size_t>(gen.uniform(1, 3)), 16, gen.coin());
      std::set<std::vector<std::size_t>> brute;
      for (std::size_t mask = 0; mask < (std::size_t{1} << g->order()); ++mask) {
        std::vector<std::size_t> gens;
        for (std::size_t i = 0; i < g->order(); ++i)
          if (mask >> i & 1) gens.push_back(i);
        if (gens.size() > 3) continue;
        brute.insert(Subgroup::generated_by(g, gens).members());
      }
      std::set<std::vector<std::size_t>> lib;
      for (const Subgroup& s : all_subgroups(Subgroup::whole(g))) lib.insert(s.members());
      // Signed permutation groups of order <= 16 in dim <= 3 are 3-generated.
      CHECK(lib == brute);
    }
  }

  TEST_CASE("stabilizers") {
    const GroupPtr q = quarter_turns();
    CHECK(stabilizer(Subgroup::whole(q), zero_vector(2)).is_whole());
    CHECK(stabilizer(Subgroup::whole(q), {1, 0}).is_trivial());
    const GroupPtr k = sign_flips();
    const Subgroup s = stabilizer(Subgroup::whole(k), {1, 0});
    CHECK(s.order() == 2);
    CHECK(s.contains(*k->index_of(RatMatrix{{1, 0}, {0, -1}})));
  }

  TEST_CASE("pointwise stabilizers") {
    const GroupPtr q = quarter_turns();
    CHECK(pointwise_stabilizer(Subgroup::whole(q), AffineSubspace::whole(2)).is_trivial());
    const Subgroup half = sub(q, {RatMatrix{{-1, 0}, {0, -1}}});
    CHECK(pointwise_stabilizer(half, AffineSubspace::linear_span(2, {{1, 0}})).is_trivial());

    const GroupPtr c = complex_order_four();
    const AffineSubspace axis = AffineSubspace::linear_span(4, {{0, 0, 1, 0}, {0, 0, 0, 1}});
    const Subgroup k = pointwise_stabilizer(Subgroup::whole(c), axis);
    REQUIRE(k.order() == 2);
    CHECK(k.contains(*c->index_of(complex_diag("-1", "1"))));
  }

  TEST_CASE("quotients") {
    const GroupPtr q = quarter_turns();
    const Subgroup whole = Subgroup::whole(q);
    CHECK(quotient_group(whole, whole).group.order() == 1);
    const QuotientGroup by_trivial = quotient_group(whole, Subgroup::trivial(q));
    CHECK(by_trivial.group.order() == 4);
    CHECK(by_trivial.projection.is_injective());
    const Subgroup half = sub(q, {RatMatrix{{-1, 0}, {0, -1}}});
    const QuotientGroup z2 = quotient_group(whole, half);
    CHECK(z2.group.order() == 2);
    CHECK(z2.projection.is_surjective());
  }

  TEST_CASE("complements") {
    const GroupPtr q = quarter_turns();
    const Subgroup whole = Subgroup::whole(q);
    const auto full = find_complement(whole, Subgroup::trivial(q));
    REQUIRE(std::holds_alternative<Subgroup>(full));
    CHECK(std::get<Subgroup>(full) == whole);

    const Subgroup half = sub(q, {RatMatrix{{-1, 0}, {0, -1}}});
    const auto none = find_complement(whole, half);
    REQUIRE(std::holds_alternative<NoComplementCertificate>(none));
    const auto& cert = std::get<NoComplementCertificate>(none);
    CHECK(cert.delta_order == 4);
    CHECK(cert.kernel_order == 2);
    CHECK(cert.subgroups_examined == 3);
    CHECK(cert.candidates_of_complement_order == 1);

    const GroupPtr k = sign_flips();
    const Subgroup first = sub(k, {RatMatrix{{-1, 0}, {0, 1}}});
    const auto other = find_complement(Subgroup::whole(k), first);
    REQUIRE(std::holds_alternative<Subgroup>(other));
    const Subgroup& c = std::get<Subgroup>(other);
    CHECK(c.order() == 2);
    CHECK(verify_complement(Subgroup::whole(k), first, c));
    CHECK(testing::product_set(c, first) == Subgroup::whole(k).members());
  }

  TEST_CASE("fingerprints") {
    const Fingerprint trivial = iso_fingerprint(Subgroup::whole(generate_group({}, 1)));
    CHECK(trivial.order == 1);
    CHECK(trivial.element_orders == std::vector<std::size_t>{1});
    const Fingerprint z4 = iso_fingerprint(Subgroup::whole(quarter_turns()));
    CHECK(z4.element_orders == std::vector<std::size_t>{1, 2, 4, 4});
    CHECK(z4.abelian);
    CHECK(z4.describe() == "Z4");
    const Fingerprint klein = iso_fingerprint(Subgroup::whole(sign_flips()));
    CHECK(klein.element_orders == std::vector<std::size_t>{1, 2, 2, 2});
    CHECK(klein.describe() == "Z2xZ2");
    CHECK_FALSE(z4 == klein);
    CHECK_FALSE(are_isomorphic_exact(Subgroup::whole(quarter_turns()).as_abstract(),
                                     Subgroup::whole(sign_flips()).as_abstract()));
    CHECK(are_isomorphic_exact(Subgroup::whole(quarter_turns()).as_abstract(),
                               Subgroup::whole(complex_order_four()).as_abstract()));
  }

  TEST_CASE("random groups satisfy the group axioms and canonical ordering") {
    testing::Gen gen(5);
    for (int trial = 0; trial < 20; ++trial) {
      const GroupPtr g = gen.group(static_cast<std::size_t>(gen.uniform(1, 4)), 16, gen.coin());
      CHECK(g->table().verify_axioms());
      CHECK(std::is_sorted(g->elements().begin(), g->elements().end()));
      for (std::size_t a = 0; a < g->order(); ++a)
        for (std::size_t b = 0; b < g->order(); ++b) CHECK(g->element(g->multiply(a, b)) == g->element(a) * g->element(b));
    }
  }
}
