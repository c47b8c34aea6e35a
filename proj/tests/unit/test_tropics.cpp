#include <random>

#include "doctest.h"
#include "examples.hpp"
#include "tropmirror/tropics.hpp"

using namespace tropmirror;

namespace {
RatVector q(std::vector<Rational> v) { return v; }
std::size_t stratum_with(const TropicalComplex& tc, const ActiveTuple& t) {
  std::size_t s = tc.find(t);
  REQUIRE(s < tc.strata.size());
  return s;
}
}  // namespace

TEST_CASE("tropical evaluation on the pants line") {
  auto sys = oracles::pants();
  auto v = trop_eval(sys, 0, q({0, 0}));
  CHECK(v.value == 0);
  CHECK(v.argmax.size() == 3);
  v = trop_eval(sys, 0, q({1, 0}));
  CHECK(v.value == 1);
  CHECK(v.argmax == std::vector<std::size_t>{1});
  v = trop_eval(sys, 0, q({Rational(1, 2), Rational(1, 2)}));
  CHECK(v.value == Rational(1, 2));
  CHECK(v.argmax == std::vector<std::size_t>{1, 2});
}

TEST_CASE("tropical distance") {
  auto sys = oracles::pants();
  CHECK(tropical_distance(sys, 0, q({1, 0}), 1) == 0);
  CHECK(tropical_distance(sys, 0, q({1, 0}), 0) == 1);
  CHECK(tropical_distance(sys, 0, q({3, 3}), to_integer_vector({0, 1})) == 0);
  CHECK_THROWS_AS(tropical_distance(sys, 0, q({0, 0}), to_integer_vector({2, 2})), Error);
}

TEST_CASE("t parameter parsing") {
  CHECK(TParam::parse("e^20").log_t == doctest::Approx(20));
  CHECK(TParam::parse("e^{5/2}").log_t == doctest::Approx(2.5));
  auto t = TParam::parse("100");
  REQUIRE(t.exact);
  CHECK(*t.exact == 100);
  CHECK(t.log_t == doctest::Approx(std::log(100.0)));
  CHECK_THROWS_AS(TParam::parse("1/2"), Error);
  CHECK_THROWS_AS(TParam::parse("e^-1"), Error);
}

TEST_CASE("stratification counts on shipped curves") {
  struct Row {
    MonomialSystem sys;
    std::size_t strata, vertices, edges, regions, opens;
  };
  std::vector<Row> rows = {{oracles::pants(), 7, 1, 3, 3, 1},
                           {oracles::square(), 11, 2, 5, 4, 3},
                           {oracles::chain3(), 15, 3, 7, 5, 5},
                           {oracles::halfline(), 3, 1, 0, 2, 1}};
  for (auto& r : rows) {
    auto tc = build_stratification(r.sys);
    CHECK(tc.strata.size() == r.strata);
    CHECK(tc.vertices.size() == r.vertices);
    CHECK(tc.edges.size() == r.edges);
    CHECK(tc.regions().size() == r.regions);
    auto P = build_open_poset(tc);
    CHECK(P.opens.size() == r.opens);
    CHECK(P.intersection_closed());
  }
}

TEST_CASE("pants strata and witnesses") {
  auto tc = build_stratification(oracles::pants());
  auto v = stratum_with(tc, {{0, 1, 2}});
  CHECK(tc.strata[v].dim == 0);
  CHECK(tc.strata[v].witness == q({0, 0}));
  auto diag = stratum_with(tc, {{1, 2}});
  CHECK(tc.strata[diag].dim == 1);
  CHECK(tc.strata[diag].recession_rays.size() == 1);
  CHECK(tc.below[v][diag]);
  CHECK_FALSE(tc.below[diag][v]);
  CHECK(tc.locate(q({5, 5})) == diag);
  CHECK(tc.locate(q({-1, -1})) == stratum_with(tc, {{0}}));
}

TEST_CASE("square: bounded edge between the two vertices") {
  auto tc = build_stratification(oracles::square());
  auto e = stratum_with(tc, {{1, 2}});
  CHECK(tc.strata[e].bounded());
  CHECK(tc.strata[stratum_with(tc, {{1, 2, 3}})].witness == q({1, 1}));
  auto P = build_open_poset(tc);
  // U_e sits inside both vertex opens
  std::size_t inside = 0;
  for (std::size_t a = 0; a < P.opens.size(); ++a)
    for (std::size_t b = 0; b < P.opens.size(); ++b)
      if (P.subset[a][b]) ++inside;
  CHECK(inside == 2);
}

TEST_CASE("chain3 poset: two edge opens inside vertex opens") {
  auto tc = build_stratification(oracles::chain3());
  auto P = build_open_poset(tc);
  std::size_t inside = 0;
  for (std::size_t a = 0; a < P.opens.size(); ++a)
    for (std::size_t b = 0; b < P.opens.size(); ++b)
      if (P.subset[a][b]) ++inside;
  CHECK(inside == 4);
}

TEST_CASE("closure order is the reverse inclusion of active sets") {
  std::mt19937 rng(3);
  for (auto& ex : oracles::shipped()) {
    auto tc = build_stratification(ex.sys);
    for (std::size_t a = 0; a < tc.strata.size(); ++a)
      for (std::size_t b = 0; b < tc.strata.size(); ++b) {
        if (a == b) continue;
        bool sup = true;
        for (std::size_t i = 0; i < tc.r; ++i)
          sup = sup && std::includes(tc.strata[a].active[i].begin(), tc.strata[a].active[i].end(),
                                     tc.strata[b].active[i].begin(), tc.strata[b].active[i].end());
        CHECK(sup == tc.below[a][b]);
      }
    // every witness lies in its own stratum
    for (std::size_t s = 0; s < tc.strata.size(); ++s) CHECK(tc.locate(tc.strata[s].witness) == s);
  }
}

TEST_CASE("non-transverse systems are rejected") {
  auto p = oracles::pants();
  MonomialSystem twice(2, {p.factor(0), p.factor(0)});
  CHECK_THROWS_AS(build_stratification(twice), Error);
  try {
    build_stratification(twice);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonTransverse);
  }
}

TEST_CASE("saturation") {
  auto tc = build_stratification(oracles::pants());
  auto all = saturate(open_box(q({0, 0}), Rational(1, 100)), tc);
  CHECK(all.size() == 4);
  auto one = saturate(open_box(q({5, 5}), Rational(1, 10)), tc);
  REQUIRE(one.size() == 1);
  CHECK(tc.strata[one[0]].active[0] == std::vector<std::size_t>{1, 2});
  CHECK(saturate(open_box(q({-5, -5}), Rational(1)), tc).empty());
  auto sq = build_stratification(oracles::square());
  OpenPolytope slab = open_box(q({Rational(1, 2), Rational(1, 2)}), Rational(1));
  CHECK(saturate(slab, sq).size() == sq.tropical_strata().size());
}

TEST_CASE("zigzag chains") {
  auto tc = build_stratification(oracles::pants());
  Region b = open_box(q({0, 0}), Rational(1, 10));
  auto z = zigzag_connect(b, b, tc);
  CHECK(z.saturation.size() == 4);
  Region b2 = open_box(q({Rational(1, 20), 0}), Rational(1, 5));
  auto z2 = zigzag_connect(b, b2, tc);
  CHECK(saturate(z2.q1, tc) == z2.saturation);
  CHECK(saturate(z2.q12, tc) == z2.saturation);
  CHECK(saturate(z2.q2, tc) == z2.saturation);
  // two disjoint balls on the diagonal edge
  Region e1 = open_box(q({3, 3}), Rational(1, 10)), e2 = open_box(q({6, 6}), Rational(1, 10));
  auto z3 = zigzag_connect(e1, e2, tc);
  CHECK(z3.saturation.size() == 1);
  CHECK(region_contains(e1, z3.q1));
  CHECK(region_contains(e2, z3.q2));
  Region off = open_box(q({3, 0}), Rational(1, 10));
  CHECK_THROWS_AS(zigzag_connect(e1, off, tc), Error);
}
