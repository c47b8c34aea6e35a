#include <random>

#include "doctest.h"
#include "examples.hpp"
#include "jacobian_oracle.hpp"
#include "random_systems.hpp"
#include "tropmirror/mirrortoric.hpp"

using namespace tropmirror;

namespace {
IntMatrix rows(std::initializer_list<std::initializer_list<long>> r) { return IntMatrix(r); }
}  // namespace

TEST_CASE("pants fan and chart") {
  auto m = build_mirror(oracles::pants());
  REQUIRE(m.fan.rays.size() == 3);
  CHECK(m.fan.rays[0] == to_integer_vector({0, 0, 1}));
  CHECK(m.fan.rays[1] == to_integer_vector({-1, 0, 1}));
  CHECK(m.fan.rays[2] == to_integer_vector({0, -1, 1}));
  CHECK(m.fan.max_cones.size() == 1);
  CHECK(m.fan.nonsmooth_max_cones() == 0);
  REQUIRE(m.charts.size() == 1);
  const Chart& c = m.charts[0];
  CHECK(c.weights[0] == to_integer_vector({1, 1, 1}));
  CHECK(c.weights[1] == to_integer_vector({-1, 0, 0}));
  CHECK(c.weights[2] == to_integer_vector({0, -1, 0}));
  auto W = superpotential(m.fan, c);
  REQUIRE(W.size() == 1);
  CHECK(W[0].exponents == to_integer_vector({1, 1, 1}));
  CHECK(superpotential_text(m.fan, c) == "y[e1_2]*y[e0_2]*y[e0_1]");
  const TransitionMap* self = m.transition(0, 0);
  REQUIRE(self);
  CHECK(self->E == IntMatrix::identity(3));
}

TEST_CASE("square: resolved conifold with two smooth charts") {
  auto m = build_mirror(oracles::square());
  CHECK(m.fan.rays.size() == 4);
  CHECK(m.fan.max_cones.size() == 2);
  CHECK(m.fan.nonsmooth_max_cones() == 0);
  REQUIRE(m.charts.size() == 2);
  for (auto& c : m.charts) CHECK(superpotential(m.fan, c)[0].exponents == to_integer_vector({1, 1, 1}));
  const TransitionMap* t = m.transition(0, 1);
  REQUIRE(t);
  CHECK(t->adjacent);
  CHECK(t->E == rows({{1, 1, 0}, {1, 0, 1}, {-1, 0, 0}}));
  // the coordinate dual to the shared facet is inverted
  CHECK(m.charts[0].labels[0] == m.charts[1].labels[2]);
  auto back = m.transition(1, 0);
  REQUIRE(back);
  CHECK(back->E * t->E == IntMatrix::identity(3));
  CHECK(transition_cocycle(m).ok);
}

TEST_CASE("chain transitions compose") {
  auto m = build_mirror(oracles::chain3());
  auto e01 = m.transition(0, 1)->E, e12 = m.transition(1, 2)->E, e02 = m.transition(0, 2)->E;
  CHECK(e12 * e01 == e02);
  CHECK(e02 == rows({{3, 2, 0}, {-2, -1, 0}, {0, 0, 1}}));
  CHECK_FALSE(m.transition(0, 2)->adjacent);
  auto rep = transition_cocycle(m);
  CHECK(rep.ok);
  CHECK(rep.triples_checked > 0);
}

TEST_CASE("complete intersection: one stacky cone of index two") {
  auto m = build_mirror(oracles::ci());
  CHECK(m.fan.max_cones.size() == 1);
  CHECK(m.fan.nonsmooth_max_cones() == 1);
  REQUIRE(m.charts.size() == 1);
  CHECK(m.charts[0].stacky);
  CHECK(m.charts[0].index == 2);
  CHECK(m.charts[0].cover.order == 2);
  CHECK(m.charts[0].cover.group.to_string() == "Z/2");
  CHECK(m.charts[0].cover.dual.to_string() == "Z/2");
}

TEST_CASE("two lines: W is a sum of blockwise products") {
  auto m = build_mirror(oracles::two_lines());
  CHECK(m.charts.size() == 3);
  for (auto& c : m.charts) {
    auto W = superpotential(m.fan, c);
    REQUIRE(W.size() == 2);
    for (std::size_t j = 0; j < c.rays.size(); ++j) CHECK(W[0].exponents[j] * W[1].exponents[j] == 0);
  }
  CHECK(superpotential_text(m.fan, m.charts[0]) == "y[e1_2_3]*y[e0_2_3]*y[e0_1_3] + y[e0_1_2]");
}

TEST_CASE("moment polytope face counts") {
  struct Row {
    MonomialSystem sys;
    std::size_t c1, c2, c3;
  };
  std::vector<Row> rows_ = {{oracles::pants(), 3, 3, 1}, {oracles::square(), 4, 5, 2}, {oracles::halfline(), 2, 1, 0}};
  for (auto& r : rows_) {
    auto mp = moment_polytope(r.sys);
    CHECK(mp.count_codim(1) == r.c1);
    CHECK(mp.count_codim(2) == r.c2);
    CHECK(mp.count_codim(3) == r.c3);
  }
}

TEST_CASE("duality bijection on shipped examples") {
  struct Row {
    MonomialSystem sys;
    std::size_t tropical_pairs;
  };
  std::vector<Row> rows_ = {{oracles::pants(), 4}, {oracles::square(), 7}, {oracles::halfline(), 1}, {oracles::ci(), 4}};
  for (auto& r : rows_) {
    auto tc = build_stratification(r.sys);
    auto mp = moment_polytope(r.sys);
    auto d = duality_check(mp, tc);
    CHECK(d.tropical_pairs == r.tropical_pairs);
    CHECK(d.pairs.size() == tc.strata.size());
    CHECK(oracles::poset_recheck(r.sys, tc, mp).empty());
  }
}

TEST_CASE("duality_check rejects a mismatched complex") {
  auto mp = moment_polytope(oracles::pants());
  auto tc = build_stratification(oracles::square());
  CHECK_THROWS_AS(duality_check(mp, tc), Error);
}

TEST_CASE("certify_duality marks the mirror") {
  auto sys = oracles::square();
  auto m = build_mirror(sys);
  CHECK_FALSE(m.duality_verified);
  certify_duality(m, sys, build_stratification(sys));
  CHECK(m.duality_verified);
}

TEST_CASE("critical locus matches the Jacobian oracle") {
  for (auto& ex : oracles::shipped()) {
    auto m = build_mirror(ex.sys);
    CHECK_MESSAGE(oracles::jacobian_critical_orbits(m) == oracles::combinatorial_critical_orbits(m.fan), ex.name);
  }
  auto pants = build_mirror(oracles::pants());
  auto crit = critical_locus(pants.fan);
  CHECK(crit.size() == 4);
  std::size_t codim2 = 0, codim3 = 0;
  for (auto& c : crit) {
    if (c.orbit_codim == 2) {
      ++codim2;
      CHECK(c.fiber_rank == 1);
    }
    if (c.orbit_codim == 3) ++codim3;
  }
  CHECK(codim2 == 3);
  CHECK(codim3 == 1);
  CHECK(critical_locus(build_mirror(oracles::square()).fan).size() == 7);
  CHECK(critical_locus(build_mirror(oracles::two_lines()).fan).size() == 1);
}

TEST_CASE("A-side critical data") {
  auto p = oracles::pants();
  auto a = a_side_critical(p, build_stratification(p));
  CHECK(a.equations == std::vector<std::string>{"u = 0", "1 + x1 + x2 = 0"});
  CHECK(a.fiber_rank == 1);
  auto ci = oracles::ci();
  auto b = a_side_critical(ci, build_stratification(ci));
  CHECK(b.equations.size() == 4);
  CHECK(b.fiber_rank == 1);
  auto two = oracles::two_lines();
  CHECK(a_side_critical(two, build_stratification(two)).fiber_rank == 0);
}

TEST_CASE("random mirrors: cocycle and Jacobian agreement") {
  std::mt19937 rng(23);
  for (int k = 0; k < 8; ++k) {
    auto sys = oracles::random_mirror_system(rng, 3, 2);
    auto m = build_mirror(sys);
    CHECK(transition_cocycle(m).ok);
    CHECK(oracles::jacobian_critical_orbits(m) == oracles::combinatorial_critical_orbits(m.fan));
  }
}

TEST_CASE("non-star-shaped subdivisions have no mirror fan") {
  auto sub = regular_subdivision({to_integer_vector({0, 0}), to_integer_vector({1, 0}), to_integer_vector({0, 1}),
                                  to_integer_vector({1, 1})},
                                 {0, 0, 0, 1});
  CHECK_THROWS_AS(build_fan(sub, 1), Error);
}
