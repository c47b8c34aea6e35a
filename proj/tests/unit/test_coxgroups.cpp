#include <random>

#include "doctest.h"
#include "examples.hpp"
#include "random_cones.hpp"
#include "tropmirror/coxgroups.hpp"
#include "tropmirror/mirrortoric.hpp"

using namespace tropmirror;

TEST_CASE("presentation strings") {
  AbGroupPresentation g;
  CHECK(g.to_string() == "0");
  g.free_rank = 2;
  g.invariant_factors = {2, 6};
  CHECK(g.to_string() == "Z^2 + Z/2 + Z/6");
  CHECK(g.torsion_order() == 12);
  CHECK(cokernel_presentation(IntMatrix{{3}}).to_string() == "Z/3");
  CHECK(finite_dual(IntMatrix{{2, 0}, {0, 3}}).to_string() == "Z/6");
}

TEST_CASE("class groups") {
  CHECK(class_group(build_mirror(oracles::pants()).fan).group.to_string() == "0");
  CHECK(class_group(build_mirror(oracles::square()).fan).group.to_string() == "Z");
  Fan f = make_fan(2, {to_integer_vector({1, 0}), to_integer_vector({1, 3})}, {{0, 1}});
  CHECK(class_group(f).group.to_string() == "Z/3");
  CHECK(class_group(build_mirror(oracles::chain3()).fan).group.to_string() == "Z^2");
  CHECK(class_group(build_mirror(oracles::ci()).fan).group.to_string() == "Z/2");
}

TEST_CASE("cox groups") {
  auto pants = cox_group(build_mirror(oracles::pants()).fan);
  CHECK(pants.group.trivial());
  Fan f = make_fan(2, {to_integer_vector({1, 0}), to_integer_vector({1, 3})}, {{0, 1}});
  auto mu3 = cox_group(f);
  CHECK(mu3.group.to_string() == "Z/3");
  CHECK(mu3.condition_text() == std::vector<std::string>{"t1t2=1", "t2^3=1"});
  auto sq = cox_group(build_mirror(oracles::square()).fan);
  CHECK(sq.group.to_string() == "Z");
  REQUIRE(sq.free_weights.size() == 1);
  CHECK(sq.free_weights[0] == to_integer_vector({1, -1, -1, 1}));
}

TEST_CASE("irrelevant ideals") {
  auto one = irrelevant_data(build_mirror(oracles::pants()).fan);
  CHECK(one.generators.size() == 1);
  CHECK(one.exceptional_set_empty);
  auto sq = irrelevant_data(build_mirror(oracles::square()).fan);
  CHECK(sq.generators.size() == 2);
  CHECK_FALSE(sq.exceptional_set_empty);
  Fan p1 = make_fan(1, {to_integer_vector({1}), to_integer_vector({-1})}, {{0}, {1}});
  auto ip1 = irrelevant_data(p1);
  REQUIRE(ip1.generators.size() == 2);
  CHECK(ip1.generators[0] == to_integer_vector({0, 1}));
  CHECK(ip1.generators[1] == to_integer_vector({1, 0}));
  CHECK(ip1.geometric_quotient);
}

TEST_CASE("finite cover groups") {
  std::vector<IntVector> basis;
  for (int k = 0; k < 3; ++k) {
    IntVector v(3, 0);
    v[k] = 1;
    basis.push_back(v);
  }
  CHECK(finite_cover_group(SimplicialCone(basis, 3)).group.trivial());
  auto lifted = finite_cover_group(SimplicialCone(
      {to_integer_vector({0, 0, 1}), to_integer_vector({-2, -1, 1}), to_integer_vector({0, -1, 1})}, 3));
  CHECK(lifted.order == 2);
  std::vector<IntVector> edges = {to_integer_vector({-1, 0, 0, 1, 0}), to_integer_vector({0, -1, 0, 1, 0}),
                                  to_integer_vector({0, 0, -1, 1, 0}), to_integer_vector({-2, -1, 0, 0, 1}),
                                  to_integer_vector({0, 0, -1, 0, 1})};
  auto g = finite_cover_group(SimplicialCone(edges, 5));
  CHECK(g.order == 2);
  CHECK(g.group.to_string() == "Z/2");
  CHECK(g.dual.to_string() == "Z/2");
  CHECK_THROWS_AS(finite_cover_group(SimplicialCone({to_integer_vector({1, 0})}, 2)), Error);
}

TEST_CASE("cover group order equals the lattice index on random cones") {
  std::mt19937 rng(101);
  for (int k = 0; k < 30; ++k) {
    auto c = oracles::random_cone(rng, 5);
    auto g = finite_cover_group(c);
    CHECK(g.order == oracles::minor_gcd_index(c));
    CHECK(g.group.torsion_order() == g.order);
    CHECK(g.dual.torsion_order() == g.order);
  }
}
