#include <algorithm>
#include <random>

#include "doctest.h"
#include "examples.hpp"
#include "random_systems.hpp"
#include "tropmirror/gluesheaf.hpp"

using namespace tropmirror;

namespace {
struct Built {
  TropicalComplex tc;
  OpenPoset poset;
  ToricMirror mirror;
  SheafDiagram diag;
};
Built build(const MonomialSystem& sys) {
  Built b{build_stratification(sys), {}, build_mirror(sys), {}};
  b.poset = build_open_poset(b.tc);
  certify_duality(b.mirror, sys, b.tc);
  b.diag = assign_sections(b.tc, b.poset, b.mirror);
  return b;
}
}  // namespace

TEST_CASE("sections need a certified mirror") {
  auto sys = oracles::pants();
  auto tc = build_stratification(sys);
  auto m = build_mirror(sys);
  CHECK_THROWS_AS(assign_sections(tc, build_open_poset(tc), m), Error);
}

TEST_CASE("pants: one open, two generators") {
  auto b = build(oracles::pants());
  REQUIRE(b.diag.sections.size() == 1);
  auto& s = b.diag.sections[0];
  CHECK(s.inverted.empty());
  CHECK(s.generator_labels == std::vector<std::string>{"O(e0_2)", "O(e0_1)"});
  CHECK(s.a_side.expected_generators == 2);
  auto cc = cocycle_check(b.diag, b.mirror);
  CHECK(cc.ok);
  CHECK(cc.chains_checked == 0);
  auto g = glue_generators(b.diag);
  CHECK(g.count() == 2);
  CHECK(brute_force_limit(b.diag) == 2);
}

TEST_CASE("square: edge open inverts the shared coordinate") {
  auto b = build(oracles::square());
  REQUIRE(b.diag.sections.size() == 3);
  std::vector<std::size_t> sizes;
  for (auto& s : b.diag.sections) sizes.push_back(s.generators.size());
  CHECK(sizes == std::vector<std::size_t>{2, 2, 1});
  auto& e = b.diag.sections[2];
  CHECK(e.inverted == std::vector<std::string>{"e1_2"});
  CHECK(e.alternatives.size() == 1);
  for (auto& s : b.diag.sections) CHECK(s.generators.size() == s.a_side.expected_generators);
  auto cc = cocycle_check(b.diag, b.mirror);
  CHECK(cc.ok);
  CHECK(cc.overlaps_checked > 0);
  CHECK(b.diag.restrictions.size() == 2);
  auto layers = layer_vertices(b.tc);
  CHECK(layers.size() == 2);
  CHECK(glue_generators(b.diag, layered_open_order(b.diag, b.poset, layers)).count() == 3);
  CHECK(brute_force_limit(b.diag) == 3);
}

TEST_CASE("class counts on chains equal the brute-force limit for every order") {
  struct Row {
    MonomialSystem sys;
    std::size_t classes;
  };
  std::vector<Row> rows = {{oracles::pants(), 2},  {oracles::square(), 3},   {oracles::square_star(), 3},
                           {oracles::chain3(), 4}, {oracles::chain4(), 5},   {oracles::halfline(), 1},
                           {oracles::two_lines(), 1}, {oracles::ci(), 2},    {oracles::cube(), 7}};
  std::mt19937 rng(9);
  for (auto& r : rows) {
    auto b = build(r.sys);
    CHECK(cocycle_check(b.diag, b.mirror).ok);
    CHECK(brute_force_limit(b.diag) == r.classes);
    std::vector<std::size_t> order(b.diag.sections.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    for (int shuffle = 0; shuffle < 6; ++shuffle) {
      std::shuffle(order.begin(), order.end(), rng);
      CHECK(glue_generators(b.diag, order).count() == r.classes);
    }
    for (auto v : b.tc.vertices)
      CHECK(glue_generators(b.diag, layered_open_order(b.diag, b.poset, layer_vertices(b.tc, v))).count() == r.classes);
  }
}

TEST_CASE("layering") {
  auto one = build_stratification(oracles::pants());
  CHECK(layer_vertices(one).size() == 1);
  auto four = build_stratification(oracles::chain4());
  auto L = layer_vertices(four);
  REQUIRE(L.size() == 4);
  for (auto& l : L) CHECK(l.size() == 1);
  // BFS starts at a leaf of the tree
  std::size_t start = default_start_vertex(four);
  std::size_t bounded_at_start = 0;
  for (std::size_t k = 0; k < four.edges.size(); ++k) {
    const auto& vs = four.edge_vertices[k];
    if (vs.size() == 2 && (vs[0] == start || vs[1] == start)) ++bounded_at_start;
  }
  CHECK(bounded_at_start == 1);
  CHECK_THROWS_AS(layer_vertices(four, four.strata.size() + 3), Error);
}

TEST_CASE("restrictions along 2-chains commute on random systems") {
  std::mt19937 rng(41);
  for (int k = 0; k < 6; ++k) {
    auto sys = oracles::random_mirror_system(rng, 2, 1);
    auto b = build(sys);
    auto cc = cocycle_check(b.diag, b.mirror);
    CHECK_MESSAGE(cc.ok, cc.first_failure);
    if (b.diag.sections.size() <= 22) CHECK(glue_generators(b.diag).count() == brute_force_limit(b.diag));
  }
}

TEST_CASE("boundary atlases") {
  auto pants = oracles::pants();
  auto a = boundary_atlas(build_mirror(pants), pants);
  CHECK(a.charts.size() == 1);
  CHECK(a.cocycle.ok);
  CHECK(a.boundary_equations == std::vector<std::string>{"y[e0_2]*y[e0_1] = 0"});
  auto star = oracles::square_star();
  auto s = boundary_atlas(build_mirror(star), star);
  CHECK(s.charts.size() == 2);
  CHECK(s.cocycle.ok);
  auto half = oracles::halfline();
  CHECK(boundary_atlas(build_mirror(half), half).boundary_equations == std::vector<std::string>{"y[e0] = 0"});
  auto sq = oracles::square();
  CHECK_THROWS_AS(boundary_atlas(build_mirror(sq), sq), Error);
  auto two = oracles::two_lines();
  CHECK_THROWS_AS(boundary_atlas(build_mirror(two), two), Error);
}
