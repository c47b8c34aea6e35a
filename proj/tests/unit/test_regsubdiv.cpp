#include "doctest.h"
#include "examples.hpp"
#include "tropmirror/regsubdiv.hpp"

using namespace tropmirror;

namespace {
std::vector<IntVector> pts(const std::vector<std::vector<long>>& v) {
  std::vector<IntVector> out;
  for (auto& p : v) out.push_back(to_integer_vector(p));
  return out;
}
std::vector<Rational> hs(const std::vector<long>& v) { return {v.begin(), v.end()}; }
}  // namespace

TEST_CASE("triangle is a single cell") {
  auto s = regular_subdivision(pts({{0, 0}, {1, 0}, {0, 1}}), hs({0, 0, 0}));
  CHECK(s.cells.size() == 1);
  CHECK(s.is_triangulation);
  CHECK(s.is_unimodular);
  CHECK(s.is_star_shaped);
}

TEST_CASE("unit square splits along the anti-diagonal") {
  auto s = regular_subdivision(pts({{0, 0}, {1, 0}, {0, 1}, {1, 1}}), hs({0, 0, 0, 1}));
  REQUIRE(s.cells.size() == 2);
  CHECK(s.cells[0] == std::vector<std::size_t>{0, 1, 2});
  CHECK(s.cells[1] == std::vector<std::size_t>{1, 2, 3});
  CHECK(s.is_triangulation);
  CHECK_FALSE(s.is_star_shaped);
  auto t = regular_subdivision(pts({{0, 0}, {1, 0}, {0, 1}, {1, 1}}), hs({0, 0, 0, -1}));
  REQUIRE(t.cells.size() == 2);
  CHECK(t.cells[0] == std::vector<std::size_t>{0, 1, 3});
  CHECK(t.is_star_shaped);
}

TEST_CASE("one-dimensional lower hull") {
  auto s = regular_subdivision(pts({{0}, {1}, {2}}), hs({0, 0, 1}));
  REQUIRE(s.cells.size() == 2);
  CHECK(s.cells[0] == std::vector<std::size_t>{0, 1});
  CHECK(s.cells[1] == std::vector<std::size_t>{1, 2});
  auto flat = regular_subdivision(pts({{0}, {1}, {2}}), hs({0, 1, 0}));
  CHECK(flat.cells.size() == 1);
  CHECK_FALSE(flat.uses_all_points);
}

TEST_CASE("unimodularity and volume") {
  auto s = regular_subdivision(pts({{0, 0}, {2, 1}, {0, 1}}), hs({0, 0, 0}));
  CHECK(normalized_volume(s.points) == 2);
  auto rep = is_unimodular(s);
  CHECK_FALSE(rep.unimodular);
  REQUIRE(rep.offending.size() == 1);
  CHECK(rep.offending[0].second == 2);
  CHECK(simplex_volume(pts({{0, 0}, {1, 0}, {0, 1}})) == 1);
}

TEST_CASE("star-shapedness") {
  // hexagon with an interior cell that avoids the origin
  auto hex = pts({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}, {2, 1}});
  auto s = regular_subdivision(hex, hs({0, 0, 3, 0, 0, 3, 0, 9}));
  CHECK_FALSE(is_star_shaped(s));
  auto single = regular_subdivision(pts({{0, 0}, {1, 0}, {0, 1}}), hs({0, 0, 0}));
  CHECK(is_star_shaped(single));
}

TEST_CASE("newton polytopes") {
  auto P = ci_newton_polytope(oracles::pants());
  CHECK(P.size() == 4);
  CHECK(P[0] == to_integer_vector({0, 0, 0}));
  CHECK(P[1] == to_integer_vector({0, 0, 1}));
  CHECK(P[2] == to_integer_vector({-1, 0, 1}));
  CHECK(P[3] == to_integer_vector({0, -1, 1}));
  auto ci = ci_newton_polytope(oracles::ci());
  CHECK(ci.size() == 6);
  CHECK(normalized_volume(ci) == 2);
  auto sub = newton_subdivision(oracles::ci());
  CHECK(sub.cells.size() == 1);
  CHECK_FALSE(is_unimodular(sub).unimodular);
  auto two = ci_newton_polytope(oracles::two_lines());
  CHECK(two.size() == 7);
  CHECK(affine_dim(two) == 4);
}

TEST_CASE("newton subdivisions induced from star-shaped lifts are star-shaped") {
  for (auto* ex : {"pants", "square", "square_star", "chain3", "chain4", "two_lines", "ci", "halfline"}) {
    for (auto& named : oracles::shipped()) {
      if (named.name != ex) continue;
      auto sub = newton_subdivision(named.sys);
      CHECK(sub.is_star_shaped);
      auto [f, a] = newton_point_label(named.sys, 1);
      CHECK(f == 0);
      CHECK(a == 0);
    }
  }
}

TEST_CASE("lower hull volume sums to the polytope volume") {
  auto A = pts({{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}, {0, 2}});
  auto s = regular_subdivision(A, hs({0, 1, 4, 1, 1, 4}));
  Integer total = 0;
  for (auto& c : s.cells) {
    std::vector<IntVector> cell;
    for (auto k : c) cell.push_back(A[k]);
    total += normalized_volume(cell);
  }
  CHECK(total == normalized_volume(A));
}
