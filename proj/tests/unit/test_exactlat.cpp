#include <random>

#include "doctest.h"
#include "random_cones.hpp"
#include "tropmirror/exactlat.hpp"

using namespace tropmirror;

TEST_CASE("rationals parse exactly") {
  CHECK(parse_rational("3/2") == Rational(3, 2));
  CHECK(parse_rational("-4") == Rational(-4));
  CHECK(parse_rational(" 6/4 ") == Rational(3, 2));
  CHECK_THROWS_AS(parse_rational("1.5"), Error);
  CHECK_THROWS_AS(parse_rational("x/2"), Error);
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  Rational h(-3, 6);
  h.canonicalize();
  CHECK(to_string(h) == "-1/2");
}

TEST_CASE("snf of small matrices") {
  auto d = snf(IntMatrix::identity(2)).diagonal();
  CHECK(d == std::vector<Integer>{1, 1});
  auto c = cokernel(IntMatrix{{2}});
  CHECK(c.free_rank == 0);
  REQUIRE(c.torsion.size() == 1);
  CHECK(c.torsion[0] == 2);
}

TEST_CASE("snf of the three-ray matrix has free cokernel of rank one") {
  IntMatrix m{{0, 1}, {-1, 1}, {-2, 1}};
  auto c = cokernel(m);
  CHECK(c.free_rank == 1);
  CHECK(c.torsion.empty());
  auto r = snf(m);
  CHECK(r.U * m * r.V == r.D);
  CHECK(r.rank == 2);
}

TEST_CASE("snf invariants on random matrices") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<long> e(-5, 5), dim(1, 4);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t R = dim(rng), C = dim(rng);
    IntMatrix m(R, C);
    for (std::size_t i = 0; i < R; ++i)
      for (std::size_t j = 0; j < C; ++j) m(i, j) = e(rng);
    auto s = snf(m);
    CHECK(s.U * m * s.V == s.D);
    CHECK(abs(determinant(s.U)) == 1);
    CHECK(abs(determinant(s.V)) == 1);
    auto d = s.diagonal();
    for (std::size_t k = 0; k + 1 < d.size(); ++k)
      if (d[k] != 0 && d[k + 1] != 0) CHECK(d[k + 1] % d[k] == 0);
    CHECK(s.rank == rank(m));
  }
}

TEST_CASE("lattice index") {
  std::vector<IntVector> basis;
  for (int k = 0; k < 4; ++k) {
    IntVector v(4, 0);
    v[k] = 1;
    basis.push_back(v);
  }
  CHECK(lattice_index(SimplicialCone(basis, 4)) == 1);
  CHECK(lattice_index(SimplicialCone({to_integer_vector({1, 0}), to_integer_vector({1, 3})}, 2)) == 3);
  // edge vectors of the nonunimodular complete-intersection simplex
  std::vector<IntVector> edges = {to_integer_vector({-1, 0, 0, 1, 0}), to_integer_vector({0, -1, 0, 1, 0}),
                                  to_integer_vector({0, 0, -1, 1, 0}), to_integer_vector({-2, -1, 0, 0, 1}),
                                  to_integer_vector({0, 0, -1, 0, 1})};
  CHECK(lattice_index(SimplicialCone(edges, 5)) == 2);
  CHECK_THROWS_AS(lattice_index(SimplicialCone({to_integer_vector({1, 0, 0})}, 3)), Error);
}

TEST_CASE("lattice index agrees with the minor oracle on random cones") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    auto c = oracles::random_cone(rng);
    CHECK(lattice_index(c) == oracles::minor_gcd_index(c));
  }
}

TEST_CASE("dual basis") {
  auto eta = dual_basis(
      SimplicialCone({to_integer_vector({0, 0, 1}), to_integer_vector({-1, 0, 1}), to_integer_vector({0, -1, 1})}, 3));
  CHECK(eta[0] == to_integer_vector({1, 1, 1}));
  CHECK(eta[1] == to_integer_vector({-1, 0, 0}));
  CHECK(eta[2] == to_integer_vector({0, -1, 0}));
  auto eta2 = dual_basis(SimplicialCone({to_integer_vector({0, 1}), to_integer_vector({-1, 1})}, 2));
  CHECK(eta2[0] == to_integer_vector({1, 1}));
  CHECK(eta2[1] == to_integer_vector({-1, 0}));
  CHECK_THROWS_AS(dual_basis(SimplicialCone({to_integer_vector({1, 0}), to_integer_vector({1, 3})}, 2)), Error);
}

TEST_CASE("dual basis pairs to the identity on random unimodular cones") {
  std::mt19937 rng(17);
  int seen = 0;
  for (int trial = 0; trial < 400 && seen < 20; ++trial) {
    auto c = oracles::random_cone(rng, 4);
    if (lattice_index(c) != 1) continue;
    ++seen;
    auto eta = dual_basis(c);
    for (std::size_t j = 0; j < eta.size(); ++j)
      for (std::size_t k = 0; k < eta.size(); ++k) CHECK(dot(eta[j], c.rays()[k]) == (j == k ? 1 : 0));
  }
  CHECK(seen > 0);
}

TEST_CASE("nullspace and inverse") {
  RatMatrix m{{1, 2, 3}, {2, 4, 6}};
  auto ns = nullspace(m);
  CHECK(ns.size() == 2);
  for (auto& v : ns) CHECK(dot(RatVector(m.row(0)), v) == 0);
  RatMatrix a{{2, 1}, {1, 1}};
  CHECK(a * inverse(a) == RatMatrix::identity(2));
  CHECK_THROWS_AS(inverse(RatMatrix{{1, 2}, {2, 4}}), Error);
  CHECK(primitive(to_integer_vector({4, -6, 2})) == to_integer_vector({2, -3, 1}));
}
