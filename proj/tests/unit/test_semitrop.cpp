#include <cmath>
#include <random>

#include "doctest.h"
#include "examples.hpp"
#include "tropmirror/semitrop.hpp"

using namespace tropmirror;

TEST_CASE("bump profile") {
  CHECK(bump(0.0) == 1.0);
  CHECK(bump(0.5) == 1.0);
  CHECK(bump(1.0) == 0.0);
  CHECK(bump(3.0) == 0.0);
  CHECK(bump(0.75) == doctest::Approx(0.5));
  double prev = 1.0;
  for (double s = 0.5; s <= 1.0; s += 0.01) {
    CHECK(bump(s) <= prev + 1e-15);
    prev = bump(s);
  }
  for (double s : {0.55, 0.7, 0.9}) {
    double fd = (bump(s + 1e-6) - bump(s - 1e-6)) / 2e-6;
    CHECK(bump_derivative(s) == doctest::Approx(fd).epsilon(1e-5));
  }
}

TEST_CASE("affine values and dominance distance") {
  auto sys = oracles::square();
  auto l = affine_values(sys, 0, {0.3, -0.2});
  REQUIRE(l.size() == 4);
  CHECK(l[0] == doctest::Approx(0.0));
  CHECK(l[1] == doctest::Approx(0.3));
  CHECK(l[2] == doctest::Approx(-0.2));
  CHECK(l[3] == doctest::Approx(0.1 - 1.0));
  CHECK(trop_distance(sys, 0, {0.3, -0.2}, 1) == doctest::Approx(0.0));
  CHECK(trop_distance(sys, 0, {0.3, -0.2}, 0) == doctest::Approx(0.3));
}

TEST_CASE("eval_W: raw sum, cutoff drops dominated terms, s = 0 is raw") {
  auto sys = oracles::pants();
  const double L = sys.t().log_t;
  std::vector<Cplx> z = {std::exp(Cplx(0.4 * L, 0.3)), std::exp(Cplx(-0.5 * L, 1.1))};
  Cplx raw = eval_W(sys, 0, z);
  CHECK(std::abs(raw - (1.0 + z[0] + z[1])) < 1e-9 * std::abs(raw));
  // x = (0.4, -0.5): only the x-monomial is within eps^0.5 of the max
  Cplx semi = eval_W(sys, 0, z, EvalMode::Semitrop);
  CHECK(std::abs(semi - z[0]) < 1e-9 * std::abs(z[0]));
  Cplx s0 = eval_W(sys, 0, z, EvalMode::Interpolated, {}, 0.0);
  CHECK(std::abs(s0 - raw) < 1e-12 * std::abs(raw));
  Cplx s1 = eval_W(sys, 0, z, EvalMode::Interpolated, {}, 1.0);
  CHECK(std::abs(s1 - semi) < 1e-12 * std::abs(semi));
  CHECK_THROWS_AS(eval_W(sys, 0, {Cplx(1, 0), Cplx(0, 0)}), Error);
  CHECK_THROWS_AS(eval_W(sys, 0, {Cplx(1, 0)}), Error);
}

TEST_CASE("region membership on the pants") {
  auto sys = oracles::pants();
  auto tc = build_stratification(sys);
  auto rf = region_membership(sys, tc, {0.5, 0.5}, 100, 0.5);
  CHECK(rf.in_U[0] == std::vector<bool>{false, true, true});
  REQUIRE(rf.v_stratum.has_value());
  CHECK(*rf.v_stratum == tc.find({{1, 2}}));
  auto far = region_membership(sys, tc, {-2.0, -2.0}, 100, 0.5);
  CHECK(far.in_U[0] == std::vector<bool>{true, false, false});
  CHECK(*far.v_stratum == tc.find({{0}}));
  auto vert = region_membership(sys, tc, {0.01, -0.01}, 100, 0.5);
  CHECK(*vert.v_stratum == tc.find({{0, 1, 2}}));
}

TEST_CASE("polynomial roots") {
  // (w - 1)(w - 2)(w + 3) = w^3 - 7w + 6
  auto r = polynomial_roots({Cplx(6), Cplx(-7), Cplx(0), Cplx(1)});
  REQUIRE(r.size() == 3);
  for (auto w : r) {
    Cplx p = w * w * w - 7.0 * w + 6.0;
    CHECK(std::abs(p) < 1e-9);
  }
}

TEST_CASE("pants amoeba stays within log 2 / log t of tropical") {
  auto sys = oracles::pants();
  auto am = sample_amoeba(sys, 0, 20, -3, 3, 40, 30, 7);
  CHECK(am.points.size() >= 1000);
  CHECK(am.failures == 0);
  auto gr = gap_bound_check(sys, 0, 20, am.points, 1e-9, false);
  CHECK(gr.bound == doctest::Approx(std::log(2.0) / 20));
  CHECK(gr.violations == 0);
  CHECK(gr.max_gap <= gr.bound);
  CHECK(gr.max_gap > 0.0);
  double md = 0;
  for (auto& p : am.points) md = std::max(md, distance_to_tropical(sys, 0, p));
  CHECK(md <= gr.bound);
}

TEST_CASE("square amoeba at e^40") {
  auto sys = oracles::square();
  auto am = sample_amoeba(sys, 0, 40, -3, 3, 40, 20, 3);
  auto gr = gap_bound_check(sys, 0, 40, am.points, 1e-9, false);
  CHECK(gr.bound == doctest::Approx(std::log(3.0) / 40));
  CHECK(gr.violations == 0);
}

TEST_CASE("two-term amoeba is the tropical point") {
  auto sys = oracles::halfline();
  auto am = sample_amoeba(sys, 0, 20, -3, 3, 1, 5, 1);
  REQUIRE(!am.points.empty());
  for (auto& p : am.points) CHECK(std::abs(p[0]) < 1e-12);
  auto gr = gap_bound_check(sys, 0, 20, am.points);
  CHECK(gr.bound == 0.0);
}

TEST_CASE("gap check throws on a far point") {
  auto sys = oracles::pants();
  std::vector<RealVec> pts = {{1.0, 0.0}};
  CHECK_THROWS_AS(gap_bound_check(sys, 0, 20, pts), Error);
  try {
    gap_bound_check(sys, 0, 20, pts);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BoundViolated);
  }
  auto r = gap_bound_check(sys, 0, 20, pts, 1e-9, false);
  CHECK(r.violations == 1);
  CHECK(r.max_gap == doctest::Approx(1.0));
}

TEST_CASE("distance to the tropical pants curve") {
  auto sys = oracles::pants();
  CHECK(distance_to_tropical(sys, 0, {0.0, 0.0}) == doctest::Approx(0.0));
  CHECK(distance_to_tropical(sys, 0, {1.0, 1.0}) == doctest::Approx(0.0));
  CHECK(distance_to_tropical(sys, 0, {-1.0, -1.0}) == doctest::Approx(1.0));
  CHECK(distance_to_tropical(sys, 0, {2.0, 0.0}) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("potentials pass the finite-difference gradient check") {
  for (auto& phi : builtin_potentials()) {
    CAPTURE(phi.name);
    for (std::size_t n : {1u, 2u, 3u}) {
      auto c = finite_difference_check(phi, n, 50, 1);
      CHECK(c.points == 50);
      CHECK(c.max_relative_error < 1e-6);
    }
  }
}

TEST_CASE("local moment projects the gradient on the stratum") {
  auto sys = oracles::pants();
  auto tc = build_stratification(sys);
  auto phi = quadratic_potential();
  const Stratum& diag = tc.strata[tc.find({{1, 2}})];
  auto m = local_moment(phi, diag, {0.5, 0.5});
  REQUIRE(m.size() == 1);
  CHECK(std::abs(m[0]) == doctest::Approx(std::sqrt(0.5)));
  const Stratum& vert = tc.strata[tc.find({{0, 1, 2}})];
  CHECK(local_moment(phi, vert, {0.0, 0.0}).empty());
  const Stratum& open = tc.strata[tc.find({{0}})];
  auto full = local_moment(phi, open, {-1.0, -2.0});
  REQUIRE(full.size() == 2);
  CHECK(full[0] * full[0] + full[1] * full[1] == doctest::Approx(5.0));
}

TEST_CASE("tangent bases are orthonormal") {
  auto sys = oracles::square();
  auto tc = build_stratification(sys);
  for (auto& s : tc.strata) {
    auto Q = tangent_basis(s, 2);
    CHECK(Q.size() == static_cast<std::size_t>(s.dim));
    for (std::size_t a = 0; a < Q.size(); ++a)
      for (std::size_t b = 0; b < Q.size(); ++b) {
        double d = Q[a][0] * Q[b][0] + Q[a][1] * Q[b][1];
        CHECK(d == doctest::Approx(a == b ? 1.0 : 0.0));
      }
  }
}

TEST_CASE("neighbourhood flags shrink as delta grows") {
  auto sys = oracles::square();
  auto tc = build_stratification(sys);
  for (double x = -1.5; x <= 1.5; x += 0.05)
    for (double y = -1.5; y <= 1.5; y += 0.05) {
      auto wide = region_membership(sys, tc, {x, y}, 20, 0.2);
      auto narrow = region_membership(sys, tc, {x, y}, 20, 0.4);
      for (std::size_t a = 0; a < 4; ++a)
        if (narrow.in_U[0][a]) CHECK(wide.in_U[0][a]);
    }
}
