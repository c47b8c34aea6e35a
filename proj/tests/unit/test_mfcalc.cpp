#include "doctest.h"
#include "examples.hpp"
#include "tropmirror/mfcalc.hpp"

using namespace tropmirror;

namespace {
Polynomial y(std::size_t m, std::size_t k) { return Polynomial::variable(m, k - 1); }
Chart labelled(std::vector<std::string> labels) {
  Chart c;
  c.labels = std::move(labels);
  for (std::size_t k = 0; k < c.labels.size(); ++k) c.rays.push_back(k);
  return c;
}
}  // namespace

TEST_CASE("koszul generators") {
  auto g = make_generator(2, 1);
  CHECK(g.d0 == y(2, 2));
  CHECK(g.d1 == y(2, 1));
  auto h = make_generator(3, 3);
  CHECK(h.d0 == y(3, 1) * y(3, 2));
  CHECK(h.d1 == y(3, 3));
  auto k = make_generator(4, 2);
  CHECK(k.d0 == y(4, 1) * y(4, 3) * y(4, 4));
  CHECK(k.d0 * k.d1 == product_of_variables(4));
  CHECK_THROWS_AS(make_generator(3, 0), Error);
  CHECK_THROWS_AS(make_generator(3, 4), Error);
}

TEST_CASE("End of the first generator in three variables") {
  for (int N = 0; N <= 6; ++N) {
    auto t = hom_cohomology(make_generator(3, 1), make_generator(3, 1), N);
    CHECK(t.cumulative(0, N) == static_cast<std::size_t>(2 * N + 1));
    CHECK(t.cumulative(1, N) == 0);
  }
}

TEST_CASE("Hom between distinct generators is odd") {
  for (int N = 0; N <= 6; ++N) {
    auto t = hom_cohomology(make_generator(3, 1), make_generator(3, 2), N);
    CHECK(t.cumulative(0, N) == 0);
    CHECK(t.cumulative(1, N) == static_cast<std::size_t>(N + 1));
  }
}

TEST_CASE("two variables: End is the residue field") {
  auto t = hom_cohomology(make_generator(2, 1), make_generator(2, 1), 5);
  CHECK(t.cumulative(0, 5) == 1);
  CHECK(t.at(0, 0) == 1);
  CHECK(t.cumulative(1, 5) == 0);
}

TEST_CASE("brute force equals closed form, m <= 5, N <= 6") {
  for (std::size_t m = 1; m <= 5; ++m)
    for (std::size_t i = 1; i <= m; ++i)
      for (std::size_t j = 1; j <= m; ++j)
        for (int N = 0; N <= 6; N += 3) {
          bool eq = hom_cohomology(make_generator(m, i), make_generator(m, j), N) == closed_form_hom(m, i, j, N);
          CHECK_MESSAGE(eq, "m=" << m << " i=" << i << " j=" << j << " N=" << N);
        }
  CHECK_THROWS_AS(hom_cohomology(make_generator(2, 1), make_generator(3, 1), 2), Error);
}

TEST_CASE("localisation") {
  auto dead = hom_cohomology(make_generator(3, 1), make_generator(3, 1), 4, {0});
  CHECK(dead.cumulative(0, 4) == 0);
  CHECK(dead.cumulative(1, 4) == 0);
  auto alive = hom_cohomology(make_generator(3, 2), make_generator(3, 2), 3, {0});
  for (int p = -3; p <= 3; ++p) CHECK(alive.at(0, p) == 1);
}

TEST_CASE("coh tables") {
  // d = 1: k[y2, u]/(u y2) graded by (cohomological, polynomial)
  auto t = coh_hom(1, 1, 1, 4);
  CHECK(t.at(0, 0) == 1);
  CHECK(t.at(0, 3) == 1);  // y2^3
  CHECK(t.at(2, 0) == 1);  // u
  CHECK(t.at(2, 1) == 0);  // u y2 = 0
  CHECK(t.at(1, 0) == 0);
  auto off = coh_hom(1, 1, 2, 4);
  CHECK(off.at(1, 0) == 1);
  CHECK(off.at(3, 0) == 1);
  CHECK(off.at(0, 0) == 0);
  auto deg = coh_hom(0, 1, 1, 3);
  CHECK(deg.at(0, 0) == 1);
  CHECK(deg.at(2, 0) == 0);
}

TEST_CASE("fold_compare is exact for d <= 3") {
  for (std::size_t d = 0; d <= 3; ++d) {
    auto r = fold_compare(d, 5);
    CHECK(r.exact);
    CHECK(r.pairs_checked == (d + 1) * (d + 1));
    CHECK(r.mismatches.empty());
  }
  CHECK(fold_compare(2, 4).exact);
  CHECK(fold_compare(0, 3).exact);
}

TEST_CASE("chart models and generator counts") {
  auto m = build_mirror(oracles::pants());
  auto model = chart_mf_model(m.fan, m.charts[0]);
  REQUIRE(model.blocks.size() == 1);
  CHECK(model.primary_count() == 2);
  CHECK(model.blocks[0].enveloped_alive);
  auto inv = generator_restriction(model, model.blocks[0].primary[0]);
  CHECK(inv.primary_count() == 1);
  CHECK(inv.blocks[0].enveloped_alive);
  CHECK(generator_restriction(inv, model.blocks[0].primary[0]).primary_count() == 1);
  auto env = generator_restriction(model, model.blocks[0].enveloped);
  CHECK(env.primary_count() == 2);
  CHECK_FALSE(env.blocks[0].enveloped_alive);
  CHECK_THROWS_AS(generator_restriction(model, "nope"), Error);

  Chart c = labelled({"a1", "a2", "a3", "b1", "b2", "b3"});
  auto ci = chart_mf_model(c, {{"a1", "a2", "a3"}, {"b1", "b2", "b3"}});
  CHECK(ci.primary_count() == 4);
  CHECK(ci.primary_generators().size() == 4);
  CHECK(generator_restriction(ci, "a1").primary_count() == 2);
  CHECK(chart_mf_model(labelled({"u", "v"}), {{"u", "v"}}).primary_count() == 1);
  CHECK_THROWS_AS(chart_mf_model(c, {{"a1", "a2"}, {"a2", "b1"}}), Error);
  CHECK_THROWS_AS(chart_mf_model(c, {{"zz"}}), Error);
  CHECK_THROWS_AS(chart_mf_model(build_mirror(oracles::ci()).fan, build_mirror(oracles::ci()).charts[0]), Error);
}

TEST_CASE("model Hom tables are Kunneth products") {
  Chart c = labelled({"a1", "a2", "a3", "b1", "b2"});
  auto model = chart_mf_model(c, {{"a1", "a2", "a3"}, {"b1", "b2"}});
  auto t = model_hom_table(model, {"a1", "b1"}, {"a1", "b1"}, 4);
  // End(O^1) in 3 vars is 2N+1 up to N; End in 2 vars is k
  CHECK(t.cumulative(0, 4) == 9);
  CHECK(t.cumulative(1, 4) == 0);
  auto odd = model_hom_table(model, {"a1", "b1"}, {"a2", "b1"}, 4);
  CHECK(odd.cumulative(0, 4) == 0);
  CHECK(odd.cumulative(1, 4) == 5);
}

TEST_CASE("pants cover posets") {
  std::size_t expected_subsets[] = {1, 3, 7, 15};
  for (std::size_t d = 0; d <= 3; ++d) {
    auto P = pants_cover_poset(d);
    CHECK(P.subsets.size() == expected_subsets[d]);
    CHECK(P.meet_law);
    CHECK(P.union_is_hyperplanes);
    std::size_t pts = 1;
    for (std::size_t k = 0; k <= d; ++k) pts *= 5;
    CHECK(P.points_checked == pts);
  }
  CHECK_THROWS_AS(pants_cover_poset(7), Error);
}
