#include <string>

#include "doctest.h"
#include "tropmirror/report.hpp"

using namespace tropmirror;

namespace {
Json example_doc(const std::string& name) { return load_json(std::string(TM_DATA_DIR) + "/" + name + ".json"); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

Json pants_doc() {
  return Json::parse(R"({"n": 2, "r": 1, "factors": [{"monomials": [[0,0],[1,0],[0,1]], "heights": ["0", 0, "0"]}],
                        "t": "e^20"})");
}
}  // namespace

TEST_CASE("parse_input accepts strings, ints and complex coefficients") {
  auto doc = pants_doc();
  doc["factors"][0]["coeffs"] = Json::parse(R"([[1, 0], ["1/2", "-1/3"], 2])");
  auto sys = parse_input(doc);
  CHECK(sys.n() == 2);
  CHECK(sys.r() == 1);
  CHECK(sys.factor(0).coeffs[1].first == Rational(1, 2));
  CHECK(sys.factor(0).coeffs[1].second == Rational(-1, 3));
  CHECK(sys.factor(0).coeffs[2].first == 2);
  CHECK(sys.t().log_t == doctest::Approx(20.0));
}

TEST_CASE("parse_input rejects malformed documents") {
  auto doc = pants_doc();
  doc["factors"][0]["heights"][1] = "x/2";
  CHECK(code_of([&] { parse_input(doc); }) == ErrorCode::Validation);

  doc = pants_doc();
  doc.erase("n");
  CHECK_THROWS_AS(parse_input(doc), Error);

  doc = pants_doc();
  doc["r"] = 2;
  CHECK_THROWS_AS(parse_input(doc), Error);

  doc = pants_doc();
  doc["factors"][0]["heights"] = Json::parse(R"(["0", "0"])");
  CHECK_THROWS_AS(parse_input(doc), Error);

  doc = pants_doc();
  doc["t"] = "1/2";
  CHECK_THROWS_AS(parse_input(doc), Error);

  CHECK_THROWS_AS(load_json("/nonexistent/input.json"), Error);
  CHECK(code_of([] { parse_input(example_doc("bad_heights")); }) == ErrorCode::Validation);
}

TEST_CASE("exit codes") {
  CHECK(exit_code(ErrorCode::Validation) == 2);
  CHECK(exit_code(ErrorCode::NonTransverse) == 3);
  CHECK(exit_code(ErrorCode::DualityFailure) == 4);
  CHECK(exit_code(ErrorCode::CocycleFailure) == 5);
  CHECK(exit_code(ErrorCode::BoundViolated) == 6);
  CHECK(exit_code(ErrorCode::Internal) == 1);
  CHECK(exit_code(ErrorCode::SolveFailure) == 1);
}

TEST_CASE("tropical report for the pants and the square") {
  CommandOptions opt;
  auto p = cmd_tropical(example_doc("pants"), opt).report;
  CHECK(p["schema_version"] == kSchemaVersion);
  CHECK(p["vertices"] == 1);
  CHECK(p["edges"] == 3);
  CHECK(p["bounded"] == 0);
  CHECK(p["rays"] == 3);
  CHECK(p["regions"] == 3);
  CHECK(p["strata"].size() == 7);

  auto s = cmd_tropical(example_doc("square"), opt).report;
  CHECK(s["vertices"] == 2);
  CHECK(s["bounded"] == 1);
  CHECK(s["rays"] == 4);
  CHECK(s["regions"] == 4);
}

TEST_CASE("mirror report") {
  CommandOptions opt;
  auto p = cmd_mirror(example_doc("pants"), opt).report;
  CHECK(p["charts"] == 1);
  CHECK(p["Cl"] == "0");
  CHECK(p["cocycle"] == "ok");
  CHECK(p["critical_locus"].size() == 4);

  auto s = cmd_mirror(example_doc("square"), opt).report;
  CHECK(s["charts"] == 2);
  CHECK(s["Cl"] == "Z");

  auto c = cmd_mirror(example_doc("ci"), opt).report;
  CHECK(c["finite_group_order"] == "2");
  CHECK(c["Cl"] == "Z/2");
  CHECK(c["fan"]["nonsmooth_cones"].size() == 1);
}

TEST_CASE("mf report matches the closed form") {
  CommandOptions opt;
  auto c = cmd_mf(example_doc("ci"), opt).report;
  CHECK(c["d"] == 2);
  CHECK(c["closed_form_match"] == true);
  CHECK(c["fold_compare"]["verdict"] == "exact match");
  CHECK(c["hom_tables"].size() == 9);
  CHECK(c["hom_tables"][0]["even"]["1"] == 2);

  auto doc = example_doc("pants");
  doc["options"] = Json::parse(R"({"d": 1})");
  opt.degree_bound = 4;
  auto p = cmd_mf(doc, opt).report;
  CHECK(p["d"] == 1);
  CHECK(p["degree_bound"] == 4);
  CHECK(p["closed_form_match"] == true);
}

TEST_CASE("glue report agrees with brute force") {
  CommandOptions opt;
  for (auto [name, classes] : std::vector<std::pair<std::string, int>>{{"pants", 2}, {"square", 3}}) {
    CAPTURE(name);
    auto out = cmd_glue(example_doc(name), opt);
    CHECK(out.report["classes"] == classes);
    CHECK(out.report["brute_force_classes"] == classes);
    CHECK(out.report["cocycle"]["status"] == "ok");
    CHECK(out.files.count("glue.dot") == 1);
  }
  auto sq = cmd_glue(example_doc("square"), opt).report;
  CHECK(sq["boundary_atlas"]["status"] == "skipped");
}

TEST_CASE("amoeba report") {
  CommandOptions opt;
  opt.svg = true;
  auto out = cmd_amoeba(example_doc("pants"), opt);
  auto& r = out.report;
  CHECK(r["verdict"] == "bound pass");
  CHECK(r["factors"][0]["violations"] == 0);
  CHECK(r["factors"][0]["samples"].get<int>() >= 1000);
  CHECK(out.files.count("amoeba.csv") == 1);
  CHECK(out.files.count("amoeba.svg") == 1);
  CHECK(out.files.at("amoeba.svg").find("<svg") != std::string::npos);

  opt.delta1 = 0.4;
  opt.delta2 = 0.3;
  CHECK(code_of([&] { cmd_amoeba(example_doc("pants"), opt); }) == ErrorCode::Validation);
}

TEST_CASE("reports are deterministic") {
  CommandOptions opt;
  for (auto* cmd : {&cmd_tropical, &cmd_mirror, &cmd_glue, &cmd_amoeba}) {
    auto a = (*cmd)(example_doc("square"), opt).report.dump();
    auto b = (*cmd)(example_doc("square"), opt).report.dump();
    CHECK(a == b);
  }
}

TEST_CASE("t override") {
  CommandOptions opt;
  opt.t = "e^40";
  auto r = cmd_amoeba(example_doc("pants"), opt).report;
  CHECK(r["log_t"].get<double>() == doctest::Approx(40.0));
  opt.t = "1/3";
  CHECK_THROWS_AS(cmd_amoeba(example_doc("pants"), opt), Error);
}
