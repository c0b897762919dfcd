#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "coquasi/cli.hpp"
#include "coquasi/json_io.hpp"
#include "support.hpp"

using namespace testing_support;
using io::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("coquasi_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
    return path(name);
  }
  static std::string slurp(const std::string& p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
  }

  fs::path dir_;
};

}  // namespace

TEST(Json, ScalarFormatting) {
  EXPECT_EQ(io::to_json(frac(Q(), "2/4")), json("1/2"));
  EXPECT_EQ(io::to_json(num(Q(), -3)), json("-3"));
  EXPECT_EQ(io::to_json(num(Field::prime(5), 3)), (json{{"p", 5}, {"v", 3}}));
  EXPECT_EQ(io::scalar_from_json(json("6/4"), Q()), frac(Q(), "3/2"));
  EXPECT_EQ(io::scalar_from_json(json("7/1"), Q()), num(Q(), 7));
  EXPECT_EQ(io::scalar_from_json(json(-2), Q()), num(Q(), -2));
  EXPECT_THROW(io::scalar_from_json(json("1/0"), Q()), io::SchemaError);
  EXPECT_THROW(io::scalar_from_json(json("abc"), Q()), io::SchemaError);
}

TEST(Json, PrimeFieldReduction) {
  Field f5 = Field::prime(5);
  EXPECT_EQ(io::scalar_from_json(json("1/2"), f5), num(f5, 3));
  EXPECT_THROW(io::scalar_from_json(json("1/5"), f5), std::exception);
}

TEST(Json, RoundTripCoquasiZoo) {
  for (const auto& z : zoo()) {
    json j = io::to_json(*z.data.h);
    auto back = io::coquasi_from_json(j, io::resolve_field(j, std::nullopt));
    EXPECT_EQ(back.coalgebra.delta, z.data.h->coalgebra.delta) << z.name;
    EXPECT_EQ(back.mult, z.data.h->mult) << z.name;
    EXPECT_EQ(back.unit, z.data.h->unit) << z.name;
    EXPECT_EQ(back.omega, z.data.h->omega) << z.name;
    EXPECT_EQ(io::dump(io::to_json(back)), io::dump(j)) << z.name;
  }
}

TEST(Json, RoundTripQuasiZoo) {
  for (const auto& z : quasi_zoo()) {
    json j = io::to_json(z.data.a);
    auto back = io::quasi_from_json(j, io::resolve_field(j, std::nullopt));
    EXPECT_EQ(back.phi, z.data.a.phi) << z.name;
    EXPECT_EQ(io::dump(io::to_json(back)), io::dump(j)) << z.name;
  }
}

TEST(Json, RoundTripDiagrams) {
  for (const auto& z : zoo()) {
    if (!z.spec) continue;
    auto d = cli::grading_diagram(*z.spec, true, z.rebase);
    json j = io::to_json(d);
    auto back = io::diagram_from_json(j, d.field);
    EXPECT_EQ(io::dump(io::to_json(back)), io::dump(j)) << z.name;
  }
}

TEST(Json, NonNormalizedInputIsRejected) {
  json j = io::to_json(*zoo_entry("Z2_omega").data.h);
  j["l"] = json::array({"1", "1"});
  EXPECT_THROW(io::coquasi_from_json(j, Q()), io::SchemaError);
}

TEST(Json, DumpIsCanonical) {
  json j = {{"b", json::array({"1", "2"})}, {"a", 1}};
  EXPECT_EQ(io::dump(j), "{\n  \"a\": 1,\n  \"b\": [\"1\", \"2\"]\n}\n");
}

TEST(Json, ReportShape) {
  Report r;
  r.fail("preantipode_3", {1});
  r.flag("ordinary antipode");
  json j = io::to_json(r);
  EXPECT_EQ(j["pass"], false);
  EXPECT_EQ(j["failures"][0]["axiom"], "preantipode_3");
  EXPECT_EQ(j["failures"][0]["index"], json::array({1}));
  EXPECT_EQ(j["flags"][0], "ordinary antipode");
  EXPECT_NE(io::report_text(r).find("preantipode_3"), std::string::npos);
}

TEST_F(Cli, ValidateTheSignCocycleExample) {
  ASSERT_EQ(run({"example", "group-coquasi", "--zoo", "Z2_omega", "-o", path("h.json")}).code, 0);
  auto r = run({"validate", path("h.json"), "--kind", "coquasi"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["pass"], true);
}

TEST_F(Cli, SolveThenCheck) {
  ASSERT_EQ(run({"example", "group-coquasi", "--zoo", "Z2_omega", "-o", path("h.json")}).code, 0);
  ASSERT_EQ(run({"preantipode", "solve", path("h.json"), "-o", path("s.json")}).code, 0);
  auto s = json::parse(slurp(path("s.json")));
  EXPECT_EQ(s["s"], json::parse(R"([["1", "0"], ["0", "-1"]])"));
  EXPECT_EQ(run({"preantipode", "check", path("h.json"), path("s.json")}).code, 0);
}

TEST_F(Cli, FiniteDualThenValidate) {
  ASSERT_EQ(run({"example", "group-quasi", "--zoo", "fun_Z2_omega", "-o", path("a.json")}).code, 0);
  ASSERT_EQ(run({"finite-dual", path("a.json"), "-o", path("h.json")}).code, 0);
  EXPECT_EQ(run({"validate", path("h.json"), "--kind", "coquasi"}).code, 0);
  EXPECT_EQ(run({"appendix-check", path("a.json")}).code, 0);
}

TEST_F(Cli, FailingCheckExitsOne) {
  ASSERT_EQ(run({"example", "group-coquasi", "--zoo", "Z2_omega", "-o", path("h.json")}).code, 0);
  write("id.json", R"({"dim": 2, "s": [["1", "0"], ["0", "1"]]})");
  auto r = run({"preantipode", "check", path("h.json"), path("id.json")});
  EXPECT_EQ(r.code, 1);
  auto rep = json::parse(r.out);
  EXPECT_EQ(rep["pass"], false);
  bool named = false;
  for (const auto& f : rep["failures"]) named |= f["axiom"] == "preantipode_3";
  EXPECT_TRUE(named);
}

TEST_F(Cli, SchemaErrorsExitTwo) {
  write("bad.json", "{ not json");
  EXPECT_EQ(run({"validate", path("bad.json")}).code, 2);
  EXPECT_EQ(run({"validate", path("missing.json")}).code, 2);
  write("shape.json", R"({"coalgebra": {"dim": 2, "delta": [["1"]], "counit": ["1", "1"]}, "mult": [], "unit": [], "omega": []})");
  EXPECT_EQ(run({"validate", path("shape.json"), "--kind", "coquasi"}).code, 2);
  EXPECT_EQ(run({"no-such-command"}).code, 2);
}

TEST_F(Cli, OutputIsDeterministic) {
  ASSERT_EQ(run({"example", "group-coquasi", "--zoo", "S3_omega", "-o", path("h.json")}).code, 0);
  auto a = run({"preantipode", "solve", path("h.json")});
  auto b = run({"preantipode", "solve", path("h.json")});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  auto d1 = run({"example", "group-coquasi", "--zoo", "Z4_omega", "--diagram"});
  auto d2 = run({"example", "group-coquasi", "--zoo", "Z4_omega", "--diagram"});
  EXPECT_EQ(d1.out, d2.out);
}

TEST_F(Cli, EmittedStructuresRevalidate) {
  for (const auto& z : zoo()) {
    std::string h = path(z.name + ".json");
    ASSERT_EQ(run({"example", "group-coquasi", "--zoo", z.name, "-o", h}).code, 0);
    EXPECT_EQ(run({"validate", h}).code, 0) << z.name;
  }
  for (const auto& z : quasi_zoo()) {
    std::string a = path(z.name + ".json");
    ASSERT_EQ(run({"example", "group-quasi", "--zoo", z.name, "-o", a}).code, 0);
    EXPECT_EQ(run({"validate", a}).code, 0) << z.name;
  }
}

TEST_F(Cli, FieldConversion) {
  ASSERT_EQ(run({"example", "group-coquasi", "--zoo", "Z2_omega", "-o", path("h.json")}).code, 0);
  auto r = run({"--field", "fp:5", "preantipode", "solve", path("h.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto s = json::parse(r.out)["s"];
  EXPECT_EQ(s[1][1], (json{{"p", 5}, {"v", 4}}));
  ASSERT_EQ(run({"example", "group-coquasi", "--zoo", "Z3_omega_F7", "-o", path("f7.json")}).code, 0);
  EXPECT_EQ(run({"validate", path("f7.json")}).code, 0);
  EXPECT_EQ(run({"--field", "fp:5", "validate", path("f7.json")}).code, 2);
  EXPECT_EQ(run({"--field", "fp:4", "validate", path("h.json")}).code, 2);
}

TEST_F(Cli, TextReport) {
  ASSERT_EQ(run({"example", "group-coquasi", "--zoo", "Z2_omega", "-o", path("h.json")}).code, 0);
  write("id.json", R"({"dim": 2, "s": [["1", "0"], ["0", "1"]]})");
  auto r = run({"--report", "text", "preantipode", "check", path("h.json"), path("id.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("preantipode_3"), std::string::npos);
}

TEST_F(Cli, ReconstructDiagram) {
  ASSERT_EQ(run({"example", "group-coquasi", "--zoo", "Z2_omega", "--diagram", "-o", path("d.json")}).code, 0);
  ASSERT_EQ(run({"example", "group-coquasi", "--zoo", "Z2_omega", "-o", path("b.json")}).code, 0);
  write("nu.json", R"({"nu": {"k0": [["1"]], "k1": [["1"]]}})");
  auto r = run({"reconstruct", path("d.json"), "--over", path("b.json"), "--nu", path("nu.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_EQ(j["preantipode"]["s"], json::parse(R"([["1", "0"], ["0", "-1"]])"));
  EXPECT_TRUE(j.contains("proj"));
  EXPECT_EQ(j["can_report"]["pass"], true);
  EXPECT_EQ(j["coquasi_hopf"]["beta"], json::parse(R"(["1", "-1"])"));
  write("h.json", r.out);
  EXPECT_EQ(run({"validate", path("h.json"), "--kind", "coquasi"}).code, 0);
}

TEST_F(Cli, ReconstructNonDescendingDiagram) {
  ASSERT_EQ(run({"example", "group-coquasi", "--zoo", "Z2_omega", "--diagram", "-o", path("d.json")}).code, 0);
  auto d = json::parse(slurp(path("d.json")));
  d["morphisms"].push_back({{"name", "glue"}, {"from", "k1"}, {"to", "k0"}, {"matrix", json::parse(R"([["1"]])")}});
  write("glued.json", io::dump(d));
  auto r = run({"reconstruct", path("glued.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("glue"), std::string::npos);
}

TEST_F(Cli, DualizeComodule) {
  write("line.json", R"({"over": "Z2_omega", "dim": 1, "rho": [["0"], ["1"]]})");
  auto r = run({"dualize-comodule", path("line.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_EQ(j["db"], json::parse(R"(["-1"])"));
  EXPECT_EQ(j["ev"], json::parse(R"(["1"])"));
}

TEST_F(Cli, BadCocycleIsNamed) {
  write("g.json", R"({"group": [[0, 1], [1, 0]], "cocycle": ["1", "1", "1", "1", "1", "1", "-1", "1"]})");
  auto r = run({"example", "group-coquasi", path("g.json")});
  EXPECT_EQ(r.code, 1);
  auto j = json::parse(r.out);
  EXPECT_EQ(j["failures"][0]["axiom"], "3-cocycle");
  EXPECT_EQ(j["failures"][0]["index"].size(), 4u);
}

TEST_F(Cli, ListsZoo) {
  auto r = run({"example", "group-coquasi", "--list"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out).size(), zoo().size());
}
