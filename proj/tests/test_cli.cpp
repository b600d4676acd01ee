#include "cli_app.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using nucleus::cli::run_cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

const fs::path fixtures = NUCLEUS_FIXTURE_DIR;
const fs::path golden_dir = NUCLEUS_GOLDEN_DIR;

std::string fixture(const std::string& name) { return (fixtures / name).string(); }

// NUCLEUS_UPDATE_GOLDEN=1 rewrites the files instead of comparing.
void expect_golden(const std::string& name, const std::string& actual) {
  const fs::path p = golden_dir / name;
  if (const char* u = std::getenv("NUCLEUS_UPDATE_GOLDEN"); u && std::string(u) == "1") {
    std::ofstream(p) << actual;
    return;
  }
  std::ifstream in(p);
  ASSERT_TRUE(in) << "missing golden file " << p;
  std::stringstream expected;
  expected << in.rdbuf();
  EXPECT_EQ(actual, expected.str()) << "golden mismatch for " << name;
}

bool contains(const std::string& text, const std::string& line) { return text.find(line) != std::string::npos; }

}  // namespace

TEST(Cli, ClassifyKo) {
  const auto r = run({"classify", fixture("ko.toml")});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "minimalAtomic: yes [R1: monogenic; cyclic cohomology]")) << r.out;
}

TEST(Cli, ClassifyRp) {
  const auto r = run({"classify", fixture("rp-inf-susp.toml")});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "minimalAtomic: no [R3: degree 3 image nonzero mod 2]")) << r.out;
  EXPECT_TRUE(contains(r.out, "atomic: yes")) << r.out;
}

TEST(Cli, ClassifySphere) {
  const auto r = run({"classify", fixture("sphere.toml")});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "minimalAtomic: yes")) << r.out;
}

TEST(Cli, UnknownIsPrintedNotOmitted) {
  const auto r = run({"classify", fixture("cp-inf-susp.toml")});
  EXPECT_TRUE(contains(r.out, "  monogenic: unknown\n")) << r.out;
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 9);
}

TEST(Cli, MaxDegreeFromEnvironment) {
  ::setenv("NUCLEUS_MAX_DEGREE", "12", 1);
  const auto r = run({"classify", fixture("ko.toml")});
  ::unsetenv("NUCLEUS_MAX_DEGREE");
  EXPECT_TRUE(contains(r.out, "N = 12")) << r.out;
  EXPECT_TRUE(contains(run({"classify", fixture("ko.toml")}).out, "N = 40"));
  EXPECT_TRUE(contains(run({"classify", fixture("ko.toml"), "--max-degree", "16"}).out, "N = 16"));
  ::setenv("NUCLEUS_MAX_DEGREE", "lots", 1);
  EXPECT_EQ(run({"classify", fixture("ko.toml")}).code, 2);
  ::unsetenv("NUCLEUS_MAX_DEGREE");
}

TEST(Cli, JsonRoundTrips) {
  const auto r = run({"classify", fixture("rp-inf-susp.toml"), "--json"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("schema"), "nucleus.classify/1");
  const auto report = nucleus::report_from_json(j);
  EXPECT_EQ(nucleus::to_json(report), j);
  EXPECT_EQ(report, nucleus::make_report(nucleus::load_model(fixture("rp-inf-susp.toml")), 40));
}

TEST(Cli, BatchIsSortedAndSkipsModuleFiles) {
  const auto r = run({"classify", fixtures.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.err.empty()) << r.err;
  std::vector<std::string> names;
  std::istringstream in(r.out);
  for (std::string line; std::getline(in, line);)
    if (line.rfind("model: ", 0) == 0) names.push_back(line);
  EXPECT_GE(names.size(), 20u);
  EXPECT_TRUE(contains(names.front(), "BP (p = 3)"));
  const auto j = nlohmann::json::parse(run({"classify", fixtures.string(), "--json"}).out);
  EXPECT_EQ(j.size(), names.size());
}

TEST(Cli, GoldenClassifyAllFixtures) {
  expect_golden("classify-fixtures.txt", run({"classify", fixtures.string()}).out);
  expect_golden("classify-ko.json", run({"classify", fixture("ko.toml"), "--json"}).out);
}

TEST(Cli, ParseErrorsCarryPositionAndExitTwo) {
  const fs::path bad = fs::temp_directory_path() / "nucleus-bad-model.toml";
  std::ofstream(bad) << "[spectrum]\nname = \"x\"\nprime = 2\nhurewicz_dim = \"zero\"\n[homology]\n";
  const auto r = run({"classify", bad.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(contains(r.err, "4:")) << r.err;
  EXPECT_TRUE(contains(r.err, "hurewicz_dim")) << r.err;

  std::ofstream(bad) << "[spectrum]\nname = \"x\"\nprime = 2\nhurewicz_dim = 0\n[homology]\ndegrees = { \"1\" = [\"Z\"] }\n";
  const auto invariant = run({"classify", bad.string()});
  EXPECT_EQ(invariant.code, 1);
  EXPECT_FALSE(invariant.err.empty());
  fs::remove(bad);

  EXPECT_EQ(run({"classify"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"classify", fixture("koA1.toml")}).code, 2);
}

TEST(Cli, Minimalize) {
  const fs::path out = fs::temp_directory_path() / "nucleus-min.json";
  const auto r = run({"minimalize", fixture("chains/cancelling.json"), "--out", out.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "is_minimal: true, homology preserved: true")) << r.out;
  EXPECT_TRUE(contains(r.out, "cells: 6 -> 2")) << r.out;
  std::ifstream in(out);
  const auto doc = nlohmann::json::parse(in);
  const auto X = nucleus::complex_from_json(doc.at("complex"));
  EXPECT_TRUE(nucleus::is_minimal(X));
  fs::remove(out);

  const auto moore = run({"minimalize", fixture("chains/moore-z4-3.json")});
  EXPECT_TRUE(contains(moore.out, "cells: 2 -> 2"));
  EXPECT_TRUE(contains(moore.out, "homology preserved: true"));
  EXPECT_EQ(run({"minimalize", "/nonexistent.json"}).code, 2);
}

TEST(Cli, Ext0) {
  const auto r = run({"ext0", fixture("koA1.toml"), "--max-degree", "20"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "generators: degree 0 (dim 1)\n")) << r.out;
  const auto rp = run({"ext0", fixture("rp-inf-susp.toml"), "--max-degree", "16"});
  EXPECT_TRUE(contains(rp.out, "generators: degree 1 (dim 1), degree 3 (dim 1), degree 7 (dim 1), degree 15 (dim 1)"))
      << rp.out;
  EXPECT_EQ(run({"ext0", fixture("cp-inf-susp.toml")}).code, 1);
}

TEST(Cli, SteenrodReduce) {
  EXPECT_EQ(run({"steenrod", "reduce", "Sq2 Sq2"}).out, "Sq3 Sq1\n");
  EXPECT_EQ(run({"steenrod", "reduce", "Sq1 Sq1"}).out, "0\n");
  EXPECT_EQ(run({"steenrod", "reduce", "Sq2 Sq9"}).code, 0);
  EXPECT_EQ(run({"steenrod", "reduce", "Sq2 Frob"}).code, 2);
  EXPECT_EQ(run({"steenrod", "reduce", "Sq1", "--prime", "4"}).code, 2);
}

TEST(Cli, Ko) {
  EXPECT_EQ(run({"ko", "group", "12"}).out, "Z, generator alpha*beta\n");
  EXPECT_EQ(run({"ko", "group", "5"}).out, "0\n");
  EXPECT_EQ(run({"ko", "group", "-1"}).code, 1);
  EXPECT_EQ(run({"ko", "mul", "a*a"}).out, "4 beta (degree 8)\n");
  EXPECT_EQ(run({"ko", "mul", "eta", "alpha"}).out, "0 (degree 5)\n");
  EXPECT_EQ(run({"ko", "mul", "gamma"}).code, 2);

  const auto a1 = run({"ko", "bracket", "8", "nu", "b0"});
  EXPECT_EQ(a1.code, 0);
  EXPECT_TRUE(contains(a1.out, "= 8 pi_4(ko)")) << a1.out;
  EXPECT_TRUE(contains(a1.out, "contained in 2 pi_4(ko): yes"));
  const auto bad = run({"ko", "bracket", "2", "eta", "b0"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_TRUE(contains(bad.err, "bc = eta")) << bad.err;
  EXPECT_EQ(run({"ko", "bracket", "16", "sigma", "x:12"}).code, 0);

  const auto cov = run({"ko", "coverage", "--max", "32"});
  EXPECT_EQ(cov.code, 0);
  EXPECT_TRUE(contains(cov.out, "gaps: none"));
  expect_golden("ko-coverage-32.txt", cov.out);
}

TEST(Cli, Fixtures) {
  const auto list = run({"fixtures", "list"});
  EXPECT_EQ(list.code, 0) << list.err;
  EXPECT_TRUE(contains(list.out, "ko.toml: ko (p = 2, n0 = 0)\n")) << list.out;
  EXPECT_TRUE(contains(list.out, "koA1.toml: A-module presentation\n"));
  EXPECT_TRUE(contains(list.out, "chains/cancelling.json: chain complex\n"));
  expect_golden("fixtures-list.txt", list.out);

  const auto show = run({"fixtures", "show", "ko"});
  EXPECT_TRUE(contains(show.out, "quotient = \"A(1)\""));
  EXPECT_EQ(run({"fixtures", "show", "nope"}).code, 1);
}

TEST(Cli, StemMetadataMatchesTable) {
  const auto doc = nucleus::parse_toml_file(fixture("ko/stems.toml"));
  const auto* stems = doc["stem"].as_array();
  ASSERT_NE(stems, nullptr);
  ASSERT_EQ(stems->size(), 9u);
  for (const auto& node : *stems) {
    const auto& t = *node.as_table();
    const int n = static_cast<int>(*t["degree"].value<std::int64_t>());
    const auto gens = nucleus::stem_generators(n);
    const auto* names = t["generators"].as_array();
    const auto* groups = t["groups"].as_array();
    ASSERT_EQ(names->size(), gens.size()) << n;
    const bool standard = t["source"].value_or(std::string()) == "standard tables";
    for (std::size_t i = 0; i < gens.size(); ++i) {
      EXPECT_EQ(*(*names)[i].value<std::string>(), gens[i].name);
      const std::string group = *(*groups)[i].value<std::string>();
      EXPECT_EQ(group, gens[i].order == 0 ? "Z" : "Z/" + std::to_string(gens[i].order));
      EXPECT_EQ(gens[i].from_standard_tables, standard) << gens[i].name;
    }
  }
}
