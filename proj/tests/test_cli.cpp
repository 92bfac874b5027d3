#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "graphesa/catalog.hpp"
#include "graphesa/cli.hpp"

using namespace graphesa;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = cli::execute(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string family(const std::string& name) { return std::string(GRAPHESA_DATA_DIR) + "/families/" + name + ".json"; }

}  // namespace

TEST(Cli, ReproduceExample2) {
  const auto r = run({"reproduce", "example2", "--A", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["version"], "0.1.0");
  EXPECT_EQ(j["result"]["status"], "NotESA");
  EXPECT_EQ(j["result"]["rule"], "WeylNumeric");
  EXPECT_FALSE(j.contains("wall_time_s"));
  for (const auto& row : j["result"]["table"]) {
    EXPECT_TRUE(row["agrees"].get<bool>()) << row.dump();
    if (row["quantity"] == "root moduli") {
      for (double m : row["computed"]) EXPECT_LT(m, 1.0);
    }
  }
}

TEST(Cli, ReproduceExample4) {
  const auto r = run({"reproduce", "example4", "--N", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["result"]["status"], "NotESA");
}

TEST(Cli, MissingFileIsInputError) {
  const auto r = run({"classify", "--family", "missing.json"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("file not found"), std::string::npos) << r.err;
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"reproduce", "example7"}).code, 1);
  EXPECT_EQ(run({"classify", "--example", "example1", "--format", "xml"}).code, 1);
  EXPECT_EQ(run({"classify", "--example", "example2", "--set", "A"}).code, 1);
}

TEST(Cli, MalformedFamilyIsInputError) {
  const auto path = ::testing::TempDir() + "/broken_family.json";
  {
    std::ofstream(path) << "{\"kind\": \"end\", \"coeffs\": ";
  }
  const auto r = run({"classify", "--family", path});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("InvalidFamily"), std::string::npos) << r.err;
}

TEST(Cli, StrictInconclusive) {
  const std::string A0 = "--set=A=" + std::to_string(catalog::dyadic_upper_threshold());
  const std::string exact = "A=0.26776695296636888";
  EXPECT_EQ(run({"classify", "--example", "example2", "--set", exact}).code, 0);
  EXPECT_EQ(run({"classify", "--example", "example2", "--set", exact, "--strict"}).code, 2);
  EXPECT_EQ(run({"classify", "--example", "example1", "--strict"}).code, 0);
}

TEST(Cli, DeterministicOutput) {
  const std::vector<std::string> args{"classify", "--family", family("example2"), "--set", "A=0.2"};
  const auto a = run(args);
  const auto b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto timed = run({"classify", "--example", "example1", "--timing"});
  EXPECT_TRUE(nlohmann::json::parse(timed.out).contains("wall_time_s"));
}

TEST(Cli, SweepRowsOrdered) {
  const auto r = run({"sweep", "--example", "example2", "--param", "A", "--from", "-4", "--to", "1", "--step", "0.5",
                      "--threads", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "A,status,rule,root_moduli");
  double previous = -1e9;
  int rows = 0;
  while (std::getline(in, line)) {
    const double a = std::stod(line.substr(0, line.find(',')));
    EXPECT_GT(a, previous);
    previous = a;
    ++rows;
  }
  EXPECT_EQ(rows, 11);
}

TEST(Cli, DirichletMetricWeyl) {
  auto r = run({"dirichlet", "--example", "example1", "--horizons", "100,200,400"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["result"]["stable"].get<bool>());
  EXPECT_EQ(j["result"]["rows"].size(), 3u);

  r = run({"metric", "--example", "example2", "--set", "A=0", "--scheme", "min-omega", "--horizon", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["result"]["status"], "NonComplete");
  EXPECT_NEAR(j["result"]["D"][3].get<double>(), std::pow(2.0, -2.5), 1e-15);

  r = run({"weyl", "--example", "example2", "--set", "A=0", "--lambda", "-i"});
  ASSERT_EQ(r.code, 0) << r.err;
  j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["result"]["status"], "LimitCircle");
  EXPECT_EQ(j["result"]["dimE"], 2);
}

TEST(Cli, DumpMatrix) {
  const auto path = ::testing::TempDir() + "/unit_matrix.csv";
  const auto r = run({"metric", "--example", "unit", "--horizon", "4", "--dump-matrix", path});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(path);
  std::string first;
  std::getline(in, first);
  EXPECT_EQ(first, "1,-1,0,0,0");
}
