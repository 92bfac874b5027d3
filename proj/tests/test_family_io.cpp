#include <gtest/gtest.h>

#include <filesystem>

#include "graphesa/error.hpp"
#include "graphesa/family_io.hpp"
#include "graphesa/report.hpp"

using namespace graphesa;

namespace {

std::filesystem::path family_file(const std::string& name) {
  return std::filesystem::path(GRAPHESA_DATA_DIR) / "families" / (name + ".json");
}

}  // namespace

TEST(FamilyIo, SequenceForms) {
  EXPECT_DOUBLE_EQ(sequence_from_json(2.5)(7), 2.5);
  const auto p = sequence_from_json(nlohmann::json::parse(R"({"form":"power","params":{"k":2,"s":2,"shift":1}})"));
  EXPECT_DOUBLE_EQ(p(2), 18.0);
  const auto g = sequence_from_json(nlohmann::json::parse(R"({"form":"geometric","params":{"rho":0.5}})"));
  EXPECT_DOUBLE_EQ(g(3), 0.125);
  const auto t = sequence_from_json(nlohmann::json::parse(R"({"form":"table","params":[1,2,3]})"));
  EXPECT_DOUBLE_EQ(t(1), 2.0);
  EXPECT_THROW(sequence_from_json(nlohmann::json::parse(R"({"form":"spiral"})")), Error);
}

TEST(FamilyIo, PlaceholderSubstitution) {
  const auto doc = nlohmann::json::parse(R"({"a":"$A","b":["$A",{"c":"$B"}],"d":"plain"})");
  const auto out = substitute(doc, {{"A", 1.5}, {"B", -2.0}});
  EXPECT_DOUBLE_EQ(out["a"].get<double>(), 1.5);
  EXPECT_DOUBLE_EQ(out["b"][1]["c"].get<double>(), -2.0);
  EXPECT_EQ(out["d"], "plain");
  EXPECT_THROW(substitute(doc, {{"A", 1.0}}), Error);
}

TEST(FamilyIo, DataFilesMatchCatalog) {
  for (const std::string name : {"example1", "example4", "unit"}) {
    const auto from_file = family_to_json(load_family(family_file(name)));
    const auto built_in = family_to_json(example_family(name));
    EXPECT_EQ(write_json(from_file["coeffs"]), write_json(built_in["coeffs"])) << name;
  }
  const auto e2 = family_to_json(load_family(family_file("example2"), {{"A", 0.25}}));
  EXPECT_EQ(write_json(e2["coeffs"]), write_json(family_to_json(example_family("example2", {{"A", 0.25}}))["coeffs"]));
}

TEST(FamilyIo, RoundTrip) {
  for (const std::string name : {"example1", "example2", "example3", "example4", "unit"}) {
    const auto j = family_to_json(example_family(name));
    const auto again = family_to_json(family_from_json(nlohmann::json::parse(write_json(j))));
    EXPECT_EQ(write_json(j), write_json(again)) << name;
  }
  const auto star = family_to_json(load_family(family_file("starlike_mixed")));
  EXPECT_EQ(write_json(star), write_json(family_to_json(family_from_json(nlohmann::json::parse(write_json(star))))));
}

TEST(FamilyIo, Errors) {
  EXPECT_THROW(load_family("/nonexistent/family.json"), Error);
  EXPECT_THROW(family_from_json(nlohmann::json::parse(R"({"kind":"end"})")), Error);
  EXPECT_THROW(family_from_json(nlohmann::json::parse(R"({"kind":"moebius"})")), Error);
  EXPECT_THROW(family_from_json(nlohmann::json::parse(R"({"coeffs":{"c":-1}})")), Error);
  EXPECT_THROW(example_family("example9"), Error);
}

TEST(Report, NumberFormatting) {
  EXPECT_EQ(write_json(Json(0.1), -1), "0.10000000000000001");
  EXPECT_EQ(write_json(Json(std::numeric_limits<double>::infinity()), -1), "null");
  EXPECT_EQ(number_or_tag(-std::numeric_limits<double>::infinity()), "-inf");
  EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
}
