#include <gtest/gtest.h>

#include <json.hpp>

#include "ptdyn_cli/config.hpp"

namespace {

using nlohmann::json;
using namespace ptdyn::cli;

json minimal(const std::string& command) {
  return json{{"schema_version", 1}, {"command", command}, {"output_path", "out.csv"}};
}

TEST(ResolveConfig, MaterializesDefaults) {
  const auto cfg = resolve_config(minimal("spin-sweep"));
  EXPECT_EQ(cfg.command, Command::kSpinSweep);
  EXPECT_EQ(cfg.output_path, "out.csv");
  for (const auto& spec : param_specs(Command::kSpinSweep)) {
    ASSERT_TRUE(cfg.params.contains(spec.name)) << spec.name;
    EXPECT_EQ(cfg.params.at(spec.name), spec.default_value) << spec.name;
  }
  EXPECT_EQ(cfg.integer("n_points"), 601);
  EXPECT_EQ(cfg.number("j"), 0.5);
}

TEST(ResolveConfig, EveryCommandResolvesWithDefaults) {
  for (Command c : all_commands()) {
    const auto cfg = resolve_config(minimal(std::string(to_string(c))));
    EXPECT_EQ(cfg.params.size(), param_specs(c).size());
  }
}

TEST(ResolveConfig, GivenParamsOverrideDefaults) {
  auto doc = minimal("lattice");
  doc["params"] = {{"alpha1", 0.5}, {"n_sites", 12}};
  const auto cfg = resolve_config(doc);
  EXPECT_EQ(cfg.number("alpha1"), 0.5);
  EXPECT_EQ(cfg.integer("n_sites"), 12);
  EXPECT_EQ(cfg.number("alpha2"), 1.0);
}

TEST(ResolveConfig, IntegerAcceptedWhereNumberExpected) {
  auto doc = minimal("spin-sweep");
  doc["params"] = {{"epsilon", 3}};
  EXPECT_EQ(resolve_config(doc).number("epsilon"), 3.0);
}

TEST(ResolveConfig, RejectsUnknownKeys) {
  auto top = minimal("swanson");
  top["extra"] = 1;
  EXPECT_THROW(resolve_config(top), ConfigError);
  auto param = minimal("swanson");
  param["params"] = {{"lamda", 2.0}};
  EXPECT_THROW(resolve_config(param), ConfigError);
}

TEST(ResolveConfig, RejectsWrongTypesAndChoices) {
  auto wrong_type = minimal("spin-sweep");
  wrong_type["params"] = {{"n_points", 2.5}};
  EXPECT_THROW(resolve_config(wrong_type), ConfigError);
  auto bad_choice = minimal("spin-sweep");
  bad_choice["params"] = {{"convention", "radians"}};
  EXPECT_THROW(resolve_config(bad_choice), ConfigError);
  auto bad_check = minimal("verify");
  bad_check["params"] = {{"checks", {"no_such_check"}}};
  EXPECT_THROW(resolve_config(bad_check), ConfigError);
}

TEST(ResolveConfig, RequiresVersionCommandAndOutput) {
  auto no_version = minimal("verify");
  no_version.erase("schema_version");
  EXPECT_THROW(resolve_config(no_version), ConfigError);
  auto wrong_version = minimal("verify");
  wrong_version["schema_version"] = 2;
  EXPECT_THROW(resolve_config(wrong_version), ConfigError);
  auto no_command = minimal("verify");
  no_command.erase("command");
  EXPECT_THROW(resolve_config(no_command), ConfigError);
  EXPECT_THROW(resolve_config(minimal("plot")), ConfigError);
  auto no_output = minimal("verify");
  no_output.erase("output_path");
  EXPECT_THROW(resolve_config(no_output), ConfigError);
  EXPECT_NO_THROW(resolve_config(no_output, std::string("elsewhere.jsonl")));
  EXPECT_THROW(resolve_config(json::array()), ConfigError);
}

TEST(ResolveConfig, OverridesReplaceDocumentValues) {
  auto doc = minimal("verify");
  doc["seed"] = 5;
  const auto cfg = resolve_config(doc, std::string("other.jsonl"), std::uint64_t{9});
  EXPECT_EQ(cfg.output_path, "other.jsonl");
  EXPECT_EQ(cfg.seed, 9U);
  EXPECT_EQ(resolve_config(doc).seed, 5U);
}

TEST(ResolveConfig, EchoRoundTrips) {
  auto doc = minimal("branch-map");
  doc["seed"] = 3;
  doc["params"] = {{"gamma", 0.5}, {"branch", "negative"}};
  const auto cfg = resolve_config(doc);
  const auto again = resolve_config(cfg.to_json());
  EXPECT_EQ(again.to_json(), cfg.to_json());
  EXPECT_EQ(again.string("branch"), "negative");
}

TEST(LoadConfig, MissingAndMalformedFiles) {
  EXPECT_THROW(load_config("/nonexistent/config.json"), ConfigError);
}

TEST(Commands, NamesRoundTrip) {
  for (Command c : all_commands()) EXPECT_EQ(parse_command(to_string(c)), c);
  EXPECT_FALSE(parse_command("bogus").has_value());
}

}  // namespace
