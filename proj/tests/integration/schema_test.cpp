#include <gtest/gtest.h>

#include <fstream>
#include <set>
#include <string>

#include <json.hpp>

#include "ptdyn_cli/checks.hpp"
#include "ptdyn_cli/config.hpp"

namespace {

using nlohmann::json;
using namespace ptdyn::cli;

json load_schema() {
  std::ifstream in(PTDYN_SCHEMA);
  return json::parse(in);
}

std::set<std::string> keys_of(const json& obj) {
  std::set<std::string> out;
  for (const auto& [k, v] : obj.items()) out.insert(k);
  return out;
}

TEST(Schema, TopLevelKeysMatchLoader) {
  const json s = load_schema();
  EXPECT_EQ(s.at("additionalProperties"), false);
  const auto& top = top_level_keys();
  EXPECT_EQ(keys_of(s.at("properties")), std::set<std::string>(top.begin(), top.end()));
  EXPECT_EQ(s.at("properties").at("schema_version").at("const"), kSchemaVersion);
}

TEST(Schema, CommandEnumMatchesLoader) {
  const json s = load_schema();
  std::set<std::string> names;
  for (Command c : all_commands()) names.insert(std::string(to_string(c)));
  std::set<std::string> listed;
  for (const auto& v : s.at("properties").at("command").at("enum")) listed.insert(v.get<std::string>());
  EXPECT_EQ(listed, names);
}

TEST(Schema, ParamsPerCommandMatchLoader) {
  const json s = load_schema();
  for (Command c : all_commands()) {
    const std::string name(to_string(c));
    const json& def = s.at("$defs").at("params-" + name);
    EXPECT_EQ(def.at("additionalProperties"), false) << name;
    std::set<std::string> expected;
    for (const auto& spec : param_specs(c)) {
      expected.insert(spec.name);
      const json& prop = def.at("properties").at(spec.name);
      EXPECT_EQ(prop.at("default"), spec.default_value) << name << "." << spec.name;
    }
    EXPECT_EQ(keys_of(def.at("properties")), expected) << name;
  }
}

TEST(Schema, VerifyCheckEnumMatchesSuite) {
  const json s = load_schema();
  const json& items = s.at("$defs").at("params-verify").at("properties").at("checks").at("items");
  std::vector<std::string> listed;
  for (const auto& v : items.at("enum")) listed.push_back(v.get<std::string>());
  EXPECT_EQ(listed, check_names());
}

}  // namespace
