#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ptdyn/errors.hpp"

namespace ptdyn::cli {

inline constexpr int kSchemaVersion = 1;

enum class Command { kSpinSweep, kBranchMap, kSwanson, kLattice, kVerify };

std::string_view to_string(Command c) noexcept;
std::optional<Command> parse_command(std::string_view name) noexcept;
const std::vector<Command>& all_commands();

// Malformed or schema-violating configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class ParamType { kNumber, kInteger, kString, kStringList };

struct ParamSpec {
  std::string name;
  ParamType type;
  nlohmann::json default_value;
  std::vector<std::string> choices;  // allowed strings or list items; empty = any
};

const std::vector<ParamSpec>& param_specs(Command c);
const std::vector<std::string>& top_level_keys();

struct RunConfig {
  Command command = Command::kVerify;
  std::string output_path;
  std::uint64_t seed = 0;
  nlohmann::json params = nlohmann::json::object();  // every parameter present

  double number(const std::string& key) const;
  int integer(const std::string& key) const;
  std::string string(const std::string& key) const;
  std::vector<std::string> string_list(const std::string& key) const;

  // Fully resolved document; re-ingesting it yields the same RunConfig.
  nlohmann::json to_json() const;
};

// Strict validation: unknown keys, wrong types and unknown choices throw
// ConfigError. Overrides replace the document's output_path and seed.
RunConfig resolve_config(const nlohmann::json& doc,
                         const std::optional<std::string>& output_override = std::nullopt,
                         const std::optional<std::uint64_t>& seed_override = std::nullopt);

RunConfig load_config(const std::string& path,
                      const std::optional<std::string>& output_override = std::nullopt,
                      const std::optional<std::uint64_t>& seed_override = std::nullopt);

}  // namespace ptdyn::cli
