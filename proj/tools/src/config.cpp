#include "ptdyn_cli/config.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <set>

#include "ptdyn_cli/checks.hpp"

namespace ptdyn::cli {

namespace {

using nlohmann::json;

ParamSpec number(std::string name, double def) { return {std::move(name), ParamType::kNumber, def, {}}; }
ParamSpec integer(std::string name, int def) { return {std::move(name), ParamType::kInteger, def, {}}; }
ParamSpec choice(std::string name, std::string def, std::vector<std::string> choices) {
  return {std::move(name), ParamType::kString, std::move(def), std::move(choices)};
}

std::vector<ParamSpec> make_specs(Command c) {
  switch (c) {
    case Command::kSpinSweep:
      return {number("j", 0.5),        number("epsilon", 2.0),
              number("gamma", 1.0),    number("k_min", -3.0),
              number("k_max", 3.0),    integer("n_points", 601),
              choice("convention", "spin", {"spin", "pauli"}),
              number("classification_tol", 1e-9)};
    case Command::kBranchMap:
      return {number("gamma", 1.0),  number("re_min", -2.0), number("re_max", 2.0),
              number("im_min", -2.0), number("im_max", 2.0), integer("resolution", 201),
              choice("branch", "positive", {"positive", "negative"})};
    case Command::kSwanson:
      return {number("lambda", 2.0), number("alpha1", 1.0),  number("alpha2", 1.0),
              number("beta1", 0.5),  number("beta2", 0.5),   integer("n_trunc", 128),
              integer("n_levels", 16), number("d_min", -1.0), number("d_max", 3.0),
              integer("d_points", 401)};
    case Command::kLattice:
      return {number("lambda", 0.0), number("alpha1", 1.0), number("alpha2", 1.0),
              number("beta", 0.0),   integer("n_sites", 40), number("z_max", 2.0),
              number("dz", 1e-3),    integer("initial_site", 0)};
    case Command::kVerify: {
      const auto& names = check_names();
      return {{"checks", ParamType::kStringList, json(names), names},
              integer("random_draws", kDefaultRandomDraws)};
    }
  }
  return {};
}

std::string type_name(ParamType t) {
  switch (t) {
    case ParamType::kNumber:
      return "a number";
    case ParamType::kInteger:
      return "an integer";
    case ParamType::kString:
      return "a string";
    case ParamType::kStringList:
      return "a list of strings";
  }
  return "?";
}

void check_choice(const ParamSpec& spec, const std::string& v) {
  if (spec.choices.empty()) return;
  if (std::find(spec.choices.begin(), spec.choices.end(), v) == spec.choices.end()) {
    throw ConfigError("params." + spec.name + ": unknown value \"" + v + "\"");
  }
}

json coerce(const ParamSpec& spec, const json& v) {
  const std::string where = "params." + spec.name;
  switch (spec.type) {
    case ParamType::kNumber:
      if (!v.is_number()) break;
      return v.get<double>();
    case ParamType::kInteger:
      if (v.is_number_unsigned()) {
        if (v.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<int>::max())) {
          throw ConfigError(where + ": integer out of range");
        }
        return v.get<int>();
      }
      if (!v.is_number_integer()) break;
      if (v.get<std::int64_t>() < std::numeric_limits<int>::min() ||
          v.get<std::int64_t>() > std::numeric_limits<int>::max()) {
        throw ConfigError(where + ": integer out of range");
      }
      return v.get<int>();
    case ParamType::kString:
      if (!v.is_string()) break;
      check_choice(spec, v.get<std::string>());
      return v;
    case ParamType::kStringList: {
      if (!v.is_array()) break;
      std::set<std::string> seen;
      for (const auto& item : v) {
        if (!item.is_string()) throw ConfigError(where + ": entries must be strings");
        check_choice(spec, item.get<std::string>());
        if (!seen.insert(item.get<std::string>()).second) {
          throw ConfigError(where + ": duplicate entry \"" + item.get<std::string>() + "\"");
        }
      }
      return v;
    }
  }
  throw ConfigError(where + ": must be " + type_name(spec.type));
}

}  // namespace

std::string_view to_string(Command c) noexcept {
  switch (c) {
    case Command::kSpinSweep:
      return "spin-sweep";
    case Command::kBranchMap:
      return "branch-map";
    case Command::kSwanson:
      return "swanson";
    case Command::kLattice:
      return "lattice";
    case Command::kVerify:
      return "verify";
  }
  return "?";
}

const std::vector<Command>& all_commands() {
  static const std::vector<Command> all{Command::kSpinSweep, Command::kBranchMap,
                                        Command::kSwanson, Command::kLattice, Command::kVerify};
  return all;
}

std::optional<Command> parse_command(std::string_view name) noexcept {
  for (Command c : all_commands()) {
    if (to_string(c) == name) return c;
  }
  return std::nullopt;
}

const std::vector<ParamSpec>& param_specs(Command c) {
  static const std::vector<std::vector<ParamSpec>> table = [] {
    std::vector<std::vector<ParamSpec>> t;
    for (Command cmd : all_commands()) t.push_back(make_specs(cmd));
    return t;
  }();
  return table[static_cast<std::size_t>(c)];
}

const std::vector<std::string>& top_level_keys() {
  static const std::vector<std::string> keys{"schema_version", "command", "output_path", "seed",
                                             "params"};
  return keys;
}

double RunConfig::number(const std::string& key) const { return params.at(key).get<double>(); }
int RunConfig::integer(const std::string& key) const { return params.at(key).get<int>(); }
std::string RunConfig::string(const std::string& key) const {
  return params.at(key).get<std::string>();
}
std::vector<std::string> RunConfig::string_list(const std::string& key) const {
  return params.at(key).get<std::vector<std::string>>();
}

nlohmann::json RunConfig::to_json() const {
  return {{"schema_version", kSchemaVersion},
          {"command", std::string(cli::to_string(command))},
          {"output_path", output_path},
          {"seed", seed},
          {"params", params}};
}

RunConfig resolve_config(const nlohmann::json& doc, const std::optional<std::string>& output_override,
                         const std::optional<std::uint64_t>& seed_override) {
  if (!doc.is_object()) throw ConfigError("config: top level must be an object");
  const auto& keys = top_level_keys();
  for (const auto& [key, value] : doc.items()) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ConfigError("config: unknown key \"" + key + "\"");
    }
  }
  if (!doc.contains("schema_version")) throw ConfigError("config: schema_version is required");
  const auto& version = doc.at("schema_version");
  if (!version.is_number_integer() || version.get<std::int64_t>() != kSchemaVersion) {
    throw ConfigError("config: unsupported schema_version (expected " +
                      std::to_string(kSchemaVersion) + ")");
  }
  if (!doc.contains("command") || !doc.at("command").is_string()) {
    throw ConfigError("config: command is required and must be a string");
  }
  const auto command = parse_command(doc.at("command").get<std::string>());
  if (!command) {
    throw ConfigError("config: unknown command \"" + doc.at("command").get<std::string>() + "\"");
  }

  RunConfig cfg;
  cfg.command = *command;
  if (output_override) {
    cfg.output_path = *output_override;
  } else if (doc.contains("output_path")) {
    if (!doc.at("output_path").is_string()) throw ConfigError("config: output_path must be a string");
    cfg.output_path = doc.at("output_path").get<std::string>();
  }
  if (cfg.output_path.empty()) {
    throw ConfigError("config: an output path is required (output_path or --out)");
  }
  if (seed_override) {
    cfg.seed = *seed_override;
  } else if (doc.contains("seed")) {
    const json& seed = doc.at("seed");
    const bool nonnegative =
        seed.is_number_unsigned() || (seed.is_number_integer() && seed.get<std::int64_t>() >= 0);
    if (!nonnegative) throw ConfigError("config: seed must be a nonnegative integer");
    cfg.seed = doc.at("seed").get<std::uint64_t>();
  }

  const json given = doc.contains("params") ? doc.at("params") : json::object();
  if (!given.is_object()) throw ConfigError("config: params must be an object");
  const auto& specs = param_specs(cfg.command);
  for (const auto& [key, value] : given.items()) {
    const bool known = std::any_of(specs.begin(), specs.end(),
                                   [&](const ParamSpec& s) { return s.name == key; });
    if (!known) {
      throw ConfigError("params: unknown key \"" + key + "\" for command " +
                        std::string(to_string(cfg.command)));
    }
  }
  for (const auto& spec : specs) {
    cfg.params[spec.name] =
        given.contains(spec.name) ? coerce(spec, given.at(spec.name)) : spec.default_value;
  }
  return cfg;
}

RunConfig load_config(const std::string& path, const std::optional<std::string>& output_override,
                      const std::optional<std::uint64_t>& seed_override) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config: malformed JSON: ") + e.what());
  }
  return resolve_config(doc, output_override, seed_override);
}

}  // namespace ptdyn::cli
