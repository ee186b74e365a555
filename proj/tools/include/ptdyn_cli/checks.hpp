#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace ptdyn::cli {

inline constexpr int kDefaultRandomDraws = 200;

struct CheckContext {
  std::uint64_t seed = 0;
  int random_draws = kDefaultRandomDraws;
  unsigned threads = 1;
};

struct CheckResult {
  std::string name;
  std::optional<int> n_trunc;
  std::optional<double> interior_fraction;
  double max_err = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::string detail;

  nlohmann::json to_json() const;
};

// Names of the verification checks in suite order.
const std::vector<std::string>& check_names();

// Throws std::out_of_range for an unknown name.
CheckResult run_check(const std::string& name, const CheckContext& ctx);

}  // namespace ptdyn::cli
