#pragma once

#include <optional>
#include <ostream>

#include "ptdyn_cli/config.hpp"

namespace ptdyn::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

// --threads wins over PTDYN_THREADS; both absent gives 1.
unsigned resolve_threads(std::optional<int> flag, const char* env_value);

// Runs one resolved configuration, writing its outputs and the resolved
// echo <output_path>.config.json. Returns an exit code; library exceptions
// propagate.
int execute(const RunConfig& config, unsigned threads, std::ostream& log);

// Full command-line entry point with error-to-exit-code mapping.
int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ptdyn::cli
