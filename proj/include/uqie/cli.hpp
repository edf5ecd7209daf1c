#pragma once

#include <iosfwd>

#include "uqie/config.hpp"

namespace uqie {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailedVerdict = 1;
inline constexpr int kExitConfigError = 2;

// Runs one mode and writes its artifacts under cfg.output_dir.
int run(const RunConfig& cfg, std::ostream& log);

// Parses flags (--config, --mode, --grid-n, --tol, --eps0, --rho, --count,
// --sign, --out, --seed), applies them over the config file and runs.
int run_cli(int argc, char** argv, std::ostream& log, std::ostream& err);

}  // namespace uqie
