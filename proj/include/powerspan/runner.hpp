#pragma once

#include <string>

#include "powerspan/config.hpp"

namespace powerspan::runner {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitPrecondition = 2;
inline constexpr int kExitCertification = 3;

/// Dispatches one subcommand (`classify`, `approx`, `psi`, `modulate`,
/// `cosine`, `diophantine`, `hup`) against a parsed config, writing CSV/text
/// outputs with a parameter-echo header into out_dir. Returns the process
/// exit code; error text goes to stderr.
int run(const std::string& subcommand, const config::Config& cfg, const std::string& out_dir,
        bool verbose);

/// Re-parse the `# key = value` echo block of an output file (round-trip
/// check support).
config::Config parse_echo_header(const std::string& path);

}  // namespace powerspan::runner
