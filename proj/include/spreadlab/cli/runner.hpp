#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>

namespace spreadlab::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInvariant = 1,  // invariant failed or unexpected error
  kExitConfig = 2,
  kExitGuard = 3,
};

struct RunOptions {
  std::optional<std::filesystem::path> out;
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
};

/// Environment variable naming the default output directory.
inline constexpr const char* kOutputEnv = "SPREADLAB_OUT";

/// Writes <out>/<curve>.csv, <out>/summary and <out>/resolved.cfg.
int run(const std::filesystem::path& config_path, const RunOptions& opts, std::ostream& log);

/// One sub-run per value of sweep.parameter under <out>/runs/<index>/, then
/// merged CSVs with a leading sweep_value column and a combined summary.
int sweep(const std::filesystem::path& config_path, const RunOptions& opts, std::ostream& log);

/// argv front end: `run <config>` / `sweep <config>` with --out, --seed, --threads.
int main_entry(int argc, char** argv);

}  // namespace spreadlab::cli
