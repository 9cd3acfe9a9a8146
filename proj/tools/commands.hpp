#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace irlink::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;

struct Command {
  std::string verb;  ///< simulate, sweep-stability, stability-map, filter-response, link-test
  std::optional<std::filesystem::path> config_path;
  std::filesystem::path output_dir = "out";
  std::vector<std::string> overrides;  ///< KEY=VALUE, applied in order after the file
  std::optional<std::uint64_t> seed;   ///< takes precedence over run.seed
  unsigned jobs = 1;
};

const std::vector<std::string>& verbs();

/// Runs one command. Artifacts go to cmd.output_dir (manifest first, each file
/// via temp-file rename); diagnostics go to `err`, a short summary to `out`.
/// Returns kExitOk, kExitConfig or kExitNumeric.
int execute(const Command& cmd, std::ostream& out, std::ostream& err);

}  // namespace irlink::cli
