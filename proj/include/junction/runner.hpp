#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "junction/config.hpp"

namespace junction {

inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitNumerical = 3 };

struct CommandResult {
  std::vector<std::filesystem::path> files;  // relative to the output directory
  std::vector<std::uint64_t> seeds;
  int steps_per_period = 0;
  nlohmann::json summary = nlohmann::json::object();
};

CommandResult cmd_dynamics(const Settings& s, const std::filesystem::path& out, int workers);
CommandResult cmd_ensemble(const Settings& s, const std::filesystem::path& out, int workers);
CommandResult cmd_spectrum(const Settings& s, const std::filesystem::path& out, int workers);
CommandResult cmd_stability(const Settings& s, const std::filesystem::path& out, int workers);
CommandResult cmd_contours(const Settings& s, const std::filesystem::path& out, int workers);
/// Echoes the table and its consistency warnings; `table` empty means the
/// configured (or bundled) table.
CommandResult cmd_device_check(const Settings& s, const std::string& table, const std::filesystem::path& out);

/// Dispatches `command`, writes manifest.json into `out` on success and on
/// failure, and maps errors to exit codes (2 config, 3 numerical).
int run_command(const std::string& command, const Settings& s, const std::filesystem::path& out, int workers,
                std::ostream& log, const std::string& table = {});
/// Same, with settings produced by `load`; a failing load still leaves a manifest.
int run_command(const std::string& command, const std::function<Settings()>& load, const std::filesystem::path& out,
                int workers, std::ostream& log, const std::string& table = {});

/// Lower-case hex SHA-256 of a file or a string.
std::string sha256_file(const std::filesystem::path& path);
std::string sha256_text(const std::string& text);

}  // namespace junction
