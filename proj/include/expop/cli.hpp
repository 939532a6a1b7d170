#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>

#include <json.hpp>

#include "expop/analysis.hpp"

namespace expop::cli {

/// Exit codes of run_cli.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNumeric = 1;
inline constexpr int kExitUsage = 2;

/// Runs one subcommand. `args` excludes the program name.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

/// 17 significant digits, '.' decimal point.
std::string format_number(double v);

std::string to_csv(const ConvergenceReport& report);
nlohmann::json to_json(const ConvergenceReport& report);
ConvergenceReport report_from_json(const nlohmann::json& j);

/// Parses {"function", "a_ladder", "lambda_ladder", "x_grid", "rel_tol"};
/// throws std::invalid_argument on schema violations.
ExperimentSpec experiment_spec_from_json(const nlohmann::json& j);

/// Writes through a temporary sibling file and renames it into place.
void write_atomically(const std::filesystem::path& path, const std::string& content);

}  // namespace expop::cli
