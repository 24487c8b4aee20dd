#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "strichartz/cli/run_config.hpp"
#include "strichartz/errata.hpp"
#include "strichartz/potential_checks.hpp"
#include "strichartz/scaling.hpp"

namespace strichartz::cli {

/// Scientific notation with 17 significant digits; "nan", "inf" and "-inf" for non-finite values.
std::string format_double(double x);

/// Inverse of format_double.
double parse_double(const std::string& text);

const std::vector<std::string>& csv_header();
std::string sweep_csv(std::span<const SweepRow> rows);
/// Parses text produced by sweep_csv; node counts are not stored and come back as zero.
std::vector<SweepRow> parse_sweep_csv(const std::string& text);

/// Two columns: log10(R) and log10(value) for rows where the value is positive.
std::string plot_data(std::span<const SweepRow> rows, const std::string& column);

Json verdict_json(const Verdict& verdict, const RunConfig& config);
Json errata_json(const ErrataReport& report, const RunConfig& config);
Json potential_json(const std::vector<IdentityCheck>& checks, const RemainderStudy& study, const RunConfig& config);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace strichartz::cli
