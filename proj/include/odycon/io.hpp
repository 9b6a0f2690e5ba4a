#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "odycon/engine.hpp"

namespace odycon {

inline constexpr int kScenarioSchemaVersion = 1;
inline constexpr int kSummarySchemaVersion = 1;
/// Minor units per currency unit in every file.
inline constexpr double kMinorUnits = 100.0;

struct ScenarioLoad {
  std::optional<Scenario> scenario;  // set only when the report has no errors
  ValidationReport report;
};

/// Parses and validates a scenario document. Content problems land in the
/// report; nothing is thrown.
ScenarioLoad parse_scenario(std::string_view text);
ScenarioLoad load_scenario(const std::filesystem::path& path);

/// Throws ValidationError carrying the report when loading fails.
Scenario load_scenario_or_throw(const std::filesystem::path& path);

/// Records in file units: currency columns hold minor units.
struct RecordsTable {
  std::vector<ObjectiveId> objectives;
  std::vector<std::string> variables;
  std::vector<SimulationRecord> records;
};

/// Converts engine records (currency in major units) to file units. The
/// score is a currency amount under soo:cost and is scaled with it.
RecordsTable make_records_table(const Scenario& scenario, const OptimizationMode& mode,
                                const std::vector<SimulationRecord>& records);

std::string format_records_table(const RecordsTable& table);
/// Throws ValidationError naming the line on malformed input.
RecordsTable parse_records_table(std::string_view text);
RecordsTable read_records_table(const std::filesystem::path& path);

/// Shortest text that parses back to the same double; empty for NaN.
std::string format_number(double value);

struct SummaryInfo {
  std::string scenario;
  std::string kind;
  std::string mode;
  std::uint64_t seed = 0;
  std::vector<double> levels{50.0, 80.0, 90.0};
  std::size_t top_k = 10;
  /// Display names of x1..xN.
  std::vector<std::string> variable_names;
  /// (name, value in file units) of the penalty terms used while scoring.
  std::vector<std::pair<std::string, double>> penalties;
  std::vector<std::string> warnings;
};

/// Summary document computed from the table values alone.
std::string format_summary(const RecordsTable& table, const SummaryInfo& info);

/// Percentiles of the table's objective columns, in file units.
PercentileSummary table_percentiles(const RecordsTable& table, const std::vector<double>& levels);

/// Penalty terms of a mode, renamed and scaled to file units.
std::vector<std::pair<std::string, double>> penalties_in_file_units(const OptimizationMode& mode);

void write_text_file(const std::filesystem::path& path, std::string_view text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace odycon
