// Command-line front end: validate, run, report.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "odycon/engine.hpp"
#include "odycon/io.hpp"

namespace fs = std::filesystem;
using namespace odycon;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

fs::path default_out_dir() {
  if (const char* env = std::getenv("ODYCON_OUT_DIR"); env && *env) return env;
  return "odycon_out";
}

void print_report(const ValidationReport& report) {
  for (const auto& issue : report.issues) {
    std::ostream& os = issue.severity == ValidationIssue::Severity::error ? std::cerr : std::cout;
    os << (issue.severity == ValidationIssue::Severity::error ? "error: " : "warning: ") << issue.where << ": "
       << issue.message << "\n";
  }
}

int cmd_validate(const std::string& path) {
  const auto load = load_scenario(path);
  print_report(load.report);
  if (!load.scenario) {
    std::cerr << path << ": invalid (" << load.report.error_count() << " error(s))\n";
    return kExitValidation;
  }
  const auto& s = *load.scenario;
  std::cout << path << ": ok (" << (s.is_control() ? "control" : "planning") << ", " << s.space.size()
            << " decision variables, " << load.report.warning_count() << " warning(s))\n";
  return kExitOk;
}

struct RunArgs {
  std::string scenario;
  std::string mode = "moo";
  std::size_t iterations = 0;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::vector<double> percentiles;
  std::string out;
  std::size_t threads = 0;
  std::size_t top_k = 10;
};

int cmd_run(const RunArgs& args) {
  const auto load = load_scenario(args.scenario);
  print_report(load.report);
  if (!load.scenario) return kExitValidation;
  const Scenario& scenario = *load.scenario;

  OptimizationMode mode;
  try {
    mode = resolve_mode(scenario, args.mode);
  } catch (const ValidationError& e) {
    std::cerr << "error: --mode: " << e.what() << "\n";
    return kExitValidation;
  }
  std::vector<double> levels = args.percentiles.empty() ? scenario.percentiles : args.percentiles;
  for (double p : levels) {
    if (!(p >= 0.0 && p <= 100.0)) {
      std::cerr << "error: --percentiles: " << p << " outside [0, 100]\n";
      return kExitValidation;
    }
  }

  RunOptions options;
  if (args.iterations) options.iterations = args.iterations;
  if (args.seed_set) options.seed = args.seed;
  options.threads = args.threads;

  std::vector<SimulationRecord> records;
  try {
    records = run(scenario, mode, options);
  } catch (const IterationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }

  const fs::path out = args.out.empty() ? default_out_dir() : fs::path(args.out);
  try {
    fs::create_directories(out);
    const auto table = make_records_table(scenario, mode, records);
    const std::string table_text = format_records_table(table);
    write_text_file(out / "records.csv", table_text);

    SummaryInfo info;
    info.scenario = scenario.name;
    info.kind = scenario.is_control() ? "control" : "planning";
    info.mode = mode.label();
    info.seed = options.seed.value_or(scenario.seed);
    info.levels = levels;
    info.top_k = args.top_k;
    info.variable_names = scenario.space.names;
    info.penalties = penalties_in_file_units(mode);
    info.warnings = scenario.warnings;
    // The summary is computed from the table as written, so it can be
    // recomputed from records.csv alone.
    write_text_file(out / "summary.json", format_summary(parse_records_table(table_text), info));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  std::cout << "wrote " << records.size() << " records to " << (out / "records.csv").string() << "\n";
  return kExitOk;
}

struct ReportArgs {
  std::string records;
  std::size_t top_k = 10;
  std::string scenario;
  std::vector<double> percentiles;
  std::string out;
  std::size_t curve_samples = 101;
};

int cmd_report(const ReportArgs& args) {
  RecordsTable table;
  try {
    table = read_records_table(args.records);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  std::optional<Scenario> scenario;
  if (!args.scenario.empty()) {
    auto load = load_scenario(args.scenario);
    print_report(load.report);
    if (!load.scenario) return kExitValidation;
    scenario = std::move(load.scenario);
  }
  const std::vector<double> levels =
      !args.percentiles.empty() ? args.percentiles
                                : (scenario ? scenario->percentiles : std::vector<double>{50.0, 80.0, 90.0});

  const fs::path out = args.out.empty() ? fs::path(args.records).parent_path() : fs::path(args.out);
  try {
    if (!out.empty()) fs::create_directories(out);
    const auto crit = criticality(table.records, table.variables);

    std::ostringstream freq;
    freq << "variable,value,frequency\n";
    for (std::size_t i = 0; i < crit.names.size(); ++i) {
      for (const auto& [value, fraction] : crit.marginals[i]) {
        freq << crit.names[i] << ',' << value << ',' << format_number(fraction) << '\n';
      }
    }
    write_text_file(out / "variable_frequency.csv", freq.str());

    std::ostringstream combos;
    combos << "rank,vector,frequency\n";
    std::size_t rank = 0;
    for (const auto& [x, fraction] : crit.top(args.top_k)) {
      combos << ++rank << ',' << x.to_string() << ',' << format_number(fraction) << '\n';
    }
    write_text_file(out / "combinations.csv", combos.str());

    std::ostringstream ecdf;
    ecdf << "objective,value,cumulative_probability\n";
    const double n = static_cast<double>(table.records.size());
    for (ObjectiveId id : table.objectives) {
      std::vector<double> column;
      for (const auto& r : table.records) column.push_back(r.objectives[id]);
      std::sort(column.begin(), column.end());
      for (std::size_t k = 0; k < column.size(); ++k) {
        if (k + 1 < column.size() && column[k + 1] == column[k]) continue;
        ecdf << objective_label(id) << ',' << format_number(column[k]) << ','
             << format_number(static_cast<double>(k + 1) / n) << '\n';
      }
    }
    write_text_file(out / "ecdf.csv", ecdf.str());

    const auto pct = table_percentiles(table, levels);
    std::ostringstream ptext;
    ptext << "objective,level,value\n";
    for (const auto& [id, values] : pct.values) {
      for (std::size_t k = 0; k < levels.size(); ++k) {
        ptext << objective_label(id) << ',' << format_number(levels[k]) << ',' << format_number(values[k]) << '\n';
      }
    }
    write_text_file(out / "percentiles.csv", ptext.str());
    std::cout << ptext.str();

    if (scenario) {
      // Curves are evaluated in file units: cost values are minor units.
      std::ostringstream curves;
      curves << "objective,kind,value,preference\n";
      for (const auto& [id, curve] : scenario->preferences.curves) {
        const double scale = id == ObjectiveId::cost ? kMinorUnits : 1.0;
        const double lo = curve.support_min(), hi = curve.support_max();
        for (std::size_t k = 0; k < args.curve_samples; ++k) {
          const double v = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(args.curve_samples - 1);
          curves << objective_label(id) << ",curve," << format_number(v * scale) << ',' << format_number(curve(v))
                 << '\n';
        }
        bool recorded = false;
        for (ObjectiveId t : table.objectives) recorded |= t == id;
        if (!recorded) continue;
        const auto& values = pct.at(id);
        for (std::size_t k = 0; k < levels.size(); ++k) {
          curves << objective_label(id) << ",P" << format_number(levels[k]) << ',' << format_number(values[k]) << ','
                 << format_number(curve(values[k] / scale)) << '\n';
        }
      }
      write_text_file(out / "preference_curves.csv", curves.str());
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte-Carlo simulation and preference-based optimization of project plans"};
  app.require_subcommand(1);

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Check a scenario file");
  validate->add_option("file", validate_path, "Scenario file")->required();

  RunArgs run_args;
  auto* run_cmd = app.add_subcommand("run", "Run the Monte-Carlo simulation");
  run_cmd->add_option("file", run_args.scenario, "Scenario file")->required();
  run_cmd->add_option("--mode", run_args.mode, "moo or soo:<objective>");
  run_cmd->add_option("--iterations", run_args.iterations, "Iteration count (overrides the file)")
      ->check(CLI::PositiveNumber);
  auto* seed_opt = run_cmd->add_option("--seed", run_args.seed, "Master seed (overrides the file)");
  run_cmd->add_option("--percentiles", run_args.percentiles, "Percentile levels, e.g. 50,80,90")->delimiter(',');
  run_cmd->add_option("--out", run_args.out, "Output directory (default $ODYCON_OUT_DIR or ./odycon_out)");
  run_cmd->add_option("--threads", run_args.threads, "Worker threads (0 = all cores)");
  run_cmd->add_option("--top-k", run_args.top_k, "Combinations listed in the summary");

  ReportArgs report_args;
  auto* report = app.add_subcommand("report", "Emit plot-ready tables from a records file");
  report->add_option("records", report_args.records, "records.csv written by run")->required();
  report->add_option("--top-k", report_args.top_k, "Number of combinations to list");
  report->add_option("--scenario", report_args.scenario, "Scenario file, for preference-curve samples");
  report->add_option("--percentiles", report_args.percentiles, "Percentile levels")->delimiter(',');
  report->add_option("--out", report_args.out, "Output directory (default: next to the records)");
  report->add_option("--curve-samples", report_args.curve_samples, "Points per preference curve")
      ->check(CLI::Range(2, 100000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  if (*validate) return cmd_validate(validate_path);
  if (*run_cmd) {
    run_args.seed_set = seed_opt->count() > 0;
    return cmd_run(run_args);
  }
  if (*report) return cmd_report(report_args);
  return kExitValidation;
}
