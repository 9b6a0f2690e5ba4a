#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "odycon/network.hpp"
#include "odycon/objectives.hpp"
#include "odycon/offshore.hpp"
#include "odycon/optimizer.hpp"
#include "odycon/preference.hpp"
#include "odycon/types.hpp"

namespace odycon {

/// Control case: allocate mitigation measures when the realized network
/// overshoots the target.
struct ControlCase {
  ProjectNetwork network;
  std::vector<ControlMeasure> measures;
  ControlObjectiveParams objectives;
  /// Stretch the upper end of a beta-pert duration curve to the realized
  /// unmitigated duration when that exceeds it.
  bool adaptive_duration_curve = true;
};

/// Planning case: choose a vessel fleet for the anchor installation.
struct PlanningCase {
  OffshoreParams params;
  std::vector<VesselSpec> vessels;
};

struct Scenario {
  std::string name;
  std::variant<ControlCase, PlanningCase> payload;
  WeightScheme weights;
  PreferenceModel preferences;
  DecisionSpace space;
  GaConfig ga;
  /// Single-objective modes declared by the file, with their penalty terms.
  std::vector<OptimizationMode> soo_modes;
  std::size_t iterations = 1000;
  std::uint64_t seed = 1;
  std::vector<double> percentiles{50.0, 80.0, 90.0};
  /// Non-fatal findings from ingestion (auto-sorted triples and so on).
  std::vector<std::string> warnings;

  bool is_control() const { return std::holds_alternative<ControlCase>(payload); }
  const ControlCase& control() const { return std::get<ControlCase>(payload); }
  const PlanningCase& planning() const { return std::get<PlanningCase>(payload); }
  /// Objectives produced by this kind of case.
  std::vector<ObjectiveId> objectives() const;
};

/// Cross-checks the assembled scenario (weights, curves, space dimensions,
/// GA settings, declared modes).
ValidationReport validate_scenario(const Scenario& scenario);

/// Resolves "moo" or "soo:<objective>" against the scenario. A single mode
/// declared in the file contributes its direction and penalties.
OptimizationMode resolve_mode(const Scenario& scenario, std::string_view text);

/// Control parameters with a single mode's penalty terms applied.
ControlObjectiveParams penalized_params(const ControlObjectiveParams& base, const OptimizationMode& mode);

struct SimulationRecord {
  std::size_t iteration = 0;
  DecisionVector decision;
  ObjectiveVector objectives;
  double score = 0.0;  // P* or the penalized scalar; NaN when not optimized
  bool optimized = false;
  double unmitigated_duration = NAN;       // control case
  std::vector<double> applied_reductions;  // control case, per measure
  std::vector<ActivityId> critical_path;   // control case, after mitigation
  double vessel_cost = NAN;                // planning case, sum of R_i t_i

  bool operator==(const SimulationRecord&) const;
};

struct RunOptions {
  std::optional<std::size_t> iterations;
  std::optional<std::uint64_t> seed;
  std::optional<GaConfig> ga;
  /// 0 selects std::thread::hardware_concurrency().
  std::size_t threads = 0;
};

/// One Monte-Carlo iteration. Samples come from stream `iteration` of the
/// seed; the search uses a substream so the sampling sequence is fixed.
SimulationRecord simulate_iteration(const Scenario& scenario, const OptimizationMode& mode, const GaConfig& ga,
                                    std::uint64_t seed, std::size_t iteration);

/// All iterations, ordered by index. Errors are rethrown as IterationError
/// for the lowest failing index.
std::vector<SimulationRecord> run(const Scenario& scenario, const OptimizationMode& mode,
                                  const RunOptions& options = {});

/// Empirical quantile at `level` percent, linear between order statistics
/// (inclusive convention). Throws on empty input.
double percentile(std::vector<double> values, double level);

struct PercentileSummary {
  std::vector<double> levels;
  /// objective -> value per level
  std::vector<std::pair<ObjectiveId, std::vector<double>>> values;

  const std::vector<double>& at(ObjectiveId id) const;
};

PercentileSummary percentiles(const std::vector<SimulationRecord>& records, const std::vector<double>& levels,
                              const std::vector<ObjectiveId>& objectives);

struct CriticalityIndex {
  std::vector<std::string> names;
  /// Per variable: value -> fraction of records.
  std::vector<std::map<int, double>> marginals;
  /// Distinct vectors with their fraction, most frequent first, ties by vector.
  std::vector<std::pair<DecisionVector, double>> combinations;

  std::vector<std::pair<DecisionVector, double>> top(std::size_t k) const;
};

CriticalityIndex criticality(const std::vector<SimulationRecord>& records, std::vector<std::string> names = {});

}  // namespace odycon
