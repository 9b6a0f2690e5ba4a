#include "odycon/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>
#include <unordered_map>

namespace odycon {

namespace {

constexpr std::string_view kPenaltyNames[] = {"penalty_per_day", "reward_per_day", "nuisance_penalty_per_day",
                                              "nuisance_reward_per_day"};

bool known_penalty(std::string_view name) {
  return std::find(std::begin(kPenaltyNames), std::end(kPenaltyNames), name) != std::end(kPenaltyNames);
}

bool same_values(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

SimulationRecord control_iteration(const Scenario& scenario, const ControlCase& c, const OptimizationMode& mode,
                                   const GaConfig& ga, std::uint64_t seed, std::size_t iteration) {
  const ProjectNetwork& net = c.network;
  RngHandle rng(seed, iteration);
  const Durations durations = realize_durations(net, rng);
  const auto samples = draw_measure_samples(c.measures, rng);
  const auto unmitigated = forward_pass(net, durations);

  SimulationRecord rec;
  rec.iteration = iteration;
  rec.unmitigated_duration = unmitigated.completion;
  rec.score = NAN;

  if (!(unmitigated.completion > c.objectives.target_duration)) {
    rec.decision.values.assign(c.measures.size(), 0);
    rec.applied_reductions.assign(c.measures.size(), 0.0);
    rec.objectives = control_objectives(unmitigated.completion, rec.decision, c.measures, rec.applied_reductions,
                                        samples, c.objectives);
    rec.critical_path = unmitigated.critical_path;
    return rec;
  }

  PreferenceModel model = scenario.preferences;
  if (c.adaptive_duration_curve) {
    PreferenceCurve* curve = model.find_curve(ObjectiveId::duration);
    if (curve && curve->shape() == PreferenceCurve::Shape::beta_pert && unmitigated.completion > curve->support_max()) {
      *curve = PreferenceCurve::beta_pert(curve->support_min(), curve->mode(), unmitigated.completion,
                                          curve->knot_count());
    }
  }

  const ControlObjectiveParams scoring =
      mode.kind == OptimizationMode::Kind::single ? penalized_params(c.objectives, mode) : c.objectives;
  const Evaluator evaluate = [&](const DecisionVector& x) {
    const auto app = apply_measures(net, durations, x, c.measures, samples);
    return control_objectives(completion_time(net, app.durations), x, c.measures, app.applied, samples, scoring);
  };
  RngHandle search_rng = rng.substream(1);
  const auto result = optimize(scenario.space, evaluate, model, mode, ga, search_rng);

  const auto app = apply_measures(net, durations, result.best, c.measures, samples);
  const auto mitigated = forward_pass(net, app.durations);
  rec.decision = result.best;
  rec.optimized = true;
  rec.score = result.score;
  rec.applied_reductions = app.applied;
  rec.critical_path = mitigated.critical_path;
  rec.objectives =
      control_objectives(mitigated.completion, result.best, c.measures, app.applied, samples, c.objectives);
  return rec;
}

SimulationRecord planning_iteration(const Scenario& scenario, const PlanningCase& p, const OptimizationMode& mode,
                                    const GaConfig& ga, std::uint64_t seed, std::size_t iteration) {
  RngHandle rng(seed, iteration);
  const auto samples = draw_offshore_samples(p.params, p.vessels, rng);
  const Evaluator evaluate = [&](const DecisionVector& x) {
    return offshore_objectives(simulate_fleet(x, p.params, p.vessels, samples), x, p.params, p.vessels);
  };
  RngHandle search_rng = rng.substream(1);
  const auto result = optimize(scenario.space, evaluate, scenario.preferences, mode, ga, search_rng);

  const auto fleet = simulate_fleet(result.best, p.params, p.vessels, samples);
  SimulationRecord rec;
  rec.iteration = iteration;
  rec.decision = result.best;
  rec.optimized = true;
  rec.score = result.score;
  rec.objectives = offshore_objectives(fleet, result.best, p.params, p.vessels);
  rec.vessel_cost = vessel_day_cost(fleet, p.vessels);
  return rec;
}

}  // namespace

std::vector<ObjectiveId> Scenario::objectives() const {
  if (is_control()) return {ObjectiveId::duration, ObjectiveId::cost, ObjectiveId::nuisance};
  return {ObjectiveId::duration, ObjectiveId::cost, ObjectiveId::fleet, ObjectiveId::emissions};
}

ValidationReport validate_scenario(const Scenario& scenario) {
  ValidationReport report;
  if (scenario.iterations < 1) report.error("mcs.iterations", "must be at least 1");
  for (double p : scenario.percentiles) {
    if (!(p >= 0.0 && p <= 100.0)) report.error("mcs.percentiles", "percentile outside [0, 100]");
  }
  report.merge(scenario.weights.validate());
  report.merge(scenario.preferences.validate());
  report.merge(scenario.ga.validate());

  const auto produced = scenario.objectives();
  auto produces = [&](ObjectiveId id) { return std::find(produced.begin(), produced.end(), id) != produced.end(); };
  for (const auto& c : scenario.preferences.criteria) {
    if (!produces(c.objective)) {
      report.error("weights", "objective '" + std::string(objective_key(c.objective)) + "' is not produced by this case");
    }
  }

  const DecisionSpace& space = scenario.space;
  const std::size_t n = scenario.is_control() ? scenario.control().measures.size() : scenario.planning().vessels.size();
  if (space.size() != n || space.upper.size() != n) {
    report.error("constraints", "decision space does not match the number of decision variables");
  }
  for (std::size_t i = 0; i < space.size() && i < space.upper.size(); ++i) {
    if (space.lower[i] > space.upper[i]) report.error("constraints", "lower bound above upper bound");
  }
  for (std::size_t k = 0; k < space.linear.size(); ++k) {
    if (space.linear[k].coefficients.size() != n) {
      report.error("constraints.linear[" + std::to_string(k) + "]", "coefficient count does not match variables");
    }
  }
  for (const auto& b : space.objective_bounds) {
    if (!produces(b.objective)) report.error("constraints.objective_bounds", "objective not produced by this case");
  }

  for (std::size_t k = 0; k < scenario.soo_modes.size(); ++k) {
    const auto& m = scenario.soo_modes[k];
    const std::string where = "soo_modes[" + std::to_string(k) + "]";
    if (!produces(m.objective)) report.error(where, "objective not produced by this case");
    for (const auto& [name, value] : m.penalties) {
      if (!known_penalty(name)) report.error(where + ".penalties", "unknown penalty term '" + name + "'");
      if (!(value >= 0.0)) report.error(where + ".penalties", "penalty '" + name + "' must be non-negative");
      if (!scenario.is_control()) report.error(where + ".penalties", "penalty terms apply to the control case only");
    }
  }

  if (scenario.is_control()) report.merge(scenario.control().objectives.validate());
  return report;
}

OptimizationMode resolve_mode(const Scenario& scenario, std::string_view text) {
  if (text == "moo") return OptimizationMode::moo();
  if (!text.starts_with("soo:")) throw ValidationError("unknown mode '" + std::string(text) + "', expected moo or soo:<objective>");
  const auto id = parse_objective(text.substr(4));
  if (!id) throw ValidationError("unknown objective in mode '" + std::string(text) + "'");
  const auto produced = scenario.objectives();
  if (std::find(produced.begin(), produced.end(), *id) == produced.end()) {
    throw ValidationError("objective '" + std::string(objective_key(*id)) + "' is not produced by this scenario");
  }
  for (const auto& m : scenario.soo_modes) {
    if (m.objective == *id) return m;
  }
  return OptimizationMode::soo(*id);
}

ControlObjectiveParams penalized_params(const ControlObjectiveParams& base, const OptimizationMode& mode) {
  ControlObjectiveParams p = base;
  for (const auto& [name, value] : mode.penalties) {
    if (name == "penalty_per_day") p.penalty_per_day = value;
    else if (name == "reward_per_day") p.reward_per_day = value;
    else if (name == "nuisance_penalty_per_day") p.nuisance_penalty_per_day = value;
    else if (name == "nuisance_reward_per_day") p.nuisance_reward_per_day = value;
    else throw ValidationError("unknown penalty term '" + name + "'");
  }
  return p;
}

bool SimulationRecord::operator==(const SimulationRecord& o) const {
  if (iteration != o.iteration || decision != o.decision || !(objectives == o.objectives) ||
      optimized != o.optimized || critical_path != o.critical_path) {
    return false;
  }
  if (!same_values(score, o.score) || !same_values(unmitigated_duration, o.unmitigated_duration) ||
      !same_values(vessel_cost, o.vessel_cost) || applied_reductions.size() != o.applied_reductions.size()) {
    return false;
  }
  for (std::size_t k = 0; k < applied_reductions.size(); ++k) {
    if (applied_reductions[k] != o.applied_reductions[k]) return false;
  }
  return true;
}

SimulationRecord simulate_iteration(const Scenario& scenario, const OptimizationMode& mode, const GaConfig& ga,
                                    std::uint64_t seed, std::size_t iteration) {
  if (scenario.is_control()) return control_iteration(scenario, scenario.control(), mode, ga, seed, iteration);
  return planning_iteration(scenario, scenario.planning(), mode, ga, seed, iteration);
}

std::vector<SimulationRecord> run(const Scenario& scenario, const OptimizationMode& mode, const RunOptions& options) {
  const std::size_t n = options.iterations.value_or(scenario.iterations);
  const std::uint64_t seed = options.seed.value_or(scenario.seed);
  const GaConfig ga = options.ga.value_or(scenario.ga);
  if (n < 1) throw ValidationError("iteration count must be at least 1");

  std::size_t threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::clamp<std::size_t>(threads, 1, n);

  std::vector<SimulationRecord> records(n);
  std::atomic<std::size_t> next{0};
  std::mutex failure_mutex;
  std::size_t failed_at = n;
  std::string failure;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      {
        std::lock_guard lock(failure_mutex);
        if (failed_at < i) return;
      }
      try {
        records[i] = simulate_iteration(scenario, mode, ga, seed, i);
      } catch (const std::exception& e) {
        std::lock_guard lock(failure_mutex);
        if (i < failed_at) {
          failed_at = i;
          failure = e.what();
        }
      }
    }
  };

  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failed_at < n) throw IterationError(failed_at, failure);
  return records;
}

double percentile(std::vector<double> values, double level) {
  if (values.empty()) throw ValidationError("percentile of an empty sample");
  if (!(level >= 0.0 && level <= 100.0)) throw ValidationError("percentile level outside [0, 100]");
  std::sort(values.begin(), values.end());
  const double h = (static_cast<double>(values.size()) - 1.0) * level / 100.0;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = h - static_cast<double>(lo);
  if (frac == 0.0) return values[lo];
  return values[lo] + frac * (values[hi] - values[lo]);
}

const std::vector<double>& PercentileSummary::at(ObjectiveId id) const {
  for (const auto& [obj, v] : values) {
    if (obj == id) return v;
  }
  throw ValidationError("no percentiles for objective " + std::string(objective_key(id)));
}

PercentileSummary percentiles(const std::vector<SimulationRecord>& records, const std::vector<double>& levels,
                              const std::vector<ObjectiveId>& objectives) {
  if (records.empty()) throw ValidationError("percentiles need at least one record");
  PercentileSummary out;
  out.levels = levels;
  for (ObjectiveId id : objectives) {
    std::vector<double> column;
    column.reserve(records.size());
    for (const auto& r : records) column.push_back(r.objectives[id]);
    std::sort(column.begin(), column.end());
    std::vector<double> v;
    for (double level : levels) v.push_back(percentile(column, level));
    out.values.emplace_back(id, std::move(v));
  }
  return out;
}

std::vector<std::pair<DecisionVector, double>> CriticalityIndex::top(std::size_t k) const {
  return {combinations.begin(), combinations.begin() + static_cast<std::ptrdiff_t>(std::min(k, combinations.size()))};
}

CriticalityIndex criticality(const std::vector<SimulationRecord>& records, std::vector<std::string> names) {
  if (records.empty()) throw ValidationError("criticality needs at least one record");
  const std::size_t dim = records.front().decision.size();
  CriticalityIndex out;
  if (names.size() != dim) {
    names.clear();
    for (std::size_t i = 0; i < dim; ++i) names.push_back("x" + std::to_string(i + 1));
  }
  out.names = std::move(names);
  out.marginals.resize(dim);

  const double total = static_cast<double>(records.size());
  std::unordered_map<DecisionVector, std::size_t, DecisionVectorHash> counts;
  std::vector<std::map<int, std::size_t>> marginal_counts(dim);
  for (const auto& r : records) {
    if (r.decision.size() != dim) throw ValidationError("records have decision vectors of different length");
    ++counts[r.decision];
    for (std::size_t i = 0; i < dim; ++i) ++marginal_counts[i][r.decision[i]];
  }
  for (std::size_t i = 0; i < dim; ++i) {
    for (const auto& [value, count] : marginal_counts[i]) out.marginals[i][value] = static_cast<double>(count) / total;
  }
  std::vector<std::pair<DecisionVector, std::size_t>> sorted(counts.begin(), counts.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  for (auto& [x, count] : sorted) out.combinations.emplace_back(std::move(x), static_cast<double>(count) / total);
  return out;
}

}  // namespace odycon
