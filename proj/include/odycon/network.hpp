#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "odycon/errors.hpp"
#include "odycon/sampling.hpp"
#include "odycon/types.hpp"

namespace odycon {

using ActivityId = int;

struct Activity {
  ActivityId id = 0;
  std::string description;
  ThreePointEstimate duration;
  std::vector<ActivityId> predecessors;
};

struct RiskEvent {
  int id = 0;
  std::string description;
  ThreePointEstimate impact;
  std::vector<ActivityId> affected;
  double probability = 0.0;
};

/// Common-cause deviation, sampled once per iteration and added to every
/// related activity.
struct SharedUncertaintyFactor {
  int id = 0;
  std::string description;
  ThreePointEstimate deviation;
  std::vector<ActivityId> related;
};

/// Edge attributes (weight, capacity) are carried through ingestion but no
/// scheduling computation consumes them.
struct EdgeAttributes {
  ActivityId from = 0;
  ActivityId to = 0;
  double weight = 0.0;
  double capacity = 0.0;
};

/// Raw network data as ingested, before validation.
struct NetworkSpec {
  std::vector<Activity> activities;
  std::vector<RiskEvent> risks;
  std::vector<SharedUncertaintyFactor> shared_factors;
  std::vector<EdgeAttributes> edge_attributes;
};

/// Reports cycles, dangling references, misordered triples (as auto-sort
/// warnings) and probabilities outside [0, 1]. Never throws.
ValidationReport validate_network(const NetworkSpec& spec);

/// Validated, immutable activity network with a fixed topological order.
/// Activities are addressed by dense index (input order); a virtual
/// zero-duration sink joins all terminal activities.
class ProjectNetwork {
 public:
  /// Auto-sorts misordered triples (recorded as warnings in `report`) and
  /// throws ValidationError when the network has errors.
  static ProjectNetwork compile(NetworkSpec spec, ValidationReport* report = nullptr);

  std::size_t size() const { return spec_.activities.size(); }
  const std::vector<Activity>& activities() const { return spec_.activities; }
  const std::vector<RiskEvent>& risks() const { return spec_.risks; }
  const std::vector<SharedUncertaintyFactor>& shared_factors() const { return spec_.shared_factors; }
  const std::vector<EdgeAttributes>& edge_attributes() const { return spec_.edge_attributes; }

  bool contains(ActivityId id) const { return index_.count(id) != 0; }
  /// Throws ValidationError for an unknown id.
  std::size_t index_of(ActivityId id) const;

  std::span<const std::size_t> topological_order() const { return order_; }
  std::span<const std::size_t> predecessors(std::size_t i) const { return preds_[i]; }
  std::span<const std::size_t> successors(std::size_t i) const { return succs_[i]; }
  std::span<const std::size_t> risk_targets(std::size_t r) const { return risk_targets_[r]; }
  std::span<const std::size_t> factor_targets(std::size_t f) const { return factor_targets_[f]; }

 private:
  NetworkSpec spec_;
  std::unordered_map<ActivityId, std::size_t> index_;
  std::vector<std::size_t> order_;
  std::vector<std::vector<std::size_t>> preds_;
  std::vector<std::vector<std::size_t>> succs_;
  std::vector<std::vector<std::size_t>> risk_targets_;
  std::vector<std::vector<std::size_t>> factor_targets_;
};

/// Realized duration per activity, indexed like ProjectNetwork::activities().
using Durations = std::vector<double>;

/// One realization: base PERT duration per activity plus every shared
/// factor deviation relating to it plus the impact of every occurring risk
/// affecting it, clamped at zero. Each factor and risk is drawn once and
/// applied to all of its activities.
Durations realize_durations(const ProjectNetwork& net, RngHandle& rng);

/// Most-likely durations, no risks or factors.
Durations most_likely_durations(const ProjectNetwork& net);

struct NetworkRealization {
  Durations durations;
  std::vector<double> early_start;
  std::vector<double> early_finish;
  std::vector<double> total_float;
  double completion = 0.0;
  std::vector<ActivityId> critical_path;  // zero-float activities, topological order
};

/// CPM forward and backward pass.
NetworkRealization forward_pass(const ProjectNetwork& net, const Durations& durations);

/// Forward pass only; returns the completion time.
double completion_time(const ProjectNetwork& net, const Durations& durations);

/// A binary-allocatable mitigation action that shortens one activity.
struct ControlMeasure {
  std::string id;
  std::string description;
  ActivityId activity = 0;
  ThreePointEstimate capacity;  // days recovered
  ThreePointEstimate cost;      // currency
  ThreePointEstimate nuisance;  // points
  double eta = 0.0;             // 0 = one-off expense, 1 = proportional to use
};

/// Checks references and eta range; auto-sorts misordered triples.
ValidationReport validate_measures(const ProjectNetwork& net, std::vector<ControlMeasure>& measures);

struct MeasureSample {
  double capacity = 0.0;
  double cost = 0.0;
  double nuisance = 0.0;
};

/// Capacity, cost and nuisance of every measure, in that order per measure.
std::vector<MeasureSample> draw_measure_samples(std::span<const ControlMeasure> measures, RngHandle& rng);

struct MeasureApplication {
  Durations durations;
  std::vector<double> applied;  // per measure; 0 when not allocated
};

/// For each allocated measure, in measure order, reduces its activity by
/// min(sampled capacity, current duration of that activity).
MeasureApplication apply_measures(const ProjectNetwork& net, const Durations& durations,
                                  const DecisionVector& allocation,
                                  std::span<const ControlMeasure> measures,
                                  std::span<const MeasureSample> samples);

/// Same, drawing the measure samples from `rng` first.
MeasureApplication apply_measures(const ProjectNetwork& net, const Durations& durations,
                                  const DecisionVector& allocation,
                                  std::span<const ControlMeasure> measures, RngHandle& rng);

}  // namespace odycon
