#include "odycon/objectives.hpp"

#include <algorithm>
#include <cmath>

namespace odycon {

ValidationReport ControlObjectiveParams::validate() const {
  ValidationReport report;
  if (!(target_duration > 0.0)) report.error("objectives.target_duration", "must be positive");
  if (!(nuisance_scale > 0.0)) report.error("objectives.nuisance_scale", "must be positive");
  if (penalty_per_day < 0.0 || reward_per_day < 0.0 || nuisance_penalty_per_day < 0.0 ||
      nuisance_reward_per_day < 0.0) {
    report.error("objectives", "penalty and reward rates must be non-negative");
  }
  return report;
}

double anchor_unit_cost(double anchor_mass) { return 815.0 * anchor_mass + 40000.0; }

double vessel_day_cost(const FleetRealization& fleet, std::span<const VesselSpec> vessels) {
  double cost = 0.0;
  for (const auto& v : fleet.vessels) cost += vessels[v.type].day_rate * v.active_duration;
  return cost;
}

ObjectiveVector offshore_objectives(const FleetRealization& fleet, const DecisionVector& x,
                                    const OffshoreParams& params, std::span<const VesselSpec> vessels) {
  double emissions = 0.0;
  for (const auto& v : fleet.vessels) emissions += vessels[v.type].emissions_per_day * v.active_duration;

  ObjectiveVector out;
  out.set(ObjectiveId::duration, fleet.completion);
  out.set(ObjectiveId::cost,
          anchor_unit_cost(params.anchor_mass) * params.total_anchors + vessel_day_cost(fleet, vessels));
  out.set(ObjectiveId::fleet, fleet_utilisation(x, vessels));
  out.set(ObjectiveId::emissions, emissions);
  return out;
}

CompletionDeltas completion_deltas(double duration, double target) {
  return {std::max(duration - target, 0.0), std::max(target - duration, 0.0)};
}

double realized_measure_cost(const ControlMeasure& measure, const MeasureSample& sample, double applied) {
  const double use = sample.capacity > 0.0 ? std::clamp(applied / sample.capacity, 0.0, 1.0) : 1.0;
  return sample.cost * ((1.0 - measure.eta) + measure.eta * use);
}

double control_cost(const DecisionVector& allocation, std::span<const ControlMeasure> measures,
                    std::span<const double> applied, std::span<const MeasureSample> samples,
                    const CompletionDeltas& deltas, const ControlObjectiveParams& params) {
  double cost = 0.0;
  for (std::size_t k = 0; k < measures.size(); ++k) {
    if (allocation[k] != 0) cost += realized_measure_cost(measures[k], samples[k], applied[k]);
  }
  return cost + deltas.late * params.penalty_per_day - deltas.early * params.reward_per_day;
}

double control_nuisance(const DecisionVector& allocation, std::span<const MeasureSample> samples,
                        const CompletionDeltas& deltas, const ControlObjectiveParams& params) {
  double total = 0.0;
  double allocated = 0.0;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    total += samples[k].nuisance;
    if (allocation[k] != 0) allocated += samples[k].nuisance;
  }
  const double base = total > 0.0 ? allocated / total * params.nuisance_scale : 0.0;
  return base + deltas.late * params.nuisance_penalty_per_day - deltas.early * params.nuisance_reward_per_day;
}

ObjectiveVector control_objectives(double duration, const DecisionVector& allocation,
                                   std::span<const ControlMeasure> measures, std::span<const double> applied,
                                   std::span<const MeasureSample> samples, const ControlObjectiveParams& params) {
  const auto deltas = completion_deltas(duration, params.target_duration);
  ObjectiveVector out;
  out.set(ObjectiveId::duration, duration);
  out.set(ObjectiveId::cost, control_cost(allocation, measures, applied, samples, deltas, params));
  out.set(ObjectiveId::nuisance, control_nuisance(allocation, samples, deltas, params));
  return out;
}

}  // namespace odycon
