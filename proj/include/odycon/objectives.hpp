#pragma once

#include <span>

#include "odycon/errors.hpp"
#include "odycon/network.hpp"
#include "odycon/offshore.hpp"
#include "odycon/types.hpp"

namespace odycon {

/// Completion scheme of the control case.
struct ControlObjectiveParams {
  double target_duration = 0.0;           // T_tar, days
  double penalty_per_day = 0.0;           // P_c, currency per day late
  double reward_per_day = 0.0;            // R_c, currency per day early
  double nuisance_penalty_per_day = 0.0;  // P_n, points per day late
  double nuisance_reward_per_day = 0.0;   // R_n, points per day early
  double nuisance_scale = 10.0;           // S

  ValidationReport validate() const;
};

/// Anchor cost per unit: 815 * M_a + 40,000.
double anchor_unit_cost(double anchor_mass);

/// Sum of R_i * t_i over vessel instances.
double vessel_day_cost(const FleetRealization& fleet, std::span<const VesselSpec> vessels);

/// O_PD, O_C, O_F, O_S of the planning case. The fleet sums run over
/// vessel instances, so x_i * R_i * t_i uses each instance's own t.
ObjectiveVector offshore_objectives(const FleetRealization& fleet, const DecisionVector& x,
                                    const OffshoreParams& params, std::span<const VesselSpec> vessels);

struct CompletionDeltas {
  double late = 0.0;   // max(duration - target, 0)
  double early = 0.0;  // max(target - duration, 0)
};

CompletionDeltas completion_deltas(double duration, double target);

/// Realized measure cost: sampled cost * ((1 - eta) + eta * applied / capacity).
double realized_measure_cost(const ControlMeasure& measure, const MeasureSample& sample, double applied);

/// Allocated measure costs plus late * P_c minus early * R_c.
double control_cost(const DecisionVector& allocation, std::span<const ControlMeasure> measures,
                    std::span<const double> applied, std::span<const MeasureSample> samples,
                    const CompletionDeltas& deltas, const ControlObjectiveParams& params);

/// S * (allocated nuisance / nuisance of all measures) + late * P_n - early * R_n.
/// The base term is 0 when every sampled nuisance is 0.
double control_nuisance(const DecisionVector& allocation, std::span<const MeasureSample> samples,
                        const CompletionDeltas& deltas, const ControlObjectiveParams& params);

/// O_PD, O_C, O_N of the control case for a completed network.
ObjectiveVector control_objectives(double duration, const DecisionVector& allocation,
                                   std::span<const ControlMeasure> measures, std::span<const double> applied,
                                   std::span<const MeasureSample> samples, const ControlObjectiveParams& params);

}  // namespace odycon
