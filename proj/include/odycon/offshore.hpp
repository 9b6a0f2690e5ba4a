#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "odycon/errors.hpp"
#include "odycon/sampling.hpp"
#include "odycon/types.hpp"

namespace odycon {

struct VesselSpec {
  std::string name;
  int lower = 0;
  int upper = 0;
  int deck_space = 1;                    // anchors per load
  double day_rate = 0.0;                 // currency per active day
  double utilisation_probability = 0.0;  // chance of better use elsewhere
  double emissions_per_day = 0.0;        // tonnes CO2 per active day
  ThreePointEstimate bunkering;          // days per bunkering call
};

enum class OffshoreOperation { installation, bunkering };

struct OffshoreRisk {
  std::string description;
  ThreePointEstimate impact;  // days
  OffshoreOperation operation = OffshoreOperation::installation;
  double probability = 0.0;
};

struct OffshoreParams {
  int total_anchors = 0;
  int anchors_per_turbine = 1;
  double anchor_mass = 0.0;  // tonnes per anchor
  ThreePointEstimate installation;
  std::vector<OffshoreRisk> risks;
};

/// Checks invariants and auto-sorts misordered triples (warnings).
ValidationReport validate_offshore(OffshoreParams& params, std::vector<VesselSpec>& vessels);

/// Durations frozen for one iteration. Installation k (in global start
/// order) takes installation[k]; the j-th bunkering call made by any vessel
/// of type t takes bunkering[t][j]. Both already include occurring risks,
/// sampled independently per operation instance.
struct OffshoreSamples {
  std::vector<double> installation;
  std::vector<std::vector<double>> bunkering;
};

OffshoreSamples draw_offshore_samples(const OffshoreParams& params, std::span<const VesselSpec> vessels,
                                      RngHandle& rng);

/// Most-likely durations, no risks.
OffshoreSamples most_likely_samples(const OffshoreParams& params, std::span<const VesselSpec> vessels);

struct VesselActivity {
  std::size_t type = 0;          // index into the vessel specs
  double active_duration = 0.0;  // finish time of its last operation
  int anchors_installed = 0;
};

struct FleetRealization {
  double completion = 0.0;
  std::vector<VesselActivity> vessels;  // one per vessel instance, type-major
};

/// Event-driven installation sequence. Every vessel starts loaded with
/// min(deck space, pool) anchors, installs them one at a time, then bunkers
/// min(deck space, pool) more while the shared pool is not empty. Ties in
/// event time go to the lower vessel instance.
FleetRealization simulate_fleet(const DecisionVector& fleet, const OffshoreParams& params,
                                std::span<const VesselSpec> vessels, const OffshoreSamples& samples);

FleetRealization simulate_fleet(const DecisionVector& fleet, const OffshoreParams& params,
                                std::span<const VesselSpec> vessels, RngHandle& rng);

/// Product of p_i^{x_i}.
double fleet_utilisation(const DecisionVector& fleet, std::span<const VesselSpec> vessels);

}  // namespace odycon
