// Small hand-checkable scenario documents shared by the tests.
#pragma once

#include <string>

namespace fixture {

// Two activities in a chain, 10 + 20 days against a 25-day target, and one
// measure that recovers 5 days of the second activity.
inline const std::string kTinyControl = R"({
  "schema_version": 1,
  "meta": {"name": "tiny control", "kind": "control"},
  "activities": [
    {"id": 1, "description": "first", "duration": [10, 10, 10], "predecessors": []},
    {"id": 2, "description": "second", "duration": [20, 20, 20], "predecessors": [1]}
  ],
  "measures": [
    {"id": "x1", "description": "overtime", "activity": 2, "capacity": [5, 5, 5],
     "cost_minor": [100000, 100000, 100000], "nuisance": [1, 1, 1], "eta": 0.5}
  ],
  "objectives": {"target_duration": 25},
  "preference_curves": [
    {"objective": "duration", "shape": "beta_pert", "min": 10, "mode": 25, "max": 40},
    {"objective": "cost", "shape": "piecewise_linear", "knots": [[0, 100], [100000, 0]]},
    {"objective": "nuisance", "shape": "piecewise_linear", "knots": [[0, 100], [10, 0]]}
  ],
  "weights": {"stakeholders": [
    {"name": "owner", "weight": 1.0, "objectives": {"duration": 0.5, "cost": 0.25, "nuisance": 0.25}}
  ]},
  "ga": {"population": 10, "generations": 5},
  "soo_modes": [{"objective": "cost", "penalties": {"penalty_per_day_minor": 1000000}}],
  "mcs": {"iterations": 1, "seed": 7}
})";

// One barge type and one small vessel type with random durations.
inline const std::string kTinyPlanning = R"({
  "schema_version": 1,
  "meta": {"name": "tiny planning", "kind": "planning"},
  "vessels": [
    {"name": "small", "lower": 0, "upper": 2, "deck_space": 4, "day_rate_minor": 4000000,
     "utilisation_probability": 0.7, "emissions_per_day": 30, "bunkering": [1, 1.5, 2]},
    {"name": "barge", "lower": 0, "upper": 2, "deck_space": 8, "day_rate_minor": 3000000,
     "utilisation_probability": 0.5, "emissions_per_day": 35, "bunkering": [2, 2.5, 3]}
  ],
  "offshore": {"total_anchors": 24, "anchors_per_turbine": 3, "anchor_mass": 10,
               "installation": [0.8, 1.0, 1.2],
               "risks": [{"description": "weather", "impact": [0.5, 1, 1.5], "operation": "installation",
                          "probability": 0.2}]},
  "preference_curves": [
    {"objective": "duration", "shape": "beta_pert", "min": 5, "mode": 12, "max": 30},
    {"objective": "cost", "shape": "piecewise_linear", "knots": [[0, 100], [300000000, 0]]},
    {"objective": "fleet", "shape": "piecewise_linear", "knots": [[0, 100], [1, 0]]},
    {"objective": "emissions", "shape": "piecewise_linear", "knots": [[0, 100], [2000, 0]]}
  ],
  "weights": {"stakeholders": [
    {"name": "owner", "weight": 0.5, "objectives": {"duration": 0.6, "emissions": 0.4}},
    {"name": "contractor", "weight": 0.5, "objectives": {"cost": 0.7, "fleet": 0.3}}
  ]},
  "ga": {"population": 12, "generations": 10},
  "mcs": {"iterations": 20, "seed": 3}
})";

}  // namespace fixture
