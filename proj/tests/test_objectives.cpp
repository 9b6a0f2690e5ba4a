#include <doctest.h>

#include <vector>

#include "odycon/objectives.hpp"

using namespace odycon;

namespace {

ControlMeasure measure(double cost, double eta = 0.5) {
  return {"x", "", 1, ThreePointEstimate::point(10), ThreePointEstimate::point(cost), ThreePointEstimate::point(1),
          eta};
}

std::vector<VesselSpec> vessels() {
  return {
      {"small OCV", 0, 3, 8, 47000, 0.7, 30, {1.2, 1.5, 1.8}},
      {"large OCV", 0, 2, 12, 55000, 0.8, 40, {1.4, 1.6, 2.0}},
      {"barge", 0, 2, 16, 35000, 0.5, 35, {2.0, 2.5, 3.0}},
  };
}

}  // namespace

TEST_CASE("completion deltas") {
  auto d = completion_deltas(1466, 1466);
  CHECK(d.late == 0.0);
  CHECK(d.early == 0.0);
  d = completion_deltas(1470, 1466);
  CHECK(d.late == 4.0);
  CHECK(d.early == 0.0);
  d = completion_deltas(1400, 1466);
  CHECK(d.late == 0.0);
  CHECK(d.early == 66.0);
}

TEST_CASE("realized measure cost interpolates on use") {
  const auto m = measure(120000);
  const MeasureSample s{10, 120000, 1};
  CHECK(realized_measure_cost(m, s, 10) == doctest::Approx(120000));
  CHECK(realized_measure_cost(m, s, 5) == doctest::Approx(90000));
  CHECK(realized_measure_cost(measure(120000, 0.0), s, 0) == doctest::Approx(120000));
  CHECK(realized_measure_cost(measure(120000, 1.0), s, 2.5) == doctest::Approx(30000));
}

TEST_CASE("control cost with penalties and rewards") {
  const std::vector<ControlMeasure> ms{measure(120000), measure(50000)};
  const std::vector<MeasureSample> s{{10, 120000, 1}, {10, 50000, 3}};
  ControlObjectiveParams p;
  p.target_duration = 100;
  CHECK(control_cost(DecisionVector{{0, 0}}, ms, std::vector<double>{0, 0}, s, {}, p) == 0.0);
  CHECK(control_cost(DecisionVector{{1, 0}}, ms, std::vector<double>{10, 0}, s, {}, p) == doctest::Approx(120000));
  CHECK(control_cost(DecisionVector{{1, 0}}, ms, std::vector<double>{5, 0}, s, {}, p) == doctest::Approx(90000));
  p.penalty_per_day = 10000;
  p.reward_per_day = 1000;
  CHECK(control_cost(DecisionVector{{0, 0}}, ms, std::vector<double>{0, 0}, s, {3, 0}, p) == doctest::Approx(30000));
  CHECK(control_cost(DecisionVector{{0, 0}}, ms, std::vector<double>{0, 0}, s, {0, 4}, p) == doctest::Approx(-4000));
}

TEST_CASE("control nuisance") {
  const std::vector<MeasureSample> s{{10, 1, 1}, {10, 1, 3}};
  ControlObjectiveParams p;
  CHECK(control_nuisance(DecisionVector{{0, 0}}, s, {}, p) == 0.0);
  CHECK(control_nuisance(DecisionVector{{1, 1}}, s, {}, p) == doctest::Approx(10.0));
  CHECK(control_nuisance(DecisionVector{{0, 1}}, s, {}, p) == doctest::Approx(7.5));
  p.nuisance_penalty_per_day = 0.1;
  CHECK(control_nuisance(DecisionVector{{1, 1}}, s, {10, 0}, p) == doctest::Approx(11.0));
  const std::vector<MeasureSample> quiet{{10, 1, 0}, {10, 1, 0}};
  CHECK(control_nuisance(DecisionVector{{1, 1}}, quiet, {}, ControlObjectiveParams{}) == 0.0);
}

TEST_CASE("control objective vector") {
  const std::vector<ControlMeasure> ms{measure(120000)};
  const std::vector<MeasureSample> s{{10, 120000, 2}};
  ControlObjectiveParams p;
  p.target_duration = 1466;
  const auto o = control_objectives(1470, DecisionVector{{1}}, ms, std::vector<double>{10}, s, p);
  CHECK(o[ObjectiveId::duration] == 1470.0);
  CHECK(o[ObjectiveId::cost] == doctest::Approx(120000));
  CHECK(o[ObjectiveId::nuisance] == doctest::Approx(10.0));
  CHECK_FALSE(o.has(ObjectiveId::fleet));
}

TEST_CASE("control parameter validation") {
  ControlObjectiveParams p;
  p.target_duration = 1466;
  CHECK(p.validate().ok());
  p.penalty_per_day = -1;
  CHECK_FALSE(p.validate().ok());
}

TEST_CASE("anchor cost") { CHECK(anchor_unit_cost(10) * 108 == doctest::Approx(5200200.0)); }

TEST_CASE("offshore objectives for a single barge") {
  const auto v = vessels();
  OffshoreParams p;
  p.total_anchors = 108;
  p.anchor_mass = 10;
  FleetRealization f;
  f.completion = 20;
  f.vessels = {{2, 20.0, 108}};
  const DecisionVector x{{0, 0, 1}};
  CHECK(vessel_day_cost(f, v) == doctest::Approx(700000));
  const auto o = offshore_objectives(f, x, p, v);
  CHECK(o[ObjectiveId::duration] == 20.0);
  CHECK(o[ObjectiveId::emissions] == doctest::Approx(700));
  CHECK(o[ObjectiveId::fleet] == doctest::Approx(0.5));
  CHECK(o[ObjectiveId::cost] == doctest::Approx(5200200.0 + 700000));
}

TEST_CASE("per-instance active days enter the sums") {
  const auto v = vessels();
  OffshoreParams p;
  p.total_anchors = 10;
  FleetRealization f;
  f.completion = 12;
  f.vessels = {{0, 12.0, 6}, {0, 5.0, 4}};
  const auto o = offshore_objectives(f, DecisionVector{{2, 0, 0}}, p, v);
  CHECK(o[ObjectiveId::emissions] == doctest::Approx(30.0 * 17));
  CHECK(vessel_day_cost(f, v) == doctest::Approx(47000.0 * 17));
  CHECK(o[ObjectiveId::fleet] == doctest::Approx(0.49));
}
