#include <doctest.h>

#include <cmath>
#include <vector>

#include "fixtures.hpp"
#include "odycon/engine.hpp"
#include "odycon/io.hpp"

using namespace odycon;

namespace {

Scenario parse(const std::string& text) {
  auto load = parse_scenario(text);
  INFO(load.report.to_string());
  REQUIRE(load.scenario);
  return *load.scenario;
}

SimulationRecord with_objective(double d, std::vector<int> x = {0}) {
  SimulationRecord r;
  r.objectives.set(ObjectiveId::duration, d);
  r.decision.values = std::move(x);
  return r;
}

}  // namespace

TEST_CASE("one degenerate iteration reproduces the hand trace") {
  const auto s = parse(fixture::kTinyControl);
  const auto records = run(s, OptimizationMode::soo(ObjectiveId::duration));
  REQUIRE(records.size() == 1);
  const auto& r = records[0];
  // 10 + 20 = 30 > 25, so the search runs; the measure cuts 5 days at a full
  // cost of 1000 and the whole nuisance share.
  CHECK(r.unmitigated_duration == 30.0);
  CHECK(r.optimized);
  CHECK(r.decision == DecisionVector{{1}});
  CHECK(r.objectives[ObjectiveId::duration] == 25.0);
  CHECK(r.objectives[ObjectiveId::cost] == doctest::Approx(1000.0));
  CHECK(r.objectives[ObjectiveId::nuisance] == doctest::Approx(10.0));
  CHECK(r.applied_reductions == std::vector<double>{5.0});
  CHECK(r.critical_path == std::vector<ActivityId>{1, 2});
  CHECK(r.score == 25.0);
}

TEST_CASE("no search when the target is met") {
  auto s = parse(fixture::kTinyControl);
  std::get<ControlCase>(s.payload).objectives.target_duration = 30;
  const auto r = run(s, OptimizationMode::moo())[0];
  CHECK_FALSE(r.optimized);
  CHECK(std::isnan(r.score));
  CHECK(r.decision == DecisionVector{{0}});
  CHECK(r.objectives[ObjectiveId::cost] == 0.0);
}

TEST_CASE("cost mode penalizes lateness while scoring only") {
  const auto s = parse(fixture::kTinyControl);
  const auto mode = resolve_mode(s, "soo:cost");
  REQUIRE(mode.penalties.size() == 1);
  CHECK(mode.penalties[0].second == doctest::Approx(10000.0));
  const auto r = run(s, mode)[0];
  // Five late days at 10000 outweigh the 1000 measure.
  CHECK(r.decision == DecisionVector{{1}});
  CHECK(r.objectives[ObjectiveId::cost] == doctest::Approx(1000.0));
  CHECK(r.score == doctest::Approx(1000.0));
  const auto plain = run(s, OptimizationMode::soo(ObjectiveId::cost))[0];
  CHECK(plain.decision == DecisionVector{{0}});
}

TEST_CASE("mode resolution") {
  const auto s = parse(fixture::kTinyControl);
  CHECK(resolve_mode(s, "moo").kind == OptimizationMode::Kind::imap);
  CHECK(resolve_mode(s, "soo:O_N").objective == ObjectiveId::nuisance);
  CHECK_THROWS_AS(resolve_mode(s, "soo:fleet"), ValidationError);
  CHECK_THROWS_AS(resolve_mode(s, "best"), ValidationError);
  ControlObjectiveParams base;
  const auto p = penalized_params(base, OptimizationMode::soo(ObjectiveId::nuisance, OptimizationMode::Direction::minimize,
                                                               {{"nuisance_penalty_per_day", 0.1}}));
  CHECK(p.nuisance_penalty_per_day == 0.1);
  CHECK(p.penalty_per_day == 0.0);
}

TEST_CASE("runs are deterministic and independent of thread count") {
  const auto s = parse(fixture::kTinyPlanning);
  RunOptions one;
  one.threads = 1;
  RunOptions four;
  four.threads = 4;
  const auto a = run(s, OptimizationMode::moo(), one);
  const auto b = run(s, OptimizationMode::moo(), four);
  REQUIRE(a.size() == 20);
  CHECK(a == b);
  for (const auto& r : a) {
    CHECK(check_constraints(r.decision, s.space).feasible);
    CHECK(r.optimized);
    CHECK(r.vessel_cost > 0.0);
  }
  RunOptions other = one;
  other.seed = 4;
  CHECK_FALSE(run(s, OptimizationMode::moo(), other) == a);
}

TEST_CASE("iteration failures name the first failing index") {
  auto s = parse(fixture::kTinyPlanning);
  s.space.min_total = 5;  // more vessels than the bounds allow
  try {
    run(s, OptimizationMode::moo());
    FAIL("expected an error");
  } catch (const IterationError& e) {
    CHECK(e.iteration() == 0);
  }
}

TEST_CASE("percentiles") {
  CHECK(percentile({10, 20}, 50) == 15.0);
  CHECK(percentile({3, 1, 2}, 0) == 1.0);
  CHECK(percentile({3, 1, 2}, 100) == 3.0);
  CHECK(percentile({1, 2, 3, 4}, 80) == doctest::Approx(3.4));
  CHECK_THROWS_AS(percentile({}, 50), ValidationError);
  CHECK_THROWS_AS(percentile({1}, 120), ValidationError);

  std::vector<SimulationRecord> constant(5, with_objective(42));
  const auto p = percentiles(constant, {10, 50, 90}, {ObjectiveId::duration});
  CHECK(p.at(ObjectiveId::duration) == std::vector<double>{42, 42, 42});
  CHECK_THROWS_AS(p.at(ObjectiveId::cost), ValidationError);
  CHECK_THROWS_AS(percentiles({}, {50}, {ObjectiveId::duration}), ValidationError);
}

TEST_CASE("criticality index") {
  std::vector<SimulationRecord> same(10, with_objective(1, {1, 0, 2}));
  auto c = criticality(same, {"a", "b", "c"});
  REQUIRE(c.combinations.size() == 1);
  CHECK(c.combinations[0].second == 1.0);
  CHECK(c.marginals[2].at(2) == 1.0);

  std::vector<SimulationRecord> half;
  for (int i = 0; i < 1000; ++i) half.push_back(with_objective(1, {i % 2, 1}));
  half.push_back(with_objective(1, {0, 0}));
  c = criticality(half);
  CHECK(c.names == std::vector<std::string>{"x1", "x2"});
  REQUIRE(c.combinations.size() == 3);
  CHECK(c.combinations[0].first == DecisionVector{{0, 1}});
  CHECK(c.combinations[0].second == doctest::Approx(500.0 / 1001.0));
  CHECK(c.combinations[1].first == DecisionVector{{1, 1}});
  CHECK(c.top(1).size() == 1);
  CHECK(c.top(10).size() == 3);
  CHECK(c.marginals[0].at(0) + c.marginals[0].at(1) == doctest::Approx(1.0));
}
