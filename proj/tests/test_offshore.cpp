#include <doctest.h>

#include <numeric>
#include <vector>

#include "odycon/io.hpp"
#include "odycon/objectives.hpp"
#include "odycon/offshore.hpp"
#include "oracles.hpp"

using namespace odycon;

namespace {

std::vector<VesselSpec> fleet_types() {
  return {
      {"small OCV", 0, 3, 8, 47000, 0.7, 30, {1.2, 1.5, 1.8}},
      {"large OCV", 0, 2, 12, 55000, 0.8, 40, {1.4, 1.6, 2.0}},
      {"barge", 0, 2, 16, 35000, 0.5, 35, {2.0, 2.5, 3.0}},
  };
}

OffshoreParams params(int anchors) {
  OffshoreParams p;
  p.total_anchors = anchors;
  p.anchors_per_turbine = 3;
  p.anchor_mass = 10.0;
  p.installation = {0.8, 1.0, 1.2};
  p.risks = {{"weather", {0.5, 1.0, 2.0}, OffshoreOperation::installation, 0.2},
             {"crane", {0.2, 0.4, 0.9}, OffshoreOperation::bunkering, 0.1}};
  return p;
}

}  // namespace

TEST_CASE("single barge with a pre-loaded deck") {
  auto vessels = fleet_types();
  vessels[2].bunkering = ThreePointEstimate::point(2.5);
  OffshoreParams p;
  p.total_anchors = 16;
  p.installation = ThreePointEstimate::point(1.0);
  RngHandle rng(1, 0);
  const auto r = simulate_fleet(DecisionVector{{0, 0, 1}}, p, vessels, rng);
  CHECK(r.completion == 16.0);
  REQUIRE(r.vessels.size() == 1);
  CHECK(r.vessels[0].anchors_installed == 16);
}

TEST_CASE("two identical vessels halve the installation span") {
  auto vessels = fleet_types();
  OffshoreParams p;
  p.total_anchors = 32;
  p.installation = ThreePointEstimate::point(1.0);
  const auto samples = most_likely_samples(p, vessels);
  CHECK(simulate_fleet(DecisionVector{{0, 0, 2}}, p, vessels, samples).completion == 16.0);
  // One barge: 16 installs, one reload of 2.5 days, 16 installs.
  CHECK(simulate_fleet(DecisionVector{{0, 0, 1}}, p, vessels, samples).completion == 34.5);
}

TEST_CASE("empty fleet is infeasible") {
  const auto vessels = fleet_types();
  RngHandle rng(1, 0);
  CHECK_THROWS_AS(simulate_fleet(DecisionVector{{0, 0, 0}}, params(108), vessels, rng), InfeasibleError);
}

TEST_CASE("event simulation matches the step-by-step trace") {
  const auto vessels = fleet_types();
  RngHandle rng(31, 0);
  for (int t = 0; t < 300; ++t) {
    const int anchors = rng.uniform_int(1, 120);
    const auto p = params(anchors);
    std::vector<int> x{rng.uniform_int(0, 3), rng.uniform_int(0, 2), rng.uniform_int(0, 2)};
    if (x[0] + x[1] + x[2] == 0) x[2] = 1;
    const auto samples = draw_offshore_samples(p, vessels, rng);
    const auto got = simulate_fleet(DecisionVector{x}, p, vessels, samples);
    const auto want = oracle::trace_fleet(x, anchors, vessels, samples);
    REQUIRE(got.completion == want.completion);
    REQUIRE(got.vessels.size() == want.finish.size());
    int installed = 0;
    for (std::size_t v = 0; v < got.vessels.size(); ++v) {
      REQUIRE(got.vessels[v].active_duration == want.finish[v]);
      REQUIRE(got.vessels[v].anchors_installed == want.installed[v]);
      installed += got.vessels[v].anchors_installed;
    }
    REQUIRE(installed == anchors);
  }
}

TEST_CASE("a vessel that never gets anchors stays at zero") {
  const auto vessels = fleet_types();
  const auto p = params(5);
  const auto samples = most_likely_samples(p, vessels);
  const auto r = simulate_fleet(DecisionVector{{0, 0, 2}}, p, vessels, samples);
  CHECK(r.vessels[0].anchors_installed == 5);
  CHECK(r.vessels[1].active_duration == 0.0);
  CHECK(r.completion == 5.0);
}

TEST_CASE("fleet utilisation is the product of per-vessel probabilities") {
  const auto vessels = fleet_types();
  CHECK(fleet_utilisation(DecisionVector{{0, 0, 1}}, vessels) == doctest::Approx(0.5));
  CHECK(fleet_utilisation(DecisionVector{{1, 0, 0}}, vessels) == doctest::Approx(0.7));
  CHECK(fleet_utilisation(DecisionVector{{2, 1, 1}}, vessels) == doctest::Approx(0.7 * 0.7 * 0.8 * 0.5));
}

TEST_CASE("validation reports bad vessel data and sorts triples") {
  auto vessels = fleet_types();
  vessels[1].bunkering = {1.6, 2.0, 1.4};
  vessels[0].deck_space = 0;
  auto p = params(10);
  p.risks[0].probability = 2.0;
  const auto report = validate_offshore(p, vessels);
  CHECK(report.error_count() == 2);
  CHECK(report.warning_count() == 1);
  CHECK(vessels[1].bunkering == ThreePointEstimate{1.4, 1.6, 2.0});
}

TEST_CASE("bundled offshore scenario") {
  const auto load = load_scenario(ODYCON_SCENARIO_DIR "/offshore_planning.json");
  REQUIRE(load.scenario);
  CHECK(load.report.warning_count() == 1);
  const auto& c = load.scenario->planning();
  CHECK(c.params.total_anchors == 108);
  CHECK(c.vessels.size() == 3);
}
