#include "odycon/offshore.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <sstream>

namespace odycon {

namespace {

void check_triple(ValidationReport& report, ThreePointEstimate& est, const std::string& where) {
  if (!std::isfinite(est.a) || !std::isfinite(est.m) || !std::isfinite(est.b)) {
    report.error(where, "non-finite three-point value");
    return;
  }
  if (std::min({est.a, est.m, est.b}) < 0.0) report.error(where, "negative duration");
  const ThreePointEstimate original = est;
  if (sort_estimate(est)) {
    std::ostringstream os;
    os << "triple (" << original.a << ", " << original.m << ", " << original.b
       << ") violates a <= m <= b; auto-sorted to (" << est.a << ", " << est.m << ", " << est.b << ")";
    report.warning(where, os.str());
  }
}

double draw_with_risks(const ThreePointEstimate& base, const std::vector<const OffshoreRisk*>& risks,
                       RngHandle& rng) {
  double d = sample_beta_pert(base, rng);
  for (const OffshoreRisk* risk : risks) {
    const bool occurs = sample_risk_occurrence(risk->probability, rng);
    const double impact = sample_beta_pert(risk->impact, rng);
    if (occurs) d += impact;
  }
  return d;
}

}  // namespace

ValidationReport validate_offshore(OffshoreParams& params, std::vector<VesselSpec>& vessels) {
  ValidationReport report;
  if (params.total_anchors <= 0) report.error("offshore.total_anchors", "must be positive");
  if (params.anchors_per_turbine <= 0) report.error("offshore.anchors_per_turbine", "must be positive");
  if (!(params.anchor_mass > 0.0)) report.error("offshore.anchor_mass", "must be positive");
  check_triple(report, params.installation, "offshore.installation");
  for (std::size_t r = 0; r < params.risks.size(); ++r) {
    auto& risk = params.risks[r];
    const std::string where = "risks[" + std::to_string(r) + "]";
    check_triple(report, risk.impact, where + ".impact");
    if (!(risk.probability >= 0.0 && risk.probability <= 1.0)) {
      report.error(where + ".probability", "occurrence probability outside [0, 1]");
    }
  }
  if (vessels.empty()) report.error("vessels", "no vessel types defined");
  for (std::size_t v = 0; v < vessels.size(); ++v) {
    auto& spec = vessels[v];
    const std::string where = "vessels[" + std::to_string(v) + "]";
    if (spec.lower < 0 || spec.lower > spec.upper) report.error(where + ".bounds", "requires 0 <= lower <= upper");
    if (spec.deck_space < 1) report.error(where + ".deck_space", "must be at least 1");
    if (!(spec.utilisation_probability >= 0.0 && spec.utilisation_probability <= 1.0)) {
      report.error(where + ".utilisation_probability", "outside [0, 1]");
    }
    if (spec.day_rate < 0.0) report.error(where + ".day_rate", "negative");
    if (spec.emissions_per_day < 0.0) report.error(where + ".emissions_per_day", "negative");
    check_triple(report, spec.bunkering, where + ".bunkering");
  }
  return report;
}

OffshoreSamples draw_offshore_samples(const OffshoreParams& params, std::span<const VesselSpec> vessels,
                                      RngHandle& rng) {
  std::vector<const OffshoreRisk*> install_risks, bunker_risks;
  for (const auto& risk : params.risks) {
    (risk.operation == OffshoreOperation::installation ? install_risks : bunker_risks).push_back(&risk);
  }
  const auto n = static_cast<std::size_t>(std::max(params.total_anchors, 0));
  OffshoreSamples out;
  out.installation.reserve(n);
  for (std::size_t k = 0; k < n; ++k) out.installation.push_back(draw_with_risks(params.installation, install_risks, rng));
  // Each call loads at least one anchor, so n calls per type always suffice.
  out.bunkering.resize(vessels.size());
  for (std::size_t t = 0; t < vessels.size(); ++t) {
    out.bunkering[t].reserve(n);
    for (std::size_t k = 0; k < n; ++k) out.bunkering[t].push_back(draw_with_risks(vessels[t].bunkering, bunker_risks, rng));
  }
  return out;
}

OffshoreSamples most_likely_samples(const OffshoreParams& params, std::span<const VesselSpec> vessels) {
  const auto n = static_cast<std::size_t>(std::max(params.total_anchors, 0));
  OffshoreSamples out;
  out.installation.assign(n, params.installation.m);
  for (const auto& v : vessels) out.bunkering.emplace_back(n, v.bunkering.m);
  return out;
}

FleetRealization simulate_fleet(const DecisionVector& fleet, const OffshoreParams& params,
                                std::span<const VesselSpec> vessels, const OffshoreSamples& samples) {
  if (fleet.size() != vessels.size()) throw ValidationError("fleet vector length differs from vessel types");
  int total = 0;
  for (std::size_t t = 0; t < fleet.size(); ++t) {
    if (fleet[t] < 0) throw ValidationError("negative vessel count for " + vessels[t].name);
    total += fleet[t];
  }
  if (total < 1) throw InfeasibleError("fleet size: at least one vessel is required");

  FleetRealization out;
  for (std::size_t t = 0; t < fleet.size(); ++t) {
    for (int c = 0; c < fleet[t]; ++c) out.vessels.push_back({t, 0.0, 0});
  }

  int pool = params.total_anchors;
  std::vector<int> deck(out.vessels.size(), 0);
  for (std::size_t v = 0; v < out.vessels.size(); ++v) {
    deck[v] = std::min(vessels[out.vessels[v].type].deck_space, pool);
    pool -= deck[v];
  }

  std::size_t next_install = 0;
  std::vector<std::size_t> next_bunker(vessels.size(), 0);

  using Event = std::pair<double, std::size_t>;  // (vessel free at, instance)
  std::priority_queue<Event, std::vector<Event>, std::greater<>> queue;
  for (std::size_t v = 0; v < out.vessels.size(); ++v) queue.push({0.0, v});

  while (!queue.empty()) {
    auto [time, v] = queue.top();
    queue.pop();
    auto& vessel = out.vessels[v];
    if (deck[v] > 0) {
      if (next_install >= samples.installation.size()) throw ValidationError("installation samples exhausted");
      time += samples.installation[next_install++];
      --deck[v];
      ++vessel.anchors_installed;
      vessel.active_duration = time;
      queue.push({time, v});
    } else if (pool > 0) {
      auto& j = next_bunker[vessel.type];
      if (j >= samples.bunkering[vessel.type].size()) throw ValidationError("bunkering samples exhausted");
      time += samples.bunkering[vessel.type][j++];
      deck[v] = std::min(vessels[vessel.type].deck_space, pool);
      pool -= deck[v];
      vessel.active_duration = time;
      queue.push({time, v});
    }
    // Empty deck and empty pool: the vessel is finished.
  }

  for (const auto& vessel : out.vessels) out.completion = std::max(out.completion, vessel.active_duration);
  return out;
}

FleetRealization simulate_fleet(const DecisionVector& fleet, const OffshoreParams& params,
                                std::span<const VesselSpec> vessels, RngHandle& rng) {
  return simulate_fleet(fleet, params, vessels, draw_offshore_samples(params, vessels, rng));
}

double fleet_utilisation(const DecisionVector& fleet, std::span<const VesselSpec> vessels) {
  double product = 1.0;
  for (std::size_t t = 0; t < fleet.size(); ++t) product *= std::pow(vessels[t].utilisation_probability, fleet[t]);
  return product;
}

}  // namespace odycon
