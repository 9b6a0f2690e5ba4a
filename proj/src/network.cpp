#include "odycon/network.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace odycon {

namespace {

std::string at(std::string_view section, std::size_t i, std::string_view field = {}) {
  std::ostringstream os;
  os << section << "[" << i << "]";
  if (!field.empty()) os << "." << field;
  return os.str();
}

void check_estimate(ValidationReport& report, const ThreePointEstimate& est, const std::string& where) {
  if (!std::isfinite(est.a) || !std::isfinite(est.m) || !std::isfinite(est.b)) {
    report.error(where, "non-finite three-point value");
    return;
  }
  if (!(est.a <= est.m && est.m <= est.b)) {
    ThreePointEstimate sorted = est;
    sort_estimate(sorted);
    std::ostringstream os;
    os << "triple (" << est.a << ", " << est.m << ", " << est.b << ") violates a <= m <= b; auto-sorted to ("
       << sorted.a << ", " << sorted.m << ", " << sorted.b << ")";
    report.warning(where, os.str());
  }
}

// Names the nodes of one cycle among `remaining` (nodes Kahn could not order).
std::string describe_cycle(const NetworkSpec& spec, const std::unordered_map<ActivityId, std::size_t>& index,
                           const std::vector<bool>& remaining) {
  const std::size_t n = spec.activities.size();
  std::vector<int> state(n, 0);  // 0 new, 1 on stack, 2 done
  std::vector<std::size_t> stack;
  std::vector<std::size_t> cycle;

  std::function<bool(std::size_t)> dfs = [&](std::size_t v) -> bool {
    state[v] = 1;
    stack.push_back(v);
    for (ActivityId pid : spec.activities[v].predecessors) {
      auto it = index.find(pid);
      if (it == index.end() || !remaining[it->second]) continue;
      const std::size_t u = it->second;
      if (state[u] == 1) {
        auto pos = std::find(stack.begin(), stack.end(), u);
        cycle.assign(pos, stack.end());
        return true;
      }
      if (state[u] == 0 && dfs(u)) return true;
    }
    stack.pop_back();
    state[v] = 2;
    return false;
  };

  for (std::size_t v = 0; v < n; ++v) {
    if (remaining[v] && state[v] == 0 && dfs(v)) break;
  }
  // Walked along predecessor links; print in precedence order.
  std::reverse(cycle.begin(), cycle.end());
  std::ostringstream os;
  for (std::size_t k = 0; k < cycle.size(); ++k) os << spec.activities[cycle[k]].id << " -> ";
  if (!cycle.empty()) os << spec.activities[cycle.front()].id;
  return os.str();
}

}  // namespace

ValidationReport validate_network(const NetworkSpec& spec) {
  ValidationReport report;
  const auto& acts = spec.activities;
  if (acts.empty()) {
    report.error("activities", "network has no activities");
    return report;
  }

  std::unordered_map<ActivityId, std::size_t> index;
  for (std::size_t i = 0; i < acts.size(); ++i) {
    if (!index.emplace(acts[i].id, i).second) {
      report.error(at("activities", i, "id"), "duplicate activity id " + std::to_string(acts[i].id));
    }
  }

  for (std::size_t i = 0; i < acts.size(); ++i) {
    const auto& a = acts[i];
    check_estimate(report, a.duration, at("activities", i, "duration"));
    if (std::min({a.duration.a, a.duration.m, a.duration.b}) < 0.0) {
      report.error(at("activities", i, "duration"), "negative activity duration");
    }
    for (ActivityId p : a.predecessors) {
      if (!index.count(p)) {
        report.error(at("activities", i, "predecessors"),
                     "activity " + std::to_string(a.id) + " references unknown predecessor " + std::to_string(p));
      }
    }
  }

  for (std::size_t r = 0; r < spec.risks.size(); ++r) {
    const auto& risk = spec.risks[r];
    check_estimate(report, risk.impact, at("risks", r, "impact"));
    if (!(risk.probability >= 0.0 && risk.probability <= 1.0)) {
      report.error(at("risks", r, "probability"), "occurrence probability outside [0, 1]");
    }
    for (ActivityId id : risk.affected) {
      if (!index.count(id)) {
        report.error(at("risks", r, "activities"), "risk references unknown activity " + std::to_string(id));
      }
    }
  }

  for (std::size_t f = 0; f < spec.shared_factors.size(); ++f) {
    const auto& factor = spec.shared_factors[f];
    check_estimate(report, factor.deviation, at("shared_factors", f, "deviation"));
    for (ActivityId id : factor.related) {
      if (!index.count(id)) {
        report.error(at("shared_factors", f, "activities"),
                     "shared factor references unknown activity " + std::to_string(id));
      }
    }
  }

  for (std::size_t e = 0; e < spec.edge_attributes.size(); ++e) {
    const auto& edge = spec.edge_attributes[e];
    if (!index.count(edge.from) || !index.count(edge.to)) {
      report.error(at("edge_attributes", e), "edge attribute references unknown activity");
    }
  }

  // Kahn over resolvable links; leftover nodes lie on or behind a cycle.
  const std::size_t n = acts.size();
  std::vector<std::size_t> indegree(n, 0);
  std::vector<std::vector<std::size_t>> succs(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (ActivityId p : acts[i].predecessors) {
      auto it = index.find(p);
      if (it == index.end()) continue;
      succs[it->second].push_back(i);
      ++indegree[i];
    }
  }
  std::vector<std::size_t> ready;
  for (std::size_t i = 0; i < n; ++i) {
    if (indegree[i] == 0) ready.push_back(i);
  }
  std::size_t ordered = 0;
  std::vector<bool> remaining(n, true);
  while (!ready.empty()) {
    const std::size_t v = ready.back();
    ready.pop_back();
    remaining[v] = false;
    ++ordered;
    for (std::size_t s : succs[v]) {
      if (--indegree[s] == 0) ready.push_back(s);
    }
  }
  if (ordered != n) {
    report.error("activities", "precedence cycle: " + describe_cycle(spec, index, remaining));
  }
  return report;
}

ProjectNetwork ProjectNetwork::compile(NetworkSpec spec, ValidationReport* report) {
  ValidationReport local = validate_network(spec);
  if (report) report->merge(local);
  if (!local.ok()) throw ValidationError("invalid network:\n" + local.to_string());

  for (auto& a : spec.activities) sort_estimate(a.duration);
  for (auto& r : spec.risks) sort_estimate(r.impact);
  for (auto& f : spec.shared_factors) sort_estimate(f.deviation);

  ProjectNetwork net;
  net.spec_ = std::move(spec);
  const auto& acts = net.spec_.activities;
  const std::size_t n = acts.size();
  for (std::size_t i = 0; i < n; ++i) net.index_.emplace(acts[i].id, i);

  net.preds_.resize(n);
  net.succs_.resize(n);
  std::vector<std::size_t> indegree(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (ActivityId p : acts[i].predecessors) {
      const std::size_t pi = net.index_.at(p);
      net.preds_[i].push_back(pi);
      net.succs_[pi].push_back(i);
      ++indegree[i];
    }
  }
  // Kahn with smallest-index-first so the order is stable and readable.
  std::vector<std::size_t> heap;
  auto cmp = std::greater<std::size_t>();
  for (std::size_t i = 0; i < n; ++i) {
    if (indegree[i] == 0) heap.push_back(i);
  }
  std::make_heap(heap.begin(), heap.end(), cmp);
  while (!heap.empty()) {
    std::pop_heap(heap.begin(), heap.end(), cmp);
    const std::size_t v = heap.back();
    heap.pop_back();
    net.order_.push_back(v);
    for (std::size_t s : net.succs_[v]) {
      if (--indegree[s] == 0) {
        heap.push_back(s);
        std::push_heap(heap.begin(), heap.end(), cmp);
      }
    }
  }

  for (const auto& risk : net.spec_.risks) {
    std::vector<std::size_t> targets;
    for (ActivityId id : risk.affected) targets.push_back(net.index_.at(id));
    net.risk_targets_.push_back(std::move(targets));
  }
  for (const auto& factor : net.spec_.shared_factors) {
    std::vector<std::size_t> targets;
    for (ActivityId id : factor.related) targets.push_back(net.index_.at(id));
    net.factor_targets_.push_back(std::move(targets));
  }
  return net;
}

std::size_t ProjectNetwork::index_of(ActivityId id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw ValidationError("unknown activity id " + std::to_string(id));
  return it->second;
}

Durations realize_durations(const ProjectNetwork& net, RngHandle& rng) {
  Durations d(net.size());
  for (std::size_t i = 0; i < net.size(); ++i) d[i] = sample_beta_pert(net.activities()[i].duration, rng);

  for (std::size_t f = 0; f < net.shared_factors().size(); ++f) {
    const double dev = sample_beta_pert(net.shared_factors()[f].deviation, rng);
    for (std::size_t i : net.factor_targets(f)) d[i] += dev;
  }
  // Occurrence and impact are both drawn for every risk so the stream
  // position does not depend on which risks occur.
  for (std::size_t r = 0; r < net.risks().size(); ++r) {
    const auto& risk = net.risks()[r];
    const bool occurs = sample_risk_occurrence(risk.probability, rng);
    const double impact = sample_beta_pert(risk.impact, rng);
    if (!occurs) continue;
    for (std::size_t i : net.risk_targets(r)) d[i] += impact;
  }
  for (double& v : d) v = std::max(v, 0.0);
  return d;
}

Durations most_likely_durations(const ProjectNetwork& net) {
  Durations d;
  d.reserve(net.size());
  for (const auto& a : net.activities()) d.push_back(a.duration.m);
  return d;
}

double completion_time(const ProjectNetwork& net, const Durations& durations) {
  // Small fixed-size networks; a stack buffer would not pay for itself.
  std::vector<double> finish(net.size(), 0.0);
  double completion = 0.0;
  for (std::size_t v : net.topological_order()) {
    double start = 0.0;
    for (std::size_t p : net.predecessors(v)) start = std::max(start, finish[p]);
    finish[v] = start + durations[v];
    completion = std::max(completion, finish[v]);
  }
  return completion;
}

NetworkRealization forward_pass(const ProjectNetwork& net, const Durations& durations) {
  const std::size_t n = net.size();
  if (durations.size() != n) throw ValidationError("duration vector does not cover every activity");

  NetworkRealization out;
  out.durations = durations;
  out.early_start.assign(n, 0.0);
  out.early_finish.assign(n, 0.0);
  for (std::size_t v : net.topological_order()) {
    double start = 0.0;
    for (std::size_t p : net.predecessors(v)) start = std::max(start, out.early_finish[p]);
    out.early_start[v] = start;
    out.early_finish[v] = start + durations[v];
    out.completion = std::max(out.completion, out.early_finish[v]);
  }

  // Backward pass from the virtual sink.
  std::vector<double> late_finish(n, out.completion);
  const auto order = net.topological_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const std::size_t v = *it;
    for (std::size_t s : net.successors(v)) {
      late_finish[v] = std::min(late_finish[v], late_finish[s] - durations[s]);
    }
  }
  out.total_float.assign(n, 0.0);
  const double tol = 1e-9 * std::max(1.0, out.completion);
  for (std::size_t v : order) {
    out.total_float[v] = late_finish[v] - out.early_finish[v];
    if (std::abs(out.total_float[v]) <= tol) {
      out.total_float[v] = 0.0;
      out.critical_path.push_back(net.activities()[v].id);
    }
  }
  return out;
}

ValidationReport validate_measures(const ProjectNetwork& net, std::vector<ControlMeasure>& measures) {
  ValidationReport report;
  for (std::size_t k = 0; k < measures.size(); ++k) {
    auto& m = measures[k];
    if (!net.contains(m.activity)) {
      report.error(at("measures", k, "activity"),
                   "measure " + m.id + " references unknown activity " + std::to_string(m.activity));
    }
    if (!(m.eta >= 0.0 && m.eta <= 1.0)) report.error(at("measures", k, "eta"), "eta outside [0, 1]");
    check_estimate(report, m.capacity, at("measures", k, "capacity"));
    check_estimate(report, m.cost, at("measures", k, "cost"));
    check_estimate(report, m.nuisance, at("measures", k, "nuisance"));
    if (std::min({m.capacity.a, m.cost.a, m.nuisance.a}) < 0.0) {
      report.error(at("measures", k), "negative capacity, cost or nuisance");
    }
    sort_estimate(m.capacity);
    sort_estimate(m.cost);
    sort_estimate(m.nuisance);
  }
  return report;
}

std::vector<MeasureSample> draw_measure_samples(std::span<const ControlMeasure> measures, RngHandle& rng) {
  std::vector<MeasureSample> out;
  out.reserve(measures.size());
  for (const auto& m : measures) {
    MeasureSample s;
    s.capacity = sample_beta_pert(m.capacity, rng);
    s.cost = sample_beta_pert(m.cost, rng);
    s.nuisance = sample_beta_pert(m.nuisance, rng);
    out.push_back(s);
  }
  return out;
}

MeasureApplication apply_measures(const ProjectNetwork& net, const Durations& durations,
                                  const DecisionVector& allocation,
                                  std::span<const ControlMeasure> measures,
                                  std::span<const MeasureSample> samples) {
  if (allocation.size() != measures.size() || samples.size() != measures.size()) {
    throw ValidationError("allocation, measures and samples differ in length");
  }
  MeasureApplication out{durations, std::vector<double>(measures.size(), 0.0)};
  for (std::size_t k = 0; k < measures.size(); ++k) {
    if (allocation[k] == 0) continue;
    const std::size_t i = net.index_of(measures[k].activity);
    const double reduction = std::min(samples[k].capacity, out.durations[i]);
    out.durations[i] -= reduction;
    out.applied[k] = reduction;
  }
  return out;
}

MeasureApplication apply_measures(const ProjectNetwork& net, const Durations& durations,
                                  const DecisionVector& allocation,
                                  std::span<const ControlMeasure> measures, RngHandle& rng) {
  const auto samples = draw_measure_samples(measures, rng);
  return apply_measures(net, durations, allocation, measures, samples);
}

}  // namespace odycon
