#include "odycon/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace odycon {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kEqualityTolerance = 1e-9;

bool satisfied(ConstraintKind kind, double g) {
  switch (kind) {
    case ConstraintKind::less_equal: return g <= 0.0;
    case ConstraintKind::greater_equal: return g >= 0.0;
    case ConstraintKind::equal: return std::abs(g) <= kEqualityTolerance;
  }
  return false;
}

struct Entry {
  bool feasible = false;
  ObjectiveVector objectives;
  std::vector<double> preferences;  // IMAP mode only
  double fitness = kNegInf;         // single mode: sign-adjusted scalar
};

class Search {
 public:
  Search(const DecisionSpace& space, const Evaluator& evaluate, const PreferenceModel& model,
         const OptimizationMode& mode, const GaConfig& cfg, RngHandle& rng)
      : space_(space), evaluate_(evaluate), model_(model), mode_(mode), cfg_(cfg), rng_(rng),
        weights_(model.weights()) {
    mutation_ = cfg.mutation >= 0.0 ? cfg.mutation : 1.0 / static_cast<double>(std::max<std::size_t>(1, space.size()));
  }

  OptimizationResult run();

 private:
  bool imap() const { return mode_.kind == OptimizationMode::Kind::imap; }

  const Entry& lookup(const DecisionVector& x);
  DecisionVector random_member();
  void mutate(DecisionVector& x);
  DecisionVector crossover(const DecisionVector& a, const DecisionVector& b);
  std::size_t tournament(const std::vector<double>& fitness);
  std::vector<double> fitness_of(const std::vector<DecisionVector>& pop);
  std::vector<DecisionVector> neighbours(const DecisionVector& x) const;
  double reference_score(const Entry& e, std::span<const ColumnStats> ref) const;

  template <class Score>
  DecisionVector descend(DecisionVector x, Score score);

  const DecisionSpace& space_;
  const Evaluator& evaluate_;
  const PreferenceModel& model_;
  const OptimizationMode& mode_;
  const GaConfig& cfg_;
  RngHandle& rng_;
  std::vector<double> weights_;
  double mutation_ = 0.0;

  std::unordered_map<DecisionVector, Entry, DecisionVectorHash> cache_;
  bool has_incumbent_ = false;
  DecisionVector incumbent_;
  double incumbent_fitness_ = kNegInf;
};

const Entry& Search::lookup(const DecisionVector& x) {
  if (auto it = cache_.find(x); it != cache_.end()) return it->second;
  Entry e;
  e.feasible = check_constraints(x, space_).feasible;
  if (e.feasible) {
    e.objectives = evaluate_(x);
    e.feasible = check_objective_bounds(e.objectives, space_).feasible;
  }
  if (e.feasible) {
    if (imap()) {
      e.preferences.reserve(model_.criteria.size());
      for (const auto& c : model_.criteria) e.preferences.push_back(model_.curve(c.objective)(e.objectives[c.objective]));
      e.fitness = 0.0;
    } else {
      const double v = e.objectives[mode_.objective];
      e.fitness = mode_.direction == OptimizationMode::Direction::minimize ? -v : v;
      if (std::isnan(e.fitness)) e.fitness = kNegInf;
      if (!has_incumbent_ || e.fitness > incumbent_fitness_ ||
          (e.fitness == incumbent_fitness_ && x < incumbent_)) {
        has_incumbent_ = true;
        incumbent_ = x;
        incumbent_fitness_ = e.fitness;
      }
    }
  }
  return cache_.emplace(x, std::move(e)).first->second;
}

DecisionVector Search::random_member() {
  DecisionVector x;
  x.values.resize(space_.size());
  if (space_.binary) {
    // Per-member density so the population spans sparse and dense allocations.
    const double density = rng_.uniform();
    for (auto& v : x.values) v = rng_.uniform() < density ? 1 : 0;
  } else {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = rng_.uniform_int(space_.lower[i], space_.upper[i]);
  }
  return x;
}

void Search::mutate(DecisionVector& x) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (rng_.uniform() >= mutation_) continue;
    const int lo = space_.lower[i], hi = space_.upper[i];
    if (lo == hi) continue;
    // Uniform over the other values in range.
    int v = rng_.uniform_int(lo, hi - 1);
    if (v >= x[i]) ++v;
    x[i] = v;
  }
}

DecisionVector Search::crossover(const DecisionVector& a, const DecisionVector& b) {
  DecisionVector child = a;
  if (rng_.uniform() < cfg_.crossover) {
    for (std::size_t i = 0; i < child.size(); ++i) {
      if (rng_.uniform() < 0.5) child[i] = b[i];
    }
  }
  return child;
}

std::size_t Search::tournament(const std::vector<double>& fitness) {
  const int n = static_cast<int>(fitness.size());
  std::size_t best = static_cast<std::size_t>(rng_.uniform_int(0, n - 1));
  for (std::size_t k = 1; k < cfg_.tournament; ++k) {
    const auto c = static_cast<std::size_t>(rng_.uniform_int(0, n - 1));
    if (fitness[c] > fitness[best]) best = c;
  }
  return best;
}

std::vector<double> Search::fitness_of(const std::vector<DecisionVector>& pop) {
  std::vector<double> f(pop.size(), kNegInf);
  if (!imap()) {
    for (std::size_t i = 0; i < pop.size(); ++i) f[i] = lookup(pop[i]).fitness;
    return f;
  }
  std::vector<std::size_t> feasible;
  for (std::size_t i = 0; i < pop.size(); ++i) {
    if (lookup(pop[i]).feasible) feasible.push_back(i);
  }
  if (feasible.size() == 1) f[feasible.front()] = 0.0;
  if (feasible.size() < 2) return f;
  ScoreMatrix p(feasible.size(), weights_.size());
  for (std::size_t r = 0; r < feasible.size(); ++r) {
    const auto& prefs = cache_.at(pop[feasible[r]]).preferences;
    for (std::size_t j = 0; j < prefs.size(); ++j) p(r, j) = prefs[j];
  }
  const auto scores = aggregate(normalize_scores(p), weights_);
  for (std::size_t r = 0; r < feasible.size(); ++r) f[feasible[r]] = scores[r];
  return f;
}

std::vector<DecisionVector> Search::neighbours(const DecisionVector& x) const {
  std::vector<DecisionVector> out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (int v = space_.lower[i]; v <= space_.upper[i]; ++v) {
      if (v == x[i]) continue;
      DecisionVector y = x;
      y[i] = v;
      out.push_back(std::move(y));
    }
  }
  if (space_.binary) {
    // Swap one allocated entry for one unallocated entry.
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] != 1) continue;
      for (std::size_t j = 0; j < x.size(); ++j) {
        if (x[j] != 0) continue;
        DecisionVector y = x;
        y[i] = 0;
        y[j] = 1;
        out.push_back(std::move(y));
      }
    }
  }
  return out;
}

double Search::reference_score(const Entry& e, std::span<const ColumnStats> ref) const {
  double s = 0.0;
  for (std::size_t j = 0; j < weights_.size(); ++j) {
    const auto [mean, sd] = ref[j];
    if (sd > 1e-12 * std::max(1.0, std::abs(mean))) s += weights_[j] * (e.preferences[j] - mean) / sd;
  }
  return s;
}

template <class Score>
DecisionVector Search::descend(DecisionVector x, Score score) {
  double current = score(lookup(x));
  for (;;) {
    DecisionVector next;
    double best = current;
    for (auto& y : neighbours(x)) {
      const Entry& e = lookup(y);
      if (!e.feasible) continue;
      const double s = score(e);
      if (s > best || (s == best && s > current && y < next)) {
        best = s;
        next = std::move(y);
      }
    }
    if (!(best > current)) return x;
    x = std::move(next);
    current = best;
  }
}

OptimizationResult Search::run() {
  OptimizationResult result;

  std::vector<DecisionVector> pop;
  pop.reserve(cfg_.population);
  bool any_feasible = false;
  for (std::size_t attempt = 0; attempt <= cfg_.init_retries && !any_feasible; ++attempt) {
    pop.clear();
    if (attempt == 0) {
      pop.push_back(DecisionVector{space_.lower});
      pop.push_back(DecisionVector{space_.upper});
    }
    while (pop.size() < cfg_.population) pop.push_back(random_member());
    for (const auto& x : pop) any_feasible |= lookup(x).feasible;
  }
  if (!any_feasible) throw InfeasibleError("no feasible decision found after initialization retries");

  std::vector<DecisionVector> archive;  // best member of every generation (IMAP)
  DecisionVector last_best;
  std::size_t stall = 0;
  double last_incumbent = kNegInf;
  std::vector<double> fitness;

  for (std::size_t gen = 0; gen < cfg_.generations; ++gen) {
    fitness = fitness_of(pop);
    const auto best_idx = static_cast<std::size_t>(std::max_element(fitness.begin(), fitness.end()) - fitness.begin());
    ++result.generations;

    if (imap()) {
      result.history.push_back(fitness[best_idx]);
      if (fitness[best_idx] > kNegInf) archive.push_back(pop[best_idx]);
      stall = (gen > 0 && pop[best_idx] == last_best) ? stall + 1 : 0;
      last_best = pop[best_idx];
    } else {
      result.history.push_back(incumbent_fitness_);
      stall = (gen > 0 && !(incumbent_fitness_ > last_incumbent)) ? stall + 1 : 0;
      last_incumbent = incumbent_fitness_;
    }
    if (stall >= cfg_.stall_generations || gen + 1 == cfg_.generations) break;

    std::vector<std::size_t> rank(pop.size());
    std::iota(rank.begin(), rank.end(), 0);
    std::stable_sort(rank.begin(), rank.end(), [&](std::size_t a, std::size_t b) { return fitness[a] > fitness[b]; });

    std::vector<DecisionVector> next;
    next.reserve(cfg_.population);
    for (std::size_t e = 0; e < cfg_.elitism && e < rank.size() && fitness[rank[e]] > kNegInf; ++e) {
      next.push_back(pop[rank[e]]);
    }
    while (next.size() < cfg_.population) {
      const auto& a = pop[tournament(fitness)];
      const auto& b = pop[tournament(fitness)];
      DecisionVector child = crossover(a, b);
      mutate(child);
      next.push_back(std::move(child));
    }
    pop = std::move(next);
  }

  if (imap()) {
    // Rank the final population and the archive against the final generation.
    std::vector<std::size_t> feasible;
    for (std::size_t i = 0; i < pop.size(); ++i) {
      if (lookup(pop[i]).feasible) feasible.push_back(i);
    }
    ScoreMatrix p(feasible.size(), weights_.size());
    for (std::size_t r = 0; r < feasible.size(); ++r) {
      const auto& prefs = cache_.at(pop[feasible[r]]).preferences;
      for (std::size_t j = 0; j < prefs.size(); ++j) p(r, j) = prefs[j];
    }
    result.reference = column_stats(p);
    const auto& ref = result.reference;
    auto score = [&](const Entry& e) { return reference_score(e, ref); };

    std::vector<DecisionVector> candidates;
    for (std::size_t i : feasible) candidates.push_back(pop[i]);
    candidates.insert(candidates.end(), archive.begin(), archive.end());
    DecisionVector best = candidates.front();
    double best_score = score(lookup(best));
    for (const auto& c : candidates) {
      const double s = score(lookup(c));
      if (s > best_score || (s == best_score && c < best)) {
        best = c;
        best_score = s;
      }
    }
    if (cfg_.polish) best = descend(best, score);
    const Entry& e = lookup(best);
    result.best = best;
    result.objectives = e.objectives;
    result.score = score(e);
  } else {
    if (cfg_.polish) descend(incumbent_, [](const Entry& e) { return e.fitness; });
    result.best = incumbent_;
    result.objectives = cache_.at(incumbent_).objectives;
    result.score = result.objectives[mode_.objective];
  }
  result.evaluations = cache_.size();
  return result;
}

}  // namespace

DecisionSpace DecisionSpace::binary_space(std::vector<std::string> names) {
  DecisionSpace s;
  s.lower.assign(names.size(), 0);
  s.upper.assign(names.size(), 1);
  s.names = std::move(names);
  s.binary = true;
  return s;
}

ConstraintCheck check_constraints(const DecisionVector& x, const DecisionSpace& space) {
  ConstraintCheck out;
  auto fail = [&](std::string what) {
    out.feasible = false;
    out.violations.push_back(std::move(what));
  };
  if (x.size() != space.size()) {
    fail("dimension");
    return out;
  }
  long total = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    total += x[i];
    if (space.binary && x[i] != 0 && x[i] != 1) {
      fail("binary domain");
    } else if (x[i] < space.lower[i] || x[i] > space.upper[i]) {
      fail("bounds: " + (i < space.names.size() ? space.names[i] : std::to_string(i)));
    }
  }
  if (total < space.min_total) fail("fleet size");
  for (const auto& c : space.linear) {
    double g = -c.rhs;
    for (std::size_t i = 0; i < c.coefficients.size() && i < x.size(); ++i) g += c.coefficients[i] * x[i];
    if (!satisfied(c.kind, g)) fail(c.name.empty() ? "linear constraint" : c.name);
  }
  return out;
}

ConstraintCheck check_objective_bounds(const ObjectiveVector& objectives, const DecisionSpace& space) {
  ConstraintCheck out;
  for (const auto& b : space.objective_bounds) {
    const double v = objectives[b.objective];
    if (std::isnan(v) || !satisfied(b.kind, v - b.value)) {
      out.feasible = false;
      out.violations.push_back(b.name.empty() ? std::string(objective_key(b.objective)) : b.name);
    }
  }
  return out;
}

ValidationReport GaConfig::validate() const {
  ValidationReport report;
  if (population < 4 || population % 2 != 0) report.error("ga.population", "must be even and at least 4");
  if (generations < 1) report.error("ga.generations", "must be at least 1");
  if (!(crossover >= 0.0 && crossover <= 1.0)) report.error("ga.crossover", "outside [0, 1]");
  if (mutation > 1.0) report.error("ga.mutation", "outside [0, 1]");
  if (tournament < 1) report.error("ga.tournament", "must be at least 1");
  if (elitism < 1 || elitism >= population) report.error("ga.elitism", "must be in [1, population)");
  if (stall_generations < 1) report.error("ga.stall_generations", "must be at least 1");
  return report;
}

std::string OptimizationMode::label() const {
  if (kind == Kind::imap) return "moo";
  return "soo:" + std::string(objective_key(objective));
}

double imap_score_against(const ObjectiveVector& objectives, const PreferenceModel& model,
                          std::span<const ColumnStats> reference) {
  if (reference.size() != model.criteria.size()) throw ValidationError("reference does not match criteria");
  double s = 0.0;
  for (std::size_t j = 0; j < model.criteria.size(); ++j) {
    const auto& c = model.criteria[j];
    const auto [mean, sd] = reference[j];
    if (sd > 1e-12 * std::max(1.0, std::abs(mean))) {
      s += c.weight * (model.curve(c.objective)(objectives[c.objective]) - mean) / sd;
    }
  }
  return s;
}

OptimizationResult optimize(const DecisionSpace& space, const Evaluator& evaluate, const PreferenceModel& model,
                            const OptimizationMode& mode, const GaConfig& cfg, RngHandle& rng) {
  if (const auto report = cfg.validate(); !report.ok()) throw ValidationError(report.to_string());
  if (space.size() == 0) throw ValidationError("empty decision space");
  if (space.upper.size() != space.lower.size()) throw ValidationError("bounds differ in length");
  if (mode.kind == OptimizationMode::Kind::imap) {
    if (const auto report = model.validate(); !report.ok()) throw ValidationError(report.to_string());
  }
  Search search(space, evaluate, model, mode, cfg, rng);
  return search.run();
}

}  // namespace odycon
