#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "odycon/errors.hpp"
#include "odycon/preference.hpp"
#include "odycon/sampling.hpp"
#include "odycon/types.hpp"

namespace odycon {

enum class ConstraintKind { less_equal, equal, greater_equal };

/// g(x) = sum_n c_n x_n - rhs, required <= 0 (or == 0 within 1e-9, or >= 0).
struct LinearConstraint {
  std::string name;
  ConstraintKind kind = ConstraintKind::less_equal;
  std::vector<double> coefficients;
  double rhs = 0.0;
};

/// Bound on an objective value, checked after evaluation.
struct ObjectiveBound {
  std::string name;
  ObjectiveId objective = ObjectiveId::duration;
  ConstraintKind kind = ConstraintKind::less_equal;
  double value = 0.0;
};

struct DecisionSpace {
  std::vector<std::string> names;
  std::vector<int> lower;
  std::vector<int> upper;
  bool binary = false;
  int min_total = 0;  // minimum sum of all entries ("fleet size")
  std::vector<LinearConstraint> linear;
  std::vector<ObjectiveBound> objective_bounds;

  std::size_t size() const { return lower.size(); }

  static DecisionSpace binary_space(std::vector<std::string> names);
};

struct ConstraintCheck {
  bool feasible = true;
  std::vector<std::string> violations;
};

/// Structural bounds, binary domain, minimum total and declared linear
/// constraints.
ConstraintCheck check_constraints(const DecisionVector& x, const DecisionSpace& space);

/// Declared objective bounds.
ConstraintCheck check_objective_bounds(const ObjectiveVector& objectives, const DecisionSpace& space);

struct GaConfig {
  std::size_t population = 100;
  std::size_t generations = 60;
  double crossover = 0.9;
  double mutation = -1.0;  // per gene; negative means 1 / number of genes
  std::size_t tournament = 3;
  std::size_t elitism = 2;
  std::size_t stall_generations = 15;
  std::size_t init_retries = 20;
  bool polish = true;  // neighbourhood descent on the returned member

  ValidationReport validate() const;
};

struct OptimizationMode {
  enum class Kind { imap, single };
  enum class Direction { minimize, maximize };

  Kind kind = Kind::imap;
  ObjectiveId objective = ObjectiveId::cost;
  Direction direction = Direction::minimize;
  /// Scenario-declared penalty terms (name, value) applied while scoring.
  std::vector<std::pair<std::string, double>> penalties;

  static OptimizationMode moo() { return {}; }
  static OptimizationMode soo(ObjectiveId objective, Direction direction = Direction::minimize,
                              std::vector<std::pair<std::string, double>> penalties = {}) {
    return {Kind::single, objective, direction, std::move(penalties)};
  }

  /// "moo" or "soo:<objective>".
  std::string label() const;
};

using Evaluator = std::function<ObjectiveVector(const DecisionVector&)>;

struct OptimizationResult {
  DecisionVector best;
  ObjectiveVector objectives;
  /// MOO: P* against `reference`. SOO: the scalar objective value.
  double score = 0.0;
  /// MOO: column statistics of the final generation used to rank candidates.
  std::vector<ColumnStats> reference;
  /// Best fitness per generation (SOO: best-so-far, sign-adjusted so larger
  /// is better; MOO: the generation's best P*).
  std::vector<double> history;
  std::size_t generations = 0;
  std::size_t evaluations = 0;
};

/// P* of one alternative against fixed column statistics.
double imap_score_against(const ObjectiveVector& objectives, const PreferenceModel& model,
                          std::span<const ColumnStats> reference);

/// Genetic search over `space`. `evaluate` must be deterministic. In IMAP mode
/// fitness is the aggregated preference over the current generation's
/// feasible members; the returned member maximizes P* against the final
/// generation among the final population and every generation's best. In
/// single mode it is the best scalar ever seen. Infeasible members get -inf.
OptimizationResult optimize(const DecisionSpace& space, const Evaluator& evaluate, const PreferenceModel& model,
                            const OptimizationMode& mode, const GaConfig& cfg, RngHandle& rng);

}  // namespace odycon
