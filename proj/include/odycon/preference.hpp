#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "odycon/errors.hpp"
#include "odycon/types.hpp"

namespace odycon {

/// Knot count of the tabulated Beta-PERT preference curve.
inline constexpr std::size_t kPertCurveKnots = 256;

/// Maps an objective value to preference points in [0, 100]. Stored as a
/// piecewise-linear table; values outside the knot range evaluate to 0.
class PreferenceCurve {
 public:
  enum class Shape { piecewise_linear, beta_pert };

  /// Knots as (objective value, preference) pairs with strictly increasing
  /// values and preferences in [0, 100].
  static PreferenceCurve piecewise_linear(std::vector<std::pair<double, double>> knots);

  /// Normalized PERT density over [lo, hi] with its maximum (100) at `mode`,
  /// tabulated on `knots` points with the mode itself among them.
  static PreferenceCurve beta_pert(double lo, double mode, double hi, std::size_t knots = kPertCurveKnots);

  double operator()(double value) const;

  Shape shape() const { return shape_; }
  double support_min() const { return xs_.front(); }
  double support_max() const { return xs_.back(); }
  /// Beta-PERT mode; NaN for piecewise-linear curves.
  double mode() const { return mode_; }
  std::size_t knot_count() const { return xs_.size(); }
  std::span<const double> knot_values() const { return xs_; }
  std::span<const double> knot_preferences() const { return ps_; }

 private:
  PreferenceCurve() = default;

  Shape shape_ = Shape::piecewise_linear;
  double mode_ = 0.0;
  std::vector<double> xs_;
  std::vector<double> ps_;
};

double eval_curve(const PreferenceCurve& curve, double value);

/// Global stakeholder weights w_k and local weights w_{k,i}.
struct WeightScheme {
  struct Stakeholder {
    std::string name;
    double weight = 0.0;
    std::vector<std::pair<ObjectiveId, double>> local;
  };
  std::vector<Stakeholder> stakeholders;

  /// Sum checks at tolerance 1e-9: sum w_k = 1, per-stakeholder sum of
  /// local weights = 1, and the effective weights sum to 1.
  ValidationReport validate() const;
};

/// One (stakeholder, objective) preference function with w' = w_k * w_{k,i}.
struct Criterion {
  std::string stakeholder;
  ObjectiveId objective = ObjectiveId::duration;
  double weight = 0.0;
};

std::vector<Criterion> effective_criteria(const WeightScheme& scheme);

/// Curves per objective plus the weighted criteria referring to them.
struct PreferenceModel {
  std::vector<Criterion> criteria;
  std::vector<std::pair<ObjectiveId, PreferenceCurve>> curves;

  const PreferenceCurve& curve(ObjectiveId id) const;
  PreferenceCurve* find_curve(ObjectiveId id);
  std::vector<double> weights() const;

  /// Every criterion has a curve and weights sum to 1 within 1e-9.
  ValidationReport validate() const;
};

/// Row-major matrix: rows are alternatives, columns criteria.
struct ScoreMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  ScoreMatrix() = default;
  ScoreMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// Population mean and standard deviation of one criterion column.
struct ColumnStats {
  double mean = 0.0;
  double stddev = 0.0;
};

std::vector<ColumnStats> column_stats(const ScoreMatrix& scores);

/// z = (p - mean) / stddev per column; columns with zero spread become 0.
ScoreMatrix normalize_against(const ScoreMatrix& scores, std::span<const ColumnStats> stats);

/// z-scores against the population of the matrix itself. Needs at least two
/// alternatives.
ScoreMatrix normalize_scores(const ScoreMatrix& scores);

/// P*_i = sum_j w_j z_ij, the minimizer of sum_j w_j (z_ij - P)^2.
std::vector<double> aggregate(const ScoreMatrix& z, std::span<const double> weights);

/// Preference points of every alternative on every criterion.
ScoreMatrix preference_scores(std::span<const ObjectiveVector> alternatives, const PreferenceModel& model);

/// Curves, then z-scores over the given alternatives, then aggregation.
std::vector<double> imap_fitness(std::span<const ObjectiveVector> alternatives, const PreferenceModel& model);

}  // namespace odycon
