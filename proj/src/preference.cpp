#include "odycon/preference.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace odycon {

namespace {

constexpr double kWeightTolerance = 1e-9;

}  // namespace

PreferenceCurve PreferenceCurve::piecewise_linear(std::vector<std::pair<double, double>> knots) {
  if (knots.size() < 2) throw ValidationError("piecewise-linear curve needs at least two knots");
  PreferenceCurve c;
  c.shape_ = Shape::piecewise_linear;
  c.mode_ = NAN;
  for (std::size_t k = 0; k < knots.size(); ++k) {
    const auto [x, p] = knots[k];
    if (!std::isfinite(x) || !std::isfinite(p)) throw ValidationError("curve knot is not finite");
    if (p < 0.0 || p > 100.0) throw ValidationError("curve knot preference outside [0, 100]");
    if (k > 0 && !(x > knots[k - 1].first)) throw ValidationError("curve knots must strictly increase");
    c.xs_.push_back(x);
    c.ps_.push_back(p);
  }
  return c;
}

PreferenceCurve PreferenceCurve::beta_pert(double lo, double mode, double hi, std::size_t knots) {
  if (!(std::isfinite(lo) && std::isfinite(mode) && std::isfinite(hi))) {
    throw ValidationError("beta-pert curve bounds are not finite");
  }
  if (!(lo < hi) || mode < lo || mode > hi) throw ValidationError("beta-pert curve requires min <= mode <= max, min < max");
  if (knots < 3) throw ValidationError("beta-pert curve needs at least three knots");

  const double range = hi - lo;
  const double alpha = 1.0 + 4.0 * (mode - lo) / range;
  const double beta = 1.0 + 4.0 * (hi - mode) / range;
  // Unnormalized log-density; the mode is the maximum.
  auto log_density = [&](double x) {
    double v = 0.0;
    if (alpha != 1.0) v += (alpha - 1.0) * std::log(x - lo);
    if (beta != 1.0) v += (beta - 1.0) * std::log(hi - x);
    return v;
  };
  const double peak = log_density(mode);

  const std::size_t segments = knots - 1;
  std::size_t left = static_cast<std::size_t>(std::lround(static_cast<double>(segments) * (mode - lo) / range));
  if (mode > lo) left = std::clamp<std::size_t>(left, 1, segments - (mode < hi ? 1 : 0));
  else left = 0;
  const std::size_t right = segments - left;

  PreferenceCurve c;
  c.shape_ = Shape::beta_pert;
  c.mode_ = mode;
  for (std::size_t k = 0; k < left; ++k) c.xs_.push_back(lo + (mode - lo) * static_cast<double>(k) / left);
  c.xs_.push_back(mode);
  for (std::size_t k = 1; k <= right; ++k) {
    c.xs_.push_back(k == right ? hi : mode + (hi - mode) * static_cast<double>(k) / right);
  }
  for (double x : c.xs_) {
    double p;
    if (x == mode) p = 100.0;
    else if ((x == lo && alpha > 1.0) || (x == hi && beta > 1.0)) p = 0.0;
    else p = 100.0 * std::exp(log_density(x) - peak);
    c.ps_.push_back(std::clamp(p, 0.0, 100.0));
  }
  return c;
}

double PreferenceCurve::operator()(double value) const {
  if (std::isnan(value) || value < xs_.front() || value > xs_.back()) return 0.0;
  const auto it = std::lower_bound(xs_.begin(), xs_.end(), value);
  const auto k = static_cast<std::size_t>(it - xs_.begin());
  if (xs_[k] == value) return ps_[k];
  const double t = (value - xs_[k - 1]) / (xs_[k] - xs_[k - 1]);
  return ps_[k - 1] + t * (ps_[k] - ps_[k - 1]);
}

double eval_curve(const PreferenceCurve& curve, double value) { return curve(value); }

ValidationReport WeightScheme::validate() const {
  ValidationReport report;
  if (stakeholders.empty()) {
    report.error("weights", "no stakeholders defined");
    return report;
  }
  double global = 0.0;
  double effective = 0.0;
  for (std::size_t k = 0; k < stakeholders.size(); ++k) {
    const auto& s = stakeholders[k];
    const std::string where = "weights.stakeholders[" + std::to_string(k) + "]";
    if (s.weight < 0.0) report.error(where + ".weight", "negative weight");
    global += s.weight;
    double local = 0.0;
    for (const auto& [obj, w] : s.local) {
      if (w < 0.0) report.error(where + ".objectives", "negative local weight");
      local += w;
      effective += s.weight * w;
    }
    if (std::abs(local - 1.0) > kWeightTolerance) {
      std::ostringstream os;
      os << "local weights of '" << s.name << "' sum to " << local << ", expected 1";
      report.error(where + ".objectives", os.str());
    }
  }
  if (std::abs(global - 1.0) > kWeightTolerance) {
    std::ostringstream os;
    os << "global stakeholder weights sum to " << global << ", expected 1";
    report.error("weights", os.str());
  }
  if (std::abs(effective - 1.0) > kWeightTolerance) {
    std::ostringstream os;
    os << "effective weights w' sum to " << effective << ", expected 1";
    report.error("weights", os.str());
  }
  return report;
}

std::vector<Criterion> effective_criteria(const WeightScheme& scheme) {
  std::vector<Criterion> out;
  for (const auto& s : scheme.stakeholders) {
    for (const auto& [obj, w] : s.local) {
      const double effective = s.weight * w;
      if (effective > 0.0) out.push_back({s.name, obj, effective});
    }
  }
  return out;
}

const PreferenceCurve& PreferenceModel::curve(ObjectiveId id) const {
  for (const auto& [obj, c] : curves) {
    if (obj == id) return c;
  }
  throw ValidationError("no preference curve for objective " + std::string(objective_key(id)));
}

PreferenceCurve* PreferenceModel::find_curve(ObjectiveId id) {
  for (auto& [obj, c] : curves) {
    if (obj == id) return &c;
  }
  return nullptr;
}

std::vector<double> PreferenceModel::weights() const {
  std::vector<double> w;
  w.reserve(criteria.size());
  for (const auto& c : criteria) w.push_back(c.weight);
  return w;
}

ValidationReport PreferenceModel::validate() const {
  ValidationReport report;
  double total = 0.0;
  for (const auto& c : criteria) {
    total += c.weight;
    bool found = false;
    for (const auto& [obj, curve] : curves) found |= obj == c.objective;
    if (!found) {
      report.error("preference_curves", "criterion '" + c.stakeholder + "/" + std::string(objective_key(c.objective)) +
                                            "' has no preference curve");
    }
  }
  if (criteria.empty()) report.error("weights", "no weighted criteria");
  else if (std::abs(total - 1.0) > kWeightTolerance) {
    std::ostringstream os;
    os << "criterion weights sum to " << total << ", expected 1";
    report.error("weights", os.str());
  }
  return report;
}

std::vector<ColumnStats> column_stats(const ScoreMatrix& scores) {
  std::vector<ColumnStats> stats(scores.cols);
  if (scores.rows == 0) return stats;
  const double n = static_cast<double>(scores.rows);
  for (std::size_t j = 0; j < scores.cols; ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < scores.rows; ++i) sum += scores(i, j);
    const double mean = sum / n;
    double ss = 0.0;
    for (std::size_t i = 0; i < scores.rows; ++i) {
      const double d = scores(i, j) - mean;
      ss += d * d;
    }
    stats[j] = {mean, std::sqrt(ss / n)};
  }
  return stats;
}

ScoreMatrix normalize_against(const ScoreMatrix& scores, std::span<const ColumnStats> stats) {
  if (stats.size() != scores.cols) throw ValidationError("column statistics do not match score matrix");
  ScoreMatrix z(scores.rows, scores.cols);
  for (std::size_t j = 0; j < scores.cols; ++j) {
    const auto [mean, sd] = stats[j];
    // A column whose spread is only rounding noise carries no information.
    const bool degenerate = !(sd > 1e-12 * std::max(1.0, std::abs(mean)));
    for (std::size_t i = 0; i < scores.rows; ++i) z(i, j) = degenerate ? 0.0 : (scores(i, j) - mean) / sd;
  }
  return z;
}

ScoreMatrix normalize_scores(const ScoreMatrix& scores) {
  if (scores.rows < 2) throw ValidationError("normalization needs at least two alternatives");
  const auto stats = column_stats(scores);
  return normalize_against(scores, stats);
}

std::vector<double> aggregate(const ScoreMatrix& z, std::span<const double> weights) {
  if (weights.size() != z.cols) throw ValidationError("weight count does not match criteria");
  double total = 0.0;
  for (double w : weights) total += w;
  if (std::abs(total - 1.0) > kWeightTolerance) {
    std::ostringstream os;
    os << "weights sum to " << total << ", expected 1";
    throw ValidationError(os.str());
  }
  std::vector<double> out(z.rows, 0.0);
  for (std::size_t i = 0; i < z.rows; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < z.cols; ++j) s += weights[j] * z(i, j);
    out[i] = s;
  }
  return out;
}

ScoreMatrix preference_scores(std::span<const ObjectiveVector> alternatives, const PreferenceModel& model) {
  ScoreMatrix p(alternatives.size(), model.criteria.size());
  for (std::size_t j = 0; j < model.criteria.size(); ++j) {
    const ObjectiveId obj = model.criteria[j].objective;
    const PreferenceCurve& curve = model.curve(obj);
    for (std::size_t i = 0; i < alternatives.size(); ++i) {
      if (!alternatives[i].has(obj)) {
        throw ValidationError("alternative lacks objective " + std::string(objective_key(obj)));
      }
      p(i, j) = curve(alternatives[i][obj]);
    }
  }
  return p;
}

std::vector<double> imap_fitness(std::span<const ObjectiveVector> alternatives, const PreferenceModel& model) {
  const auto weights = model.weights();
  return aggregate(normalize_scores(preference_scores(alternatives, model)), weights);
}

}  // namespace odycon
