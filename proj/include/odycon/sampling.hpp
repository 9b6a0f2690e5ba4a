#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace odycon {

enum class Unit { days, currency, points };

std::string_view to_string(Unit unit);

/// Optimistic / most-likely / pessimistic triple defining a Beta-PERT density.
struct ThreePointEstimate {
  double a = 0.0;
  double m = 0.0;
  double b = 0.0;
  Unit unit = Unit::days;

  static ThreePointEstimate point(double value, Unit unit = Unit::days) {
    return {value, value, value, unit};
  }

  bool degenerate() const { return a == b; }

  /// (a + 4m + b) / 6
  double pert_mean() const { return (a + 4.0 * m + b) / 6.0; }

  /// Standard deviation of the lambda = 4 PERT density.
  double pert_stddev() const;

  bool operator==(const ThreePointEstimate&) const = default;
};

/// Throws ValidationError naming the offending field if the triple is not
/// finite or not ordered a <= m <= b.
void validate_estimate(const ThreePointEstimate& est, std::string_view context = {});

/// Sorts the triple ascending in place. Returns true if it was out of order.
bool sort_estimate(ThreePointEstimate& est);

/// Seedable random stream. One handle per (seed, stream) pair; equal pairs
/// reproduce identical sequences. Value-like: copying duplicates the state.
class RngHandle {
 public:
  using engine_type = std::mt19937_64;

  RngHandle(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  /// Independent child stream, e.g. for an optimizer that must not disturb
  /// the sampling sequence of its parent.
  RngHandle substream(std::uint64_t tag) const;

  /// Uniform in [0, 1).
  double uniform();

  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi);

  engine_type& engine() { return engine_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  engine_type engine_;
};

/// Draw from a + (b - a) * Beta(alpha, beta) with
/// alpha = 1 + 4(m - a)/(b - a), beta = 1 + 4(b - m)/(b - a).
/// A degenerate estimate (a == b) returns m without consuming randomness.
double sample_beta_pert(const ThreePointEstimate& est, RngHandle& rng);

/// Bernoulli(p). Consumes exactly one uniform draw.
bool sample_risk_occurrence(double p, RngHandle& rng);

}  // namespace odycon
