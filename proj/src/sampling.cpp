#include "odycon/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/random/beta_distribution.hpp>
#include <boost/random/uniform_01.hpp>
#include <boost/random/uniform_int_distribution.hpp>

#include "odycon/errors.hpp"

namespace odycon {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RngHandle::engine_type make_engine(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return RngHandle::engine_type(seq);
}

std::string field_error(std::string_view context, std::string_view field, const std::string& what) {
  std::ostringstream os;
  if (!context.empty()) os << context << ".";
  os << field << ": " << what;
  return os.str();
}

}  // namespace

std::string_view to_string(Unit unit) {
  switch (unit) {
    case Unit::days: return "days";
    case Unit::currency: return "currency";
    case Unit::points: return "points";
  }
  return "?";
}

double ThreePointEstimate::pert_stddev() const {
  // Var = (mu - a)(b - mu) / (alpha + beta + 1), alpha + beta = 6
  const double mu = pert_mean();
  return std::sqrt(std::max(0.0, (mu - a) * (b - mu) / 7.0));
}

void validate_estimate(const ThreePointEstimate& est, std::string_view context) {
  if (!std::isfinite(est.a)) throw ValidationError(field_error(context, "a", "not finite"));
  if (!std::isfinite(est.m)) throw ValidationError(field_error(context, "m", "not finite"));
  if (!std::isfinite(est.b)) throw ValidationError(field_error(context, "b", "not finite"));
  if (est.m < est.a) {
    throw ValidationError(field_error(context, "m", "most-likely value is below the optimistic value a"));
  }
  if (est.b < est.m) {
    throw ValidationError(field_error(context, "b", "pessimistic value is below the most-likely value m"));
  }
}

bool sort_estimate(ThreePointEstimate& est) {
  if (est.a <= est.m && est.m <= est.b) return false;
  double v[3] = {est.a, est.m, est.b};
  std::sort(std::begin(v), std::end(v));
  est.a = v[0];
  est.m = v[1];
  est.b = v[2];
  return true;
}

RngHandle::RngHandle(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), engine_(make_engine(seed, stream)) {}

RngHandle RngHandle::substream(std::uint64_t tag) const {
  return RngHandle(seed_, splitmix64(stream_ ^ splitmix64(tag ^ 0x5ca1ab1eULL)));
}

double RngHandle::uniform() { return boost::random::uniform_01<double>()(engine_); }

int RngHandle::uniform_int(int lo, int hi) {
  return boost::random::uniform_int_distribution<int>(lo, hi)(engine_);
}

double sample_beta_pert(const ThreePointEstimate& est, RngHandle& rng) {
  validate_estimate(est);
  if (est.degenerate()) return est.m;
  const double range = est.b - est.a;
  const double alpha = 1.0 + 4.0 * (est.m - est.a) / range;
  const double beta = 1.0 + 4.0 * (est.b - est.m) / range;
  const double x = boost::random::beta_distribution<double>(alpha, beta)(rng.engine());
  return std::clamp(est.a + range * x, est.a, est.b);
}

bool sample_risk_occurrence(double p, RngHandle& rng) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ValidationError("probability " + std::to_string(p) + " outside [0, 1]");
  }
  return rng.uniform() < p;
}

}  // namespace odycon
