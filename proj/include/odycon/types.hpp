#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace odycon {

/// Planning variables (integer vessel counts) or control allocations (0/1).
struct DecisionVector {
  std::vector<int> values;

  std::size_t size() const { return values.size(); }
  int operator[](std::size_t i) const { return values[i]; }
  int& operator[](std::size_t i) { return values[i]; }

  bool operator==(const DecisionVector&) const = default;
  auto operator<=>(const DecisionVector&) const = default;

  /// "0;1;2" form used in tables and summaries.
  std::string to_string() const;
};

struct DecisionVectorHash {
  std::size_t operator()(const DecisionVector& x) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (int v : x.values) h = (h ^ static_cast<std::size_t>(v + 0x9e37)) * 1099511628211ULL;
    return h;
  }
};

enum class ObjectiveId : std::size_t { duration = 0, cost, fleet, emissions, nuisance };

inline constexpr std::size_t kObjectiveCount = 5;
inline constexpr std::array<ObjectiveId, kObjectiveCount> kAllObjectives = {
    ObjectiveId::duration, ObjectiveId::cost, ObjectiveId::fleet, ObjectiveId::emissions,
    ObjectiveId::nuisance};

/// Short key used in scenario files ("duration", "cost", ...).
std::string_view objective_key(ObjectiveId id);
/// Column label used in result tables ("O_PD", "O_C", ...).
std::string_view objective_label(ObjectiveId id);
std::string_view objective_unit(ObjectiveId id);
/// Accepts either the key or the label.
std::optional<ObjectiveId> parse_objective(std::string_view text);

/// Named objective values; an objective is present once it has been set.
class ObjectiveVector {
 public:
  void set(ObjectiveId id, double value) { values_[index(id)] = value; }
  bool has(ObjectiveId id) const { return !std::isnan(values_[index(id)]); }
  /// NaN when absent.
  double get(ObjectiveId id) const { return values_[index(id)]; }
  double operator[](ObjectiveId id) const { return get(id); }

  bool operator==(const ObjectiveVector& o) const {
    for (std::size_t i = 0; i < kObjectiveCount; ++i) {
      const bool na = std::isnan(values_[i]), nb = std::isnan(o.values_[i]);
      if (na != nb || (!na && values_[i] != o.values_[i])) return false;
    }
    return true;
  }

 private:
  static std::size_t index(ObjectiveId id) { return static_cast<std::size_t>(id); }
  std::array<double, kObjectiveCount> values_{NAN, NAN, NAN, NAN, NAN};
};

}  // namespace odycon
