#include "odycon/types.hpp"

namespace odycon {

namespace {

struct ObjectiveNames {
  std::string_view key;
  std::string_view label;
  std::string_view unit;
};

constexpr std::array<ObjectiveNames, kObjectiveCount> kNames = {{
    {"duration", "O_PD", "days"},
    {"cost", "O_C", "EUR"},
    {"fleet", "O_F", "probability"},
    {"emissions", "O_S", "t CO2"},
    {"nuisance", "O_N", "points"},
}};

}  // namespace

std::string DecisionVector::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ';';
    out += std::to_string(values[i]);
  }
  return out;
}

std::string_view objective_key(ObjectiveId id) { return kNames[static_cast<std::size_t>(id)].key; }
std::string_view objective_label(ObjectiveId id) { return kNames[static_cast<std::size_t>(id)].label; }
std::string_view objective_unit(ObjectiveId id) { return kNames[static_cast<std::size_t>(id)].unit; }

std::optional<ObjectiveId> parse_objective(std::string_view text) {
  for (ObjectiveId id : kAllObjectives) {
    if (text == objective_key(id) || text == objective_label(id)) return id;
  }
  return std::nullopt;
}

}  // namespace odycon
