#include "odycon/errors.hpp"

#include <sstream>

namespace odycon {

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  for (const auto& issue : issues) {
    os << (issue.severity == ValidationIssue::Severity::error ? "error" : "warning") << ": "
       << issue.where << ": " << issue.message << "\n";
  }
  return os.str();
}

}  // namespace odycon
