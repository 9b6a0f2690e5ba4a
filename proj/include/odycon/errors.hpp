#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace odycon {

/// Raised when input data violates a domain invariant.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when no feasible decision exists (e.g. an empty fleet).
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A failure inside one Monte-Carlo iteration; carries the iteration index.
class IterationError : public std::runtime_error {
 public:
  IterationError(std::size_t iteration, const std::string& what)
      : std::runtime_error("iteration " + std::to_string(iteration) + ": " + what),
        iteration_(iteration) {}

  std::size_t iteration() const noexcept { return iteration_; }

 private:
  std::size_t iteration_;
};

struct ValidationIssue {
  enum class Severity { error, warning };

  Severity severity = Severity::error;
  std::string where;    // e.g. "activities[3].duration"
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  void error(std::string where, std::string message) {
    issues.push_back({ValidationIssue::Severity::error, std::move(where), std::move(message)});
  }
  void warning(std::string where, std::string message) {
    issues.push_back({ValidationIssue::Severity::warning, std::move(where), std::move(message)});
  }
  void merge(const ValidationReport& other) {
    issues.insert(issues.end(), other.issues.begin(), other.issues.end());
  }

  std::size_t error_count() const {
    std::size_t n = 0;
    for (const auto& i : issues) n += i.severity == ValidationIssue::Severity::error;
    return n;
  }
  std::size_t warning_count() const { return issues.size() - error_count(); }
  bool ok() const { return error_count() == 0; }

  /// One issue per line, "error: where: message".
  std::string to_string() const;
};

}  // namespace odycon
