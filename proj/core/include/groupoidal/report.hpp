#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace groupoidal {

/// Default absolute tolerance for entrywise complex comparisons.
inline constexpr double kDefaultTolerance = 1e-9;

/// Thrown when an operation's precondition does not hold. The message
/// carries a concrete witness (offending tuple, element, ...).
class PreconditionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when an internal consistency check fails (e.g. a unique-element
/// search found two matches after freeness was established).
class ConsistencyError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

struct Finding {
  std::string check;
  std::string witness;
  double residual = 0.0;
};

/// Outcome of an exhaustive verification. Failures name the violated
/// check and the offending tuple; passing checks still record their
/// maximal residual so tolerances can be audited.
class ValidationReport {
public:
  /// Failures retained per check; further ones are only counted.
  static constexpr std::size_t kMaxWitnessesPerCheck = 4;

  void fail(std::string_view check, std::string witness, double residual = 0.0);
  void note(std::string text);
  /// Registers a check as having run, tracking the largest residual seen.
  void record(std::string_view check, double residual = 0.0);

  bool ok() const { return failure_count_ == 0; }
  bool failed(std::string_view check) const;
  std::size_t failure_count() const { return failure_count_; }
  std::size_t failure_count(std::string_view check) const;
  double residual(std::string_view check) const;

  const std::vector<Finding>& failures() const { return failures_; }
  const std::vector<std::string>& notes() const { return notes_; }
  const std::map<std::string, double, std::less<>>& residuals() const { return residuals_; }
  const std::map<std::string, std::size_t, std::less<>>& counts() const { return counts_; }

  /// Appends `other`, prefixing each check name with `prefix`.
  void merge(const ValidationReport& other, std::string_view prefix = {});

  std::string to_string() const;

private:
  std::vector<Finding> failures_;
  std::vector<std::string> notes_;
  std::map<std::string, double, std::less<>> residuals_;
  std::map<std::string, std::size_t, std::less<>> counts_;
  std::size_t failure_count_ = 0;
};

/// Throws PreconditionError carrying the first failure of `r`, if any.
void require_valid(const ValidationReport& r, std::string_view context);

} // namespace groupoidal
