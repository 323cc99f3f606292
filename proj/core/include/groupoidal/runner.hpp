#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "groupoidal/model.hpp"

namespace groupoidal {

inline constexpr const char* kToolVersion = "0.1.0";

/// Bad command line or command arguments (exit status 3).
class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

enum class Outcome { pass, fail, indeterminate };

std::string to_string(Outcome o);
/// 0 pass, 1 fail, 2 indeterminate.
int exit_status(Outcome o);

struct RunOptions {
  std::uint64_t seed = 0;
  double tol = kDefaultTolerance;
  /// Name prefix for objects emitted by `build`.
  std::string name;
};

struct RunEntry {
  std::string name;
  std::string kind;
  Outcome outcome = Outcome::pass;
  std::string text;
  /// Serialized JSON object with the entry's details.
  std::string json;
  double seconds = 0.0;
};

struct RunReport {
  std::string command;
  std::vector<std::string> args;
  std::uint64_t seed = 0;
  double tol = kDefaultTolerance;
  std::vector<RunEntry> entries;
  /// Library operations the command reached.
  std::set<std::string> operations;
  /// Objects produced by `build`.
  std::optional<ModelFile> built;

  /// Worst entry outcome; pass when there are no entries.
  Outcome outcome() const;
  std::string to_text(bool timings = false) const;
  std::string to_json(bool timings = false) const;
};

/// Runs `validate`, `build <construction> <args>`, `check-equivalence
/// <scenario>` or `morita <scenario>` on a parsed model. Precondition
/// failures of the underlying operations become failing entries.
/// Throws UsageError for unknown commands or arguments.
RunReport run(const ModelFile& model, std::string_view command, const std::vector<std::string>& args,
              const RunOptions& options = {});

struct DemoOptions {
  /// "Z<n>", "S3", "Z2xZ2" or "trivial".
  std::string group = "Z2";
  /// "line" or "matrix".
  std::string bundle = "line";
  /// Raeburn case: "two-point" or "klein".
  std::string raeburn_case = "klein";
};

/// `demo raeburn` or `demo coaction`, independent of any model.
RunReport run_demo(std::string_view which, const DemoOptions& demo, const RunOptions& options = {});

/// Constructions accepted by `build`, with their argument kinds.
const std::vector<std::pair<std::string, std::vector<std::string>>>& build_constructions();

struct OperationInfo {
  std::string name;
  std::string module;
};

/// The public operations of gpd-core, fell, star-alg and morita that the
/// command line must reach.
const std::vector<OperationInfo>& operation_registry();

FiniteGroup parse_group_name(std::string_view name);

} // namespace groupoidal
