#pragma once

#include <filesystem>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "groupoidal/bundle_action.hpp"
#include "groupoidal/star_algebra.hpp"

namespace groupoidal {

/// A model-file syntax or resolution error at a 1-based line and column.
class ParseError : public std::runtime_error {
public:
  ParseError(std::string source, int line, int column, std::string cause);

  const std::string& source() const { return source_; }
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& cause() const { return cause_; }

private:
  std::string source_;
  int line_;
  int column_;
  std::string cause_;
};

struct GroupEntry {
  std::string name;
  FiniteGroup group;
};

struct GroupoidEntry {
  std::string name;
  FiniteGroupoid groupoid;
};

struct ActionEntry {
  std::string name;
  std::string group;
  std::string groupoid;
  GroupAction action;
};

struct SpaceActionEntry {
  std::string name;
  std::string groupoid;
  SpaceAction action;
};

struct AlgebraEntry {
  std::string name;
  StarAlgebra algebra;
};

struct AlgebraActionEntry {
  std::string name;
  std::string group;
  std::string algebra;
  AlgebraAction action;
};

struct BundleEntry {
  std::string name;
  std::string base;
  FellBundle bundle;
};

struct BundleActionEntry {
  std::string name;
  std::string bundle;
  std::string base_action;
  BundleAction action;
};

/// A named operation over model objects, e.g. kind "symmetric" with the
/// two bundle actions as arguments.
struct Scenario {
  std::string name;
  std::string kind;
  std::vector<std::string> args;
};

/// Scenario kinds and the object kinds of their arguments.
struct ScenarioSignature {
  std::string kind;
  std::vector<std::string> args;
};
const std::vector<ScenarioSignature>& scenario_signatures();

/// Named objects in declaration order. Names are unique across kinds.
struct ModelFile {
  int version = 1;
  std::vector<GroupEntry> groups;
  std::vector<GroupoidEntry> groupoids;
  std::vector<ActionEntry> actions;
  std::vector<SpaceActionEntry> space_actions;
  std::vector<AlgebraEntry> algebras;
  std::vector<AlgebraActionEntry> algebra_actions;
  std::vector<BundleEntry> bundles;
  std::vector<BundleActionEntry> bundle_actions;
  std::vector<Scenario> scenarios;
  /// Library constructors used while parsing; not part of equality.
  std::set<std::string> operations;

  bool empty() const;
  /// Kind of the object called `name` ("group", "groupoid", ...), or "".
  std::string kind_of(std::string_view name) const;

  const GroupEntry* find_group(std::string_view name) const;
  const GroupoidEntry* find_groupoid(std::string_view name) const;
  const ActionEntry* find_action(std::string_view name) const;
  const SpaceActionEntry* find_space_action(std::string_view name) const;
  const AlgebraEntry* find_algebra(std::string_view name) const;
  const AlgebraActionEntry* find_algebra_action(std::string_view name) const;
  const BundleEntry* find_bundle(std::string_view name) const;
  const BundleActionEntry* find_bundle_action(std::string_view name) const;
  const Scenario* find_scenario(std::string_view name) const;

  bool operator==(const ModelFile& other) const;
};

/// Parses the line-oriented model format. Objects are shape-checked and
/// every reference is resolved; axioms are left to `validate`.
ModelFile parse_model(std::string_view text, std::string_view source = "<model>");
ModelFile load_model(const std::filesystem::path& path);

/// Explicit-table text form; parse_model(serialize_model(m)) == m.
std::string serialize_model(const ModelFile& m);
/// JSON mirror of the text form.
std::string model_to_json(const ModelFile& m);

/// Number syntax of model entries: "3/2", "-1", "0.5", "1e-3", "2i",
/// "1/2-3/4i", "-i". Throws std::invalid_argument.
Complex parse_number(std::string_view token);
/// Shortest form that parses back to the same value (%.17g per part).
std::string format_number(Complex z);

} // namespace groupoidal
