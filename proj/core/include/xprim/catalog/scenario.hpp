#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "xprim/base/base_size.hpp"
#include "xprim/ep/ep_analysis.hpp"
#include "xprim/perm/perm_group.hpp"

namespace xprim {

struct GroupSource {
  /// A build_named name ("alt", "psl2", ...) or "file" for a group file.
  std::string kind;
  std::vector<std::string> params;
  /// Resolved against the scenario file's directory.
  std::filesystem::path path;
};

struct SubgroupSource {
  bool point_stabilizer = false;
  /// 1-based cycle strings in the parent's action.
  std::vector<std::string> gens;
  /// Group file holding the generators, as an alternative to `gens`.
  std::filesystem::path path;
};

enum class ActionKind { natural, cosets };

struct ScenarioExpectation {
  std::optional<BigInt> order;
  std::optional<BigInt> index;
  std::optional<std::size_t> rank;
  std::optional<std::vector<std::size_t>> subdegrees;  // sorted
  std::optional<bool> ep;
  std::optional<std::size_t> base_size;
  /// Two-point stabilizer orders of the nontrivial suborbits, sorted.
  std::optional<std::vector<BigInt>> stabilizer_orders;

  bool empty() const;
};

struct Scenario {
  std::string name;
  GroupSource group;
  SubgroupSource subgroup;
  ActionKind action = ActionKind::natural;
  ScenarioExpectation expected;
  std::string provenance;
  bool almost_simple = false;
  /// Large cases run only when requested.
  bool stretch = false;
  std::vector<std::string> notes;
};

/// JSON keys: name, group {kind, params | path}, subgroup
/// ("point-stabilizer" | {gens} | {path}), action ("natural" | "cosets"),
/// expected {order, index, rank, subdegrees, ep, base_size,
/// stabilizer_orders}, provenance, almost_simple, stretch, notes.
/// Integers may be JSON numbers or decimal strings.
Scenario parse_scenario_json(const nlohmann::json& j, const std::filesystem::path& base_dir);
Scenario parse_scenario(const std::filesystem::path& path);
nlohmann::json to_json(const Scenario& s);

/// All *.json scenario files in a directory, sorted by file name.
std::vector<std::filesystem::path> scenario_files(const std::filesystem::path& dir);

struct ScenarioOptions {
  std::size_t threads = 1;
  BaseCaps base_caps;
  std::size_t index_cap = 1000000;
};

/// The group and point stabilizer a scenario describes: the parent group
/// in the requested action, and the point whose stabilizer is H.
struct ScenarioAction {
  PermGroup parent;
  std::optional<PermGroup> subgroup;
  PermGroup action;
  Point alpha = 0;
};
ScenarioAction build_scenario_action(const Scenario& s, const ScenarioOptions& opts = {});

struct ScenarioRun {
  enum class Status { pass, fail, skipped };
  Status status = Status::skipped;
  std::string name;
  std::vector<std::string> diffs;
  std::string skip_reason;
  std::optional<EPReport> report;
  std::optional<BaseResult> base;
  BigInt order = 0;
  BigInt index = 0;
  double seconds = 0;
};

/// Builds the action, runs ep_analyze (and exact_base_size when a base size
/// is expected) and compares with the expectations. An almost simple
/// scenario that is extremely primitive with base size 2 fails. Resource
/// caps give status skipped.
ScenarioRun run_scenario(const Scenario& s, const ScenarioOptions& opts = {});

nlohmann::json to_json(const ScenarioRun& r);
std::string to_string(ScenarioRun::Status s);

}  // namespace xprim
