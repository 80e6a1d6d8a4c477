#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "conley/hybrid.hpp"

namespace conley {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.3.0";

/// Input problem: malformed document, schema violation or bad value.
/// `where` is "line L, column C" for parse errors and a field path such as
/// "analysis.eps_ladder[2]" for schema errors.
class SpecError : public std::invalid_argument {
 public:
  SpecError(std::string where, const std::string& what)
      : std::invalid_argument(where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

struct AnalysisOptions {
  std::vector<Eps> ladder;
  /// Scale for morse/lyapunov; defaults to the finest ladder rung.
  Eps eps;
  std::vector<std::string> analyses;
  std::optional<CellSet> region;
  std::string perturb_mode = "repeller";
  double perturb_eps = 0.5;
  std::size_t path_length = 3;
  std::size_t path_cap = 10000;
  std::size_t cycle_cap = 100000;
};

struct SystemSpec {
  /// Canonical (key-sorted) input document.
  Json doc;
  std::string kind;
  std::shared_ptr<const GridSpace> space;
  /// F for relation and sampled_map; the step for semiflow and hybrid.
  Relation relation;
  std::uint32_t steps_per_unit = 1;
  std::optional<CellSet> flow_set;
  std::optional<Relation> jump;
  AnalysisOptions analysis;

  /// The relation the chain/morse/lyapunov/conley analyses act on: F, the
  /// step, or the hybrid associated relation H.
  Relation analyzed_relation() const;
  SemiflowApprox semiflow() const;
  HybridSystem hybrid() const;
};

SystemSpec parse_spec(const std::string& text);
SystemSpec load_spec(const std::filesystem::path& path);

/// Grid block plus "edges" list to a relation; the inverse of relation_to_json.
Relation relation_from_json(const Json& j);
Json relation_to_json(const Relation& f);

Json eps_to_json(Eps e);

/// FNV-1a 64 of the canonical spec text, as 16 hex digits.
std::string config_hash(const Json& doc);

struct AnalysisReport {
  /// Deterministic body.
  Json body;
  /// Wall-clock milliseconds per analysis; kept out of the body.
  Json timing;
  std::vector<std::string> failures;
  std::string morse_dot;
  std::string lyapunov_csv;
};

/// Runs the requested analyses in dependency order. Throws SpecError when an
/// analysis does not apply to the spec kind or needs a missing field.
AnalysisReport run_analyses(const SystemSpec& spec);

/// Writes report.json, timing.json and, when present, morse_graph.dot and
/// lyapunov.csv into dir.
void emit_report(const AnalysisReport& report, const std::filesystem::path& dir);

}  // namespace conley
