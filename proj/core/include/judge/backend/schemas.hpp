#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "judge/model/fault_mode.hpp"
#include "judge/retrieval/retriever.hpp"

namespace judge::backend {

/// Structured-output shapes requested from the judge model.
enum class SchemaId { Match, Display, Interaction, Consistency, Unified };

std::string_view to_string(SchemaId id) noexcept;

/// nullopt when the value conforms; otherwise the first problem found.
std::optional<std::string> conformance_error(SchemaId id, const nlohmann::json& value);

struct DisplayDefect {
  std::optional<model::FaultMode> type;  // nullopt encodes "None"
  std::vector<std::string> evidence;
  std::string location_hint;
  std::string reason;

  friend bool operator==(const DisplayDefect&, const DisplayDefect&) = default;
};

struct DisplayFinding {
  bool has_defect = false;
  std::vector<DisplayDefect> defects;

  friend bool operator==(const DisplayFinding&, const DisplayFinding&) = default;
};

/// Also used for the unified-verifier output, where type may be any mode.
struct InteractionFinding {
  bool has_defect = false;
  std::optional<model::FaultMode> type;
  long long step = 0;
  std::string reason;
  std::string effect;

  friend bool operator==(const InteractionFinding&, const InteractionFinding&) = default;
};

struct ConsistencyFinding {
  bool consistent = false;
  std::string reason;

  friend bool operator==(const ConsistencyFinding&, const ConsistencyFinding&) = default;
};

// Typed parsers. Each throws std::invalid_argument on non-conforming input.
retrieval::MatchResult parse_match(const nlohmann::json& value);
DisplayFinding parse_display(const nlohmann::json& value);
InteractionFinding parse_interaction(const nlohmann::json& value);
InteractionFinding parse_unified(const nlohmann::json& value);
ConsistencyFinding parse_consistency(const nlohmann::json& value);

nlohmann::json to_json_value(const retrieval::MatchResult& match);
nlohmann::json to_json_value(const DisplayFinding& finding);
nlohmann::json to_json_value(const InteractionFinding& finding);
nlohmann::json to_json_value(const ConsistencyFinding& finding);

}  // namespace judge::backend
