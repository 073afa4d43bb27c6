#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "judge/model/fault_mode.hpp"

namespace judge::model {

enum class BasisRole { Precondition, Trigger, Evidence };

std::string_view to_string(BasisRole role) noexcept;
std::optional<BasisRole> parse_basis_role(std::string_view text) noexcept;

/// State-level description of what a valid trigger process must pass through.
struct TestBasis {
  std::string precondition;
  std::string trigger;  // stored and shown to verifiers, never matched
  std::string evidence;
  /// Marker tokens used by the mock backend in place of semantic matching.
  std::map<BasisRole, std::string> deterministic_labels;

  const std::string& description(BasisRole role) const noexcept;
  std::optional<std::string> label(BasisRole role) const;

  friend bool operator==(const TestBasis&, const TestBasis&) = default;
};

struct NavigationTask {
  std::string task_id;
  std::string instruction;
  std::string entry_point;

  friend bool operator==(const NavigationTask&, const NavigationTask&) = default;
};

struct Scenario {
  std::string reset_notes;
  std::vector<std::string> initial_conditions;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct EvaluationCase {
  std::string case_id;
  std::string app_id;
  std::string app_category;
  FaultMode fault_mode = FaultMode::ContentRendering;
  std::string defect_description;
  Scenario scenario;
  TestBasis test_basis;
  std::vector<NavigationTask> tasks;

  DefectClass defect_class() const noexcept { return model::defect_class(fault_mode); }
  const NavigationTask* find_task(std::string_view task_id) const noexcept;

  friend bool operator==(const EvaluationCase&, const EvaluationCase&) = default;
};

/// Screenshot payload. Bundle images are referenced by path; the assist
/// service may carry the bytes inline instead.
struct ImageRef {
  std::string relative_path;
  std::filesystem::path resolved_path;
  std::string inline_bytes;

  bool empty() const noexcept { return relative_path.empty() && inline_bytes.empty(); }
  /// Reads the file (or returns the inline payload). Throws std::runtime_error on I/O failure.
  std::string read_bytes() const;

  friend bool operator==(const ImageRef& a, const ImageRef& b) noexcept {
    return a.relative_path == b.relative_path && a.inline_bytes == b.inline_bytes;
  }
};

enum class Phase { Pre, Post };

/// A single GUI state as presented to a backend.
struct Observation {
  std::size_t step = 0;  // 1-based ordinal of the owning step, 0 when detached
  Phase phase = Phase::Post;
  ImageRef image;
  std::optional<std::string> text;

  friend bool operator==(const Observation&, const Observation&) = default;
};

struct ActionRecord {
  std::string thought;
  std::string action;
  std::string target;
  bool hit = true;  // carried verbatim from the agent log

  friend bool operator==(const ActionRecord&, const ActionRecord&) = default;
};

struct Step {
  std::size_t index = 0;
  std::string thought;
  std::string action;
  std::string target;
  bool hit = true;
  ImageRef pre_image;
  ImageRef post_image;
  std::optional<std::string> pre_text;
  std::optional<std::string> post_text;

  Observation pre_observation() const;
  Observation post_observation() const;
  ActionRecord action_record() const;

  friend bool operator==(const Step&, const Step&) = default;
};

struct DefectClaim {
  std::size_t step = 0;
  std::optional<FaultMode> claimed_fault_mode;
  std::string description;

  friend bool operator==(const DefectClaim&, const DefectClaim&) = default;
};

/// Absent report files load as an empty claim list.
struct DefectReport {
  std::vector<DefectClaim> claims;

  bool empty() const noexcept { return claims.empty(); }
  friend bool operator==(const DefectReport&, const DefectReport&) = default;
};

struct Trajectory {
  std::string run_id;
  std::string model_id;
  std::string case_id;
  std::string task_id;
  std::vector<Step> steps;
  DefectReport report;

  std::size_t size() const noexcept { return steps.size(); }
  /// 1-based access.
  const Step& at(std::size_t ordinal) const { return steps.at(ordinal - 1); }

  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

/// Inclusive step range [start, end]; start matched the precondition and
/// end matched the evidence.
struct Segment {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t precondition_at() const noexcept { return start; }
  std::size_t evidence_at() const noexcept { return end; }
  bool contains(std::size_t step) const noexcept { return step >= start && step <= end; }

  friend bool operator==(const Segment&, const Segment&) = default;
};

struct VerifiedDefect {
  FaultMode fault_mode = FaultMode::ContentRendering;
  std::size_t step = 0;
  std::vector<std::string> evidence;
  std::string reason;
  std::string locator;  // location hint (display) or effect summary (interaction)

  friend bool operator==(const VerifiedDefect&, const VerifiedDefect&) = default;
};

/// Canonical order: by step, then fault mode, then text fields.
bool canonical_less(const VerifiedDefect& a, const VerifiedDefect& b);

}  // namespace judge::model
