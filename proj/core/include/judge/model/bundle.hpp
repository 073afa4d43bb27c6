#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "judge/model/types.hpp"

namespace judge::model {

enum class ViolationCode {
  MissingField,
  BadValue,
  BadFaultMode,
  EmptyTasks,
  DuplicateTaskId,
  DuplicateCaseId,
  StepGap,
  DanglingImage,
  ClaimOutOfRange,
  CaseMismatch,
  Unreadable,
};

std::string_view to_string(ViolationCode code) noexcept;

struct Violation {
  ViolationCode code;
  std::string path;  // JSON-pointer-like location inside the bundle
  std::string message;
};

/// Every violation found in one bundle, reported together.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::filesystem::path bundle, std::vector<Violation> violations);

  const std::filesystem::path& bundle() const noexcept { return bundle_; }
  const std::vector<Violation>& violations() const noexcept { return violations_; }
  bool has(ViolationCode code) const noexcept;

 private:
  std::filesystem::path bundle_;
  std::vector<Violation> violations_;
};

inline constexpr std::string_view kCaseManifest = "case.json";
inline constexpr std::string_view kTrajectoryManifest = "trajectory.json";
inline constexpr std::string_view kReportFile = "report.json";

/// Loads and validates <case_dir>/case.json.
EvaluationCase validate_case(const std::filesystem::path& case_dir);

/// Loads <run_dir>/trajectory.json and the optional report.json, resolving
/// and checking every screenshot reference against the file system.
Trajectory validate_trajectory(const std::filesystem::path& run_dir, const EvaluationCase& ec);

/// Loads every <cases_dir>/<id>/case.json, sorted by case_id.
std::vector<EvaluationCase> load_cases(const std::filesystem::path& cases_dir);

/// Writes case.json. The inverse of validate_case.
void write_case(const std::filesystem::path& case_dir, const EvaluationCase& ec);

/// Writes trajectory.json and, when the report has claims, report.json.
/// Screenshots are not copied.
void write_trajectory(const std::filesystem::path& run_dir, const Trajectory& trajectory);

}  // namespace judge::model
