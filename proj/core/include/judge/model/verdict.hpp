#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "judge/model/types.hpp"

namespace judge::model {

/// Trigger is tri-state; display defects have no trigger act.
enum class Trigger { False, True, NotApplicable };

std::string_view to_string(Trigger trigger) noexcept;
std::optional<Trigger> parse_trigger(std::string_view text) noexcept;

struct AuditEntry {
  std::string key;
  std::string value;

  friend bool operator==(const AuditEntry&, const AuditEntry&) = default;
};

class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Everything needed to assemble a Verdict.
struct VerdictParts {
  DefectClass defect_class = DefectClass::Display;
  bool reach = false;
  Trigger trigger = Trigger::NotApplicable;
  bool detect = false;
  std::vector<VerifiedDefect> verified;
  std::vector<Segment> segments;
  std::vector<AuditEntry> diagnostics;
  /// Number of agent claims not consistent with any verified defect.
  std::size_t unsupported_claims = 0;
  std::size_t claims = 0;
};

/// Stage verdict for one trajectory run.
///
/// Only constructible through make(), which rejects combinations where
/// detect holds without reach, an interaction detect lacks a trigger, or the
/// trigger value does not fit the defect class. Findings are stored in
/// canonical order so headline() is the earliest by step.
class Verdict {
 public:
  static Verdict make(VerdictParts parts);

  /// Returns a description of the first broken invariant, or nullopt.
  static std::optional<std::string> check(DefectClass cls, bool reach, Trigger trigger, bool detect);

  DefectClass defect_class() const noexcept { return parts_.defect_class; }
  bool reach() const noexcept { return parts_.reach; }
  Trigger trigger() const noexcept { return parts_.trigger; }
  bool detect() const noexcept { return parts_.detect; }
  const std::vector<VerifiedDefect>& verified() const noexcept { return parts_.verified; }
  const std::vector<Segment>& segments() const noexcept { return parts_.segments; }
  const std::vector<AuditEntry>& diagnostics() const noexcept { return parts_.diagnostics; }
  std::size_t unsupported_claims() const noexcept { return parts_.unsupported_claims; }
  std::size_t claims() const noexcept { return parts_.claims; }
  bool has_unsupported_claim() const noexcept { return parts_.unsupported_claims > 0; }

  const VerifiedDefect* headline() const noexcept {
    return parts_.verified.empty() ? nullptr : &parts_.verified.front();
  }

  friend bool operator==(const Verdict& a, const Verdict& b) noexcept;

 private:
  explicit Verdict(VerdictParts parts) : parts_(std::move(parts)) {}

  VerdictParts parts_;
};

}  // namespace judge::model
