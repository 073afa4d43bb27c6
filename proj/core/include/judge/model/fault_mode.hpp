#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace judge::model {

enum class DefectClass { Display, Interaction };

/// Preset fault modes. Declaration order is the report column order.
enum class FaultMode {
  ContentRendering,      // DD.ContentRendering (CR)
  ElementLayout,         // DD.ElementLayout (EL)
  NavigationLogicError,  // ID.NavigationLogicError (NLE)
  OperationNoResponse,   // ID.OperationNoResponse (ONR)
  UnexpectedTaskResult,  // ID.UnexpectedTaskResult (UTR)
};

inline constexpr std::array<FaultMode, 5> kAllFaultModes{
    FaultMode::ContentRendering, FaultMode::ElementLayout, FaultMode::NavigationLogicError,
    FaultMode::OperationNoResponse, FaultMode::UnexpectedTaskResult};

constexpr DefectClass defect_class(FaultMode mode) noexcept {
  switch (mode) {
    case FaultMode::ContentRendering:
    case FaultMode::ElementLayout:
      return DefectClass::Display;
    case FaultMode::NavigationLogicError:
    case FaultMode::OperationNoResponse:
    case FaultMode::UnexpectedTaskResult:
      return DefectClass::Interaction;
  }
  return DefectClass::Interaction;
}

/// Dotted identifier, e.g. "ID.OperationNoResponse".
std::string_view to_string(FaultMode mode) noexcept;

/// Two/three letter column code, e.g. "ONR".
std::string_view short_code(FaultMode mode) noexcept;

std::string_view to_string(DefectClass cls) noexcept;

/// Case-sensitive parse of the dotted identifier. Short codes are not accepted.
std::optional<FaultMode> parse_fault_mode(std::string_view text) noexcept;

std::optional<DefectClass> parse_defect_class(std::string_view text) noexcept;

}  // namespace judge::model
