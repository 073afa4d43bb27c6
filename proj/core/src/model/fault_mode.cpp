#include "judge/model/fault_mode.hpp"

namespace judge::model {

std::string_view to_string(FaultMode mode) noexcept {
  switch (mode) {
    case FaultMode::ContentRendering: return "DD.ContentRendering";
    case FaultMode::ElementLayout: return "DD.ElementLayout";
    case FaultMode::NavigationLogicError: return "ID.NavigationLogicError";
    case FaultMode::OperationNoResponse: return "ID.OperationNoResponse";
    case FaultMode::UnexpectedTaskResult: return "ID.UnexpectedTaskResult";
  }
  return "";
}

std::string_view short_code(FaultMode mode) noexcept {
  switch (mode) {
    case FaultMode::ContentRendering: return "CR";
    case FaultMode::ElementLayout: return "EL";
    case FaultMode::NavigationLogicError: return "NLE";
    case FaultMode::OperationNoResponse: return "ONR";
    case FaultMode::UnexpectedTaskResult: return "UTR";
  }
  return "";
}

std::string_view to_string(DefectClass cls) noexcept {
  return cls == DefectClass::Display ? "display" : "interaction";
}

std::optional<FaultMode> parse_fault_mode(std::string_view text) noexcept {
  for (FaultMode mode : kAllFaultModes) {
    if (to_string(mode) == text) return mode;
  }
  return std::nullopt;
}

std::optional<DefectClass> parse_defect_class(std::string_view text) noexcept {
  if (text == "display") return DefectClass::Display;
  if (text == "interaction") return DefectClass::Interaction;
  return std::nullopt;
}

}  // namespace judge::model
