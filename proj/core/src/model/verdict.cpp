#include "judge/model/verdict.hpp"

#include <algorithm>

namespace judge::model {

std::string_view to_string(Trigger trigger) noexcept {
  switch (trigger) {
    case Trigger::False: return "false";
    case Trigger::True: return "true";
    case Trigger::NotApplicable: return "not_applicable";
  }
  return "";
}

std::optional<Trigger> parse_trigger(std::string_view text) noexcept {
  if (text == "false") return Trigger::False;
  if (text == "true") return Trigger::True;
  if (text == "not_applicable") return Trigger::NotApplicable;
  return std::nullopt;
}

std::optional<std::string> Verdict::check(DefectClass cls, bool reach, Trigger trigger, bool detect) {
  if (detect && !reach) return "detect without reach";
  if (trigger == Trigger::True && !reach) return "trigger without reach";
  if (cls == DefectClass::Display && trigger != Trigger::NotApplicable) {
    return "display-class verdict must carry trigger=not_applicable";
  }
  if (cls == DefectClass::Interaction && trigger == Trigger::NotApplicable) {
    return "interaction-class verdict must carry a boolean trigger";
  }
  if (cls == DefectClass::Interaction && detect && trigger != Trigger::True) {
    return "interaction detect without trigger";
  }
  return std::nullopt;
}

Verdict Verdict::make(VerdictParts parts) {
  if (auto broken = check(parts.defect_class, parts.reach, parts.trigger, parts.detect)) {
    throw InvariantViolation("illegal verdict: " + *broken);
  }
  if (parts.unsupported_claims > parts.claims) {
    throw InvariantViolation("illegal verdict: more unsupported claims than claims");
  }
  for (const VerifiedDefect& defect : parts.verified) {
    const bool inside = std::any_of(parts.segments.begin(), parts.segments.end(),
                                    [&](const Segment& s) { return s.contains(defect.step); });
    if (!inside) throw InvariantViolation("illegal verdict: finding outside every segment");
  }
  std::sort(parts.verified.begin(), parts.verified.end(), canonical_less);
  return Verdict(std::move(parts));
}

bool operator==(const Verdict& a, const Verdict& b) noexcept {
  const VerdictParts& x = a.parts_;
  const VerdictParts& y = b.parts_;
  return x.defect_class == y.defect_class && x.reach == y.reach && x.trigger == y.trigger &&
         x.detect == y.detect && x.verified == y.verified && x.segments == y.segments &&
         x.diagnostics == y.diagnostics && x.unsupported_claims == y.unsupported_claims &&
         x.claims == y.claims;
}

}  // namespace judge::model
