#pragma once

#include <cstddef>
#include <vector>

#include "judge/model/types.hpp"

namespace judge::verify {

/// (o_t, a_t, o_{t+1}) for step t, where o_t is the state the action was
/// taken on and o_{t+1} the state it produced. ordinal is t.
struct Transition {
  model::Observation pre;
  model::ActionRecord action;
  model::Observation post;
  std::size_t ordinal = 0;

  friend bool operator==(const Transition&, const Transition&) = default;
};

/// Transitions accumulated inside the current segment.
using InteractionHistory = std::vector<Transition>;

/// Transitions of segment [s, u]: one per step t in s+1..u. The action of the
/// precondition step itself led into the segment and is not part of it.
std::vector<Transition> transitions_of(const model::Trajectory& trajectory, const model::Segment& segment);

}  // namespace judge::verify
