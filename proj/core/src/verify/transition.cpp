#include "judge/verify/transition.hpp"

namespace judge::verify {

std::vector<Transition> transitions_of(const model::Trajectory& trajectory, const model::Segment& segment) {
  std::vector<Transition> out;
  if (segment.end > trajectory.size() || segment.start >= segment.end) return out;
  out.reserve(segment.end - segment.start);
  for (std::size_t t = segment.start + 1; t <= segment.end; ++t) {
    const model::Step& step = trajectory.at(t);
    out.push_back(Transition{step.pre_observation(), step.action_record(), step.post_observation(), t});
  }
  return out;
}

}  // namespace judge::verify
