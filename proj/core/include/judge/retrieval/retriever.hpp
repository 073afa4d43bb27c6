#pragma once

#include <string>
#include <vector>

#include "judge/model/types.hpp"

namespace judge::retrieval {

struct MatchResult {
  bool matched = false;
  std::string reason;

  friend bool operator==(const MatchResult&, const MatchResult&) = default;
};

/// State-match capability consulted by the retriever.
///
/// Implementations may throw backend::BackendFailure; the retriever does not
/// catch it, so a failing matcher aborts the trajectory instead of reading
/// as reach=false.
class StateMatcher {
 public:
  virtual ~StateMatcher() = default;
  virtual MatchResult match(const model::Observation& observation, model::BasisRole role,
                            const model::TestBasis& basis) = 0;
};

struct MatchRecord {
  std::size_t step = 0;
  model::Phase phase = model::Phase::Post;
  model::BasisRole role = model::BasisRole::Precondition;
  bool matched = false;
  std::string reason;
};

struct RetrievalResult {
  bool reach = false;
  std::vector<model::Segment> segments;
  std::vector<MatchRecord> records;  // every matcher query, in call order
};

/// Greedy forward scan over the trajectory.
///
/// For t = 1..n: on the first precondition match at s, scan u = s+1..n for the
/// first evidence match, emit [s, u] and resume at u+1. A precondition match
/// with no later evidence sets reach but emits nothing. The observation for
/// step t is its post-state; step 1 additionally tries its pre-state for the
/// precondition role. Each (step, role) is queried at most once.
RetrievalResult retrieve_segments(const model::Trajectory& trajectory, const model::TestBasis& basis,
                                  StateMatcher& matcher);

/// The whole trajectory as one segment, used when retrieval is ablated.
/// Empty when the trajectory has fewer than two steps.
std::vector<model::Segment> whole_trajectory_segment(const model::Trajectory& trajectory);

}  // namespace judge::retrieval
