#include "judge/retrieval/retriever.hpp"

#include <optional>

namespace judge::retrieval {

using model::BasisRole;

namespace {

class Scan {
 public:
  Scan(const model::Trajectory& trajectory, const model::TestBasis& basis, StateMatcher& matcher,
       RetrievalResult& out)
      : trajectory_(trajectory),
        basis_(basis),
        matcher_(matcher),
        out_(out),
        precondition_(trajectory.size() + 1),
        evidence_(trajectory.size() + 1) {}

  bool precondition(std::size_t t) {
    auto& cached = precondition_[t];
    if (!cached) {
      const model::Step& step = trajectory_.at(t);
      bool hit = query(step.post_observation(), BasisRole::Precondition);
      if (!hit && t == 1) hit = query(step.pre_observation(), BasisRole::Precondition);
      cached = hit;
    }
    return *cached;
  }

  bool evidence(std::size_t u) {
    auto& cached = evidence_[u];
    if (!cached) cached = query(trajectory_.at(u).post_observation(), BasisRole::Evidence);
    return *cached;
  }

 private:
  bool query(const model::Observation& obs, BasisRole role) {
    MatchResult result = matcher_.match(obs, role, basis_);
    out_.records.push_back(MatchRecord{obs.step, obs.phase, role, result.matched, result.reason});
    return result.matched;
  }

  const model::Trajectory& trajectory_;
  const model::TestBasis& basis_;
  StateMatcher& matcher_;
  RetrievalResult& out_;
  std::vector<std::optional<bool>> precondition_;
  std::vector<std::optional<bool>> evidence_;
};

}  // namespace

RetrievalResult retrieve_segments(const model::Trajectory& trajectory, const model::TestBasis& basis,
                                  StateMatcher& matcher) {
  RetrievalResult result;
  Scan scan(trajectory, basis, matcher, result);
  const std::size_t n = trajectory.size();

  std::size_t t = 1;
  while (t <= n) {
    if (scan.precondition(t)) {
      result.reach = true;
      const std::size_t s = t;
      bool closed = false;
      for (std::size_t u = s + 1; u <= n; ++u) {
        if (scan.evidence(u)) {
          result.segments.push_back(model::Segment{s, u});
          t = u;
          closed = true;
          break;
        }
      }
      // No later evidence exists.
      if (!closed) break;
    }
    ++t;
  }
  return result;
}

std::vector<model::Segment> whole_trajectory_segment(const model::Trajectory& trajectory) {
  if (trajectory.size() < 2) return {};
  return {model::Segment{1, trajectory.size()}};
}

}  // namespace judge::retrieval
