#include <gtest/gtest.h>

#include <random>

#include "builders.hpp"
#include "fakes.hpp"
#include "judge/backend/backend.hpp"
#include "judge/backend/errors.hpp"
#include "judge/retrieval/retriever.hpp"
#include "oracles.hpp"

using namespace judge;
using judge::testing::StepFlags;

namespace {

std::vector<StepFlags> flags_at(std::size_t n, std::vector<std::size_t> pre, std::vector<std::size_t> ev) {
  std::vector<StepFlags> flags(n);
  for (auto p : pre) flags[p - 1].precondition = true;
  for (auto e : ev) flags[e - 1].evidence = true;
  return flags;
}

retrieval::RetrievalResult run(const std::vector<StepFlags>& flags, StepFlags pre_flag = {}) {
  std::vector<std::string> posts(flags.size(), "state");
  auto t = judge::testing::trajectory_from_posts(posts);
  judge::testing::FlagMatcher matcher(flags, pre_flag);
  return retrieval::retrieve_segments(t, model::TestBasis{}, matcher);
}

using Segs = std::vector<model::Segment>;

}  // namespace

TEST(Retriever, EmptyTrajectory) {
  auto r = run({});
  EXPECT_FALSE(r.reach);
  EXPECT_TRUE(r.segments.empty());
  EXPECT_TRUE(r.records.empty());
}

TEST(Retriever, TwoSegments) {
  auto r = run(flags_at(6, {2, 5}, {4, 6}));
  EXPECT_TRUE(r.reach);
  EXPECT_EQ(r.segments, (Segs{{2, 4}, {5, 6}}));
}

TEST(Retriever, PreconditionAtLastStepOnly) {
  auto r = run(flags_at(5, {5}, {}));
  EXPECT_TRUE(r.reach);
  EXPECT_TRUE(r.segments.empty());
}

TEST(Retriever, FirstEvidenceClosesSegment) {
  auto r = run(flags_at(6, {1, 4}, {3, 5}));
  EXPECT_EQ(r.segments, (Segs{{1, 3}, {4, 5}}));
}

TEST(Retriever, PreconditionOnlyAtOneWithEvidenceThreeAndFive) {
  auto r = run(flags_at(5, {1}, {3, 5}));
  EXPECT_EQ(r.segments, (Segs{{1, 3}}));
}

TEST(Retriever, SecondPreconditionAbsorbedByInnerScan) {
  auto r = run(flags_at(3, {1, 2}, {3}));
  EXPECT_EQ(r.segments, (Segs{{1, 3}}));
}

TEST(Retriever, SameStepBothRolesNeverFormsSegment) {
  auto r = run(flags_at(2, {2}, {2}));
  EXPECT_TRUE(r.reach);
  EXPECT_TRUE(r.segments.empty());
}

TEST(Retriever, StartingOnTargetPageMatchesViaPreState) {
  auto r = run(flags_at(3, {}, {2}), StepFlags{true, false});
  EXPECT_TRUE(r.reach);
  EXPECT_EQ(r.segments, (Segs{{1, 2}}));
}

TEST(Retriever, EvidenceWithoutPreconditionIsNotReach) {
  auto r = run(flags_at(4, {}, {1, 2, 3, 4}));
  EXPECT_FALSE(r.reach);
  EXPECT_TRUE(r.segments.empty());
}

TEST(Oracle, Examples) {
  using judge::testing::brute_force_segments;
  EXPECT_TRUE(brute_force_segments(std::vector<StepFlags>(7)).empty());
  EXPECT_EQ(brute_force_segments(flags_at(3, {1, 2}, {3})), (Segs{{1, 3}}));
  EXPECT_EQ(brute_force_segments(flags_at(10, {1, 3, 5, 7, 9}, {2, 4, 6, 8, 10})),
            (Segs{{1, 2}, {3, 4}, {5, 6}, {7, 8}, {9, 10}}));
}

TEST(Retriever, MatchesOracleOnRandomSequences) {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<std::size_t> length(0, 50);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t n = length(rng);
    const double p_pre = unit(rng), p_ev = unit(rng);
    std::vector<StepFlags> flags(n);
    for (auto& f : flags) {
      f.precondition = unit(rng) < p_pre;
      f.evidence = unit(rng) < p_ev;
    }
    std::vector<std::string> posts(n, "s");
    auto t = judge::testing::trajectory_from_posts(posts);
    judge::testing::FlagMatcher matcher(flags);
    auto r = retrieval::retrieve_segments(t, model::TestBasis{}, matcher);

    ASSERT_EQ(r.segments, judge::testing::brute_force_segments(flags)) << "trial " << trial;
    ASSERT_EQ(r.reach, judge::testing::brute_force_reach(flags)) << "trial " << trial;
    ASSERT_LE(matcher.calls(), 2 * n);
    for (const auto& [key, count] : matcher.per_key()) ASSERT_EQ(count, 1);
    for (std::size_t i = 0; i < r.segments.size(); ++i) {
      const auto& s = r.segments[i];
      ASSERT_LT(s.start, s.end);
      ASSERT_TRUE(flags[s.start - 1].precondition);
      ASSERT_TRUE(flags[s.end - 1].evidence);
      for (std::size_t k = s.start + 1; k < s.end; ++k) ASSERT_FALSE(flags[k - 1].evidence);
      if (i > 0) {
        ASSERT_GT(s.start, r.segments[i - 1].end);
      }
    }
  }
}

TEST(Retriever, MatcherFailurePropagates) {
  backend::MockBackend mock;
  judge::testing::FailingBackend failing(mock, judge::testing::FailingBackend::Target::Match);
  auto t = judge::testing::trajectory_from_posts({"a", "b"});
  EXPECT_THROW(retrieval::retrieve_segments(t, model::TestBasis{}, failing), backend::BackendFailure);
}

TEST(Retriever, RecordsEveryQuery) {
  auto r = run(flags_at(3, {2}, {3}));
  ASSERT_FALSE(r.records.empty());
  EXPECT_EQ(r.records.front().step, 1u);
  EXPECT_EQ(r.records.back().role, model::BasisRole::Evidence);
  EXPECT_TRUE(r.records.back().matched);
}

TEST(Retriever, WholeTrajectorySegment) {
  EXPECT_TRUE(retrieval::whole_trajectory_segment(judge::testing::trajectory_from_posts({"a"})).empty());
  EXPECT_EQ(retrieval::whole_trajectory_segment(judge::testing::trajectory_from_posts({"a", "b", "c"})),
            (Segs{{1, 3}}));
}
