#pragma once

#include <atomic>
#include <memory>
#include <semaphore>
#include <span>
#include <string_view>

#include "judge/backend/config.hpp"
#include "judge/backend/mock_rules.hpp"
#include "judge/backend/schemas.hpp"
#include "judge/backend/structured.hpp"
#include "judge/backend/transport.hpp"
#include "judge/retrieval/retriever.hpp"
#include "judge/verify/transition.hpp"

namespace judge::backend {

/// Every judge-model capability the engine uses. Implementations are safe
/// for concurrent use and throw BackendFailure when no usable answer exists.
class JudgeBackend : public retrieval::StateMatcher {
 public:
  virtual DisplayFinding verify_display_state(const model::Observation& observation) = 0;

  virtual InteractionFinding verify_interaction_transition(const model::NavigationTask& task,
                                                           const model::TestBasis& basis,
                                                           std::span<const verify::Transition> history,
                                                           const verify::Transition& current) = 0;

  /// Merged display+interaction judgment of one transition (ablation mode).
  virtual InteractionFinding verify_unified_transition(const model::NavigationTask& task,
                                                       const model::TestBasis& basis,
                                                       std::span<const verify::Transition> history,
                                                       const verify::Transition& current) = 0;

  virtual ConsistencyFinding judge_consistency(const model::DefectClaim& claim,
                                               const model::VerifiedDefect& defect) = 0;

  virtual std::string_view kind() const noexcept = 0;
};

/// Renders the prompt assets and completes them through a transport.
class ModelBackend final : public JudgeBackend {
 public:
  ModelBackend(std::string model_name, int max_retries, int concurrency_budget,
               std::unique_ptr<Transport> transport);

  retrieval::MatchResult match(const model::Observation& observation, model::BasisRole role,
                               const model::TestBasis& basis) override;
  DisplayFinding verify_display_state(const model::Observation& observation) override;
  InteractionFinding verify_interaction_transition(const model::NavigationTask& task,
                                                   const model::TestBasis& basis,
                                                   std::span<const verify::Transition> history,
                                                   const verify::Transition& current) override;
  InteractionFinding verify_unified_transition(const model::NavigationTask& task,
                                               const model::TestBasis& basis,
                                               std::span<const verify::Transition> history,
                                               const verify::Transition& current) override;
  ConsistencyFinding judge_consistency(const model::DefectClaim& claim,
                                       const model::VerifiedDefect& defect) override;
  std::string_view kind() const noexcept override { return "http"; }

 private:
  nlohmann::json complete(const MessageSequence& messages, SchemaId schema);

  CompletionPolicy policy_;
  std::counting_semaphore<> budget_;
  std::unique_ptr<Transport> transport_;
};

/// Deterministic stand-in driven by a MockRuleTable. Stateless.
class MockBackend final : public JudgeBackend {
 public:
  explicit MockBackend(MockRuleTable rules = MockRuleTable::defaults());

  retrieval::MatchResult match(const model::Observation& observation, model::BasisRole role,
                               const model::TestBasis& basis) override;
  DisplayFinding verify_display_state(const model::Observation& observation) override;
  InteractionFinding verify_interaction_transition(const model::NavigationTask& task,
                                                   const model::TestBasis& basis,
                                                   std::span<const verify::Transition> history,
                                                   const verify::Transition& current) override;
  InteractionFinding verify_unified_transition(const model::NavigationTask& task,
                                               const model::TestBasis& basis,
                                               std::span<const verify::Transition> history,
                                               const verify::Transition& current) override;
  ConsistencyFinding judge_consistency(const model::DefectClaim& claim,
                                       const model::VerifiedDefect& defect) override;
  std::string_view kind() const noexcept override { return "mock"; }

  const MockRuleTable& rules() const noexcept { return rules_; }

 private:
  MockRuleTable rules_;
};

/// Builds the backend a config describes (validating it first).
std::unique_ptr<JudgeBackend> make_backend(const BackendConfig& config);

}  // namespace judge::backend
