#include "judge/backend/backend.hpp"
#include "judge/backend/errors.hpp"
#include "judge/backend/prompts.hpp"

namespace judge::backend {

namespace {

class BudgetSlot {
 public:
  explicit BudgetSlot(std::counting_semaphore<>& budget) : budget_(budget) { budget_.acquire(); }
  ~BudgetSlot() { budget_.release(); }
  BudgetSlot(const BudgetSlot&) = delete;
  BudgetSlot& operator=(const BudgetSlot&) = delete;

 private:
  std::counting_semaphore<>& budget_;
};

}  // namespace

ModelBackend::ModelBackend(std::string model_name, int max_retries, int concurrency_budget,
                           std::unique_ptr<Transport> transport)
    : policy_{std::move(model_name), max_retries},
      budget_(std::max(1, concurrency_budget)),
      transport_(std::move(transport)) {}

nlohmann::json ModelBackend::complete(const MessageSequence& messages, SchemaId schema) {
  BudgetSlot slot(budget_);
  return complete_structured(messages, schema, policy_, *transport_);
}

retrieval::MatchResult ModelBackend::match(const model::Observation& observation, model::BasisRole role,
                                           const model::TestBasis& basis) {
  auto messages = render_prompt(TemplateId::Retrieval, retrieval_context(observation, basis.description(role)));
  return parse_match(complete(messages, SchemaId::Match));
}

DisplayFinding ModelBackend::verify_display_state(const model::Observation& observation) {
  auto messages = render_prompt(TemplateId::Display, display_context(observation));
  return parse_display(complete(messages, SchemaId::Display));
}

InteractionFinding ModelBackend::verify_interaction_transition(const model::NavigationTask& task,
                                                               const model::TestBasis& basis,
                                                               std::span<const verify::Transition> history,
                                                               const verify::Transition& current) {
  auto messages = render_prompt(TemplateId::Interaction, interaction_context(task, basis, history, current));
  return parse_interaction(complete(messages, SchemaId::Interaction));
}

InteractionFinding ModelBackend::verify_unified_transition(const model::NavigationTask& task,
                                                           const model::TestBasis& basis,
                                                           std::span<const verify::Transition> history,
                                                           const verify::Transition& current) {
  auto messages = render_prompt(TemplateId::Unified, interaction_context(task, basis, history, current));
  return parse_unified(complete(messages, SchemaId::Unified));
}

ConsistencyFinding ModelBackend::judge_consistency(const model::DefectClaim& claim,
                                                   const model::VerifiedDefect& defect) {
  auto messages = render_prompt(TemplateId::Consistency, consistency_context(claim, defect));
  return parse_consistency(complete(messages, SchemaId::Consistency));
}

std::unique_ptr<JudgeBackend> make_backend(const BackendConfig& config) {
  config.validate();
  if (config.kind == BackendKind::Mock) return std::make_unique<MockBackend>(*config.mock_rules);

  std::unique_ptr<Transport> transport;
  if (config.replay_cassette) {
    transport = std::make_unique<CassetteTransport>(Cassette::load(*config.replay_cassette));
  } else {
    transport = std::make_unique<HttpTransport>(
        HttpSettings{config.base_url, config.resolve_api_key(), config.request_timeout});
  }
  if (config.record_cassette) {
    transport = std::make_unique<RecordingTransport>(std::move(transport), *config.record_cassette);
  }
  return std::make_unique<ModelBackend>(config.model_name, config.max_retries, config.concurrency_budget,
                                        std::move(transport));
}

}  // namespace judge::backend
