#pragma once

#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "judge/backend/messages.hpp"
#include "judge/backend/schemas.hpp"
#include "judge/model/types.hpp"
#include "judge/verify/transition.hpp"

namespace judge::backend {

enum class TemplateId { Retrieval, Display, Interaction, Consistency, Unified };

std::string_view to_string(TemplateId id) noexcept;
std::optional<TemplateId> parse_template_id(std::string_view text) noexcept;

/// A versioned prompt asset. Placeholders are written `{name}` with
/// name in [a-z_]; every other brace is literal text.
struct PromptTemplate {
  TemplateId id = TemplateId::Retrieval;
  int version = 0;
  SchemaId output_schema = SchemaId::Match;
  std::string system_body;
  std::string user_body;
  std::set<std::string> required_context;
  std::set<std::string> optional_context;
};

/// The built-in template for an id. Assets are compiled into the library.
const PromptTemplate& prompt_template(TemplateId id);

/// Parses an asset file (header lines, then [system] and [user] sections).
PromptTemplate parse_prompt_asset(std::string_view text);

struct ImageAttachment {
  std::string label;
  model::ImageRef image;
};

struct PromptContext {
  std::map<std::string, std::string> values;
  std::vector<ImageAttachment> images;
};

/// System turn from the template body, user turn from the user body followed
/// by each image (label text, then the image part). Throws MissingPlaceholder
/// when a required placeholder is absent or empty.
MessageSequence render_prompt(TemplateId id, const PromptContext& context);
MessageSequence render_prompt(const PromptTemplate& tmpl, const PromptContext& context);

// Typed context builders for each capability.
PromptContext retrieval_context(const model::Observation& observation, std::string key_point);
PromptContext display_context(const model::Observation& observation);
PromptContext interaction_context(const model::NavigationTask& task, const model::TestBasis& basis,
                                  std::span<const verify::Transition> history,
                                  const verify::Transition& current);
PromptContext consistency_context(const model::DefectClaim& claim, const model::VerifiedDefect& defect);

std::string format_history_entry(std::size_t position, const verify::Transition& transition);
std::string format_current_step(const verify::Transition& transition);

}  // namespace judge::backend
