#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "judge/backend/messages.hpp"
#include "judge/backend/schemas.hpp"
#include "judge/backend/transport.hpp"

namespace judge::backend {

/// Removes a surrounding ``` / ```json fence, if any.
std::string strip_fences(std::string_view text);

/// The first balanced {...} object in the text, honoring string literals.
std::optional<std::string> extract_first_object(std::string_view text);

/// Local repair: parse as-is, then fence-stripped, then the first balanced
/// object. nullopt when none of them is valid JSON.
std::optional<nlohmann::json> parse_lenient(std::string_view text);

inline constexpr std::string_view kCorrectiveInstruction =
    "Your previous reply could not be used: it was not strict JSON matching the required output "
    "format. Reply again with only the JSON object, no Markdown and no code fences.";

struct CompletionPolicy {
  std::string model;
  int max_retries = 2;
};

/// Sends the messages and returns a value conforming to the schema.
///
/// Each reply goes through parse_lenient. A non-conforming reply is re-asked
/// with the original messages, the bad reply and kCorrectiveInstruction; a
/// transport error resends unchanged. At most 1 + max_retries exchanges are
/// made before BackendFailure. AuthError propagates immediately.
nlohmann::json complete_structured(const MessageSequence& messages, SchemaId schema,
                                   const CompletionPolicy& policy, Transport& transport);

}  // namespace judge::backend
