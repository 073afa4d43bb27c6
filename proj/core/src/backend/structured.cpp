#include "judge/backend/structured.hpp"

#include <cctype>

#include "judge/backend/errors.hpp"

namespace judge::backend {

using nlohmann::json;

std::string strip_fences(std::string_view text) {
  std::size_t begin = text.find_first_not_of(" \t\r\n");
  if (begin == std::string_view::npos) return {};
  std::size_t end = text.find_last_not_of(" \t\r\n") + 1;
  std::string_view body = text.substr(begin, end - begin);
  if (body.rfind("```", 0) != 0) return std::string(body);

  std::size_t newline = body.find('\n');
  if (newline == std::string_view::npos) return {};
  body.remove_prefix(newline + 1);  // drops ``` and an optional language tag
  if (body.size() >= 3 && body.substr(body.size() - 3) == "```") body.remove_suffix(3);
  std::size_t last = body.find_last_not_of(" \t\r\n");
  return last == std::string_view::npos ? std::string{} : std::string(body.substr(0, last + 1));
}

std::optional<std::string> extract_first_object(std::string_view text) {
  for (std::size_t start = text.find('{'); start != std::string_view::npos; start = text.find('{', start + 1)) {
    int depth = 0;
    bool in_string = false;
    bool escaped = false;
    for (std::size_t i = start; i < text.size(); ++i) {
      const char c = text[i];
      if (in_string) {
        if (escaped) {
          escaped = false;
        } else if (c == '\\') {
          escaped = true;
        } else if (c == '"') {
          in_string = false;
        }
        continue;
      }
      if (c == '"') {
        in_string = true;
      } else if (c == '{') {
        ++depth;
      } else if (c == '}') {
        if (--depth == 0) {
          std::string candidate(text.substr(start, i - start + 1));
          if (json::accept(candidate)) return candidate;
          break;
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<json> parse_lenient(std::string_view text) {
  if (json direct = json::parse(text, nullptr, false); !direct.is_discarded()) return direct;
  const std::string unfenced = strip_fences(text);
  if (json fenced = json::parse(unfenced, nullptr, false); !fenced.is_discarded()) return fenced;
  if (auto object = extract_first_object(unfenced)) return json::parse(*object);
  return std::nullopt;
}

json complete_structured(const MessageSequence& messages, SchemaId schema, const CompletionPolicy& policy,
                         Transport& transport) {
  const int budget = 1 + std::max(0, policy.max_retries);
  ChatRequest request{policy.model, messages, schema};
  std::string last_problem = "no attempt made";

  for (int attempt = 1; attempt <= budget; ++attempt) {
    std::string content;
    try {
      content = extract_content(transport.exchange(request));
    } catch (const TransportError& e) {
      last_problem = e.what();
      request.messages = messages;
      continue;
    } catch (const std::invalid_argument& e) {
      last_problem = e.what();
      request.messages = messages;
      continue;
    }

    if (auto parsed = parse_lenient(content)) {
      auto problem = conformance_error(schema, *parsed);
      if (!problem) return *parsed;
      last_problem = "reply does not match the " + std::string(to_string(schema)) + " schema: " + *problem;
    } else {
      last_problem = "reply is not JSON";
    }

    request.messages = messages;
    request.messages.push_back(Message{Role::Assistant, {ContentPart::make_text(content)}});
    request.messages.push_back(
        Message{Role::User, {ContentPart::make_text(std::string(kCorrectiveInstruction))}});
  }
  throw BackendFailure("judge backend gave no usable " + std::string(to_string(schema)) + " reply after " +
                           std::to_string(budget) + " attempt(s): " + last_problem,
                       budget);
}

}  // namespace judge::backend
