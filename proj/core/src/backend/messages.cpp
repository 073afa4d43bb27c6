#include "judge/backend/messages.hpp"

#include "util/encoding.hpp"

namespace judge::backend {

using nlohmann::json;

std::string_view to_string(Role role) noexcept {
  switch (role) {
    case Role::System: return "system";
    case Role::User: return "user";
    case Role::Assistant: return "assistant";
  }
  return "";
}

std::string Message::text() const {
  std::string out;
  for (const ContentPart& part : parts) {
    if (part.kind != ContentPart::Kind::Text) continue;
    if (!out.empty()) out += '\n';
    out += part.text;
  }
  return out;
}

std::size_t Message::image_count() const {
  std::size_t count = 0;
  for (const ContentPart& part : parts) count += part.kind == ContentPart::Kind::Image ? 1 : 0;
  return count;
}

json canonical_json(const MessageSequence& messages) {
  json out = json::array();
  for (const Message& message : messages) {
    json parts = json::array();
    for (const ContentPart& part : message.parts) {
      if (part.kind == ContentPart::Kind::Text) {
        parts.push_back(json{{"text", part.text}});
      } else {
        parts.push_back(json{{"image_sha256", util::sha256_hex(part.image.read_bytes())}});
      }
    }
    out.push_back(json{{"role", to_string(message.role)}, {"parts", std::move(parts)}});
  }
  return out;
}

json wire_json(const MessageSequence& messages) {
  json out = json::array();
  for (const Message& message : messages) {
    if (message.image_count() == 0) {
      out.push_back(json{{"role", to_string(message.role)}, {"content", message.text()}});
      continue;
    }
    json content = json::array();
    for (const ContentPart& part : message.parts) {
      if (part.kind == ContentPart::Kind::Text) {
        content.push_back(json{{"type", "text"}, {"text", part.text}});
      } else {
        const std::string url = "data:image/png;base64," + util::base64_encode(part.image.read_bytes());
        content.push_back(json{{"type", "image_url"}, {"image_url", {{"url", url}}}});
      }
    }
    out.push_back(json{{"role", to_string(message.role)}, {"content", std::move(content)}});
  }
  return out;
}

}  // namespace judge::backend
