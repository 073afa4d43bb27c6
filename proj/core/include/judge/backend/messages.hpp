#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "judge/model/types.hpp"

namespace judge::backend {

enum class Role { System, User, Assistant };

std::string_view to_string(Role role) noexcept;

struct ContentPart {
  enum class Kind { Text, Image };
  Kind kind = Kind::Text;
  std::string text;
  model::ImageRef image;  // referenced, encoded only at transmission

  static ContentPart make_text(std::string text) { return {Kind::Text, std::move(text), {}}; }
  static ContentPart make_image(model::ImageRef image) { return {Kind::Image, {}, std::move(image)}; }

  friend bool operator==(const ContentPart&, const ContentPart&) = default;
};

struct Message {
  Role role = Role::User;
  std::vector<ContentPart> parts;

  /// Concatenated text parts.
  std::string text() const;
  std::size_t image_count() const;

  friend bool operator==(const Message&, const Message&) = default;
};

using MessageSequence = std::vector<Message>;

/// Stable, transport-independent form. Images appear as the SHA-256 of their bytes.
nlohmann::json canonical_json(const MessageSequence& messages);

/// Chat-completion wire form: system turns as plain strings, user turns as
/// content arrays with base64 data-URL image parts.
nlohmann::json wire_json(const MessageSequence& messages);

}  // namespace judge::backend
