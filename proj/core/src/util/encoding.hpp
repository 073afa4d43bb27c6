#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace judge::util {

std::string base64_encode(std::string_view bytes);
/// Returns nullopt on malformed input. Whitespace is not tolerated.
std::optional<std::string> base64_decode(std::string_view text);

/// Lower-case hex SHA-256 digest.
std::string sha256_hex(std::string_view bytes);

std::string read_file(const std::string& path);

}  // namespace judge::util
