#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace aspectflow::text {

constexpr bool is_space(char c) noexcept {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}
constexpr bool is_alpha(char c) noexcept { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
constexpr bool is_digit(char c) noexcept { return c >= '0' && c <= '9'; }
constexpr char to_lower(char c) noexcept { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

std::string_view trim(std::string_view s) noexcept;
std::string to_lower(std::string_view s);

// Trim and collapse internal whitespace runs to one space.
std::string normalize_whitespace(std::string_view s);

// Shared aspect normalization: lowercase, trim, collapse whitespace. No stemming.
std::string normalize_aspect(std::string_view s);

// Replaces every invalid UTF-8 sequence with U+FFFD.
std::string sanitize_utf8(std::string_view s);

std::vector<std::string_view> split_lines(std::string_view s);

bool is_all_digits(std::string_view s) noexcept;

}  // namespace aspectflow::text
