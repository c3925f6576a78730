#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace aspectflow {

// Declaration order is the classifier's fixed label order.
enum class Polarity { Negative = 0, Neutral = 1, Positive = 2 };

inline constexpr std::array<Polarity, 3> kLabelOrder{Polarity::Negative, Polarity::Neutral,
                                                      Polarity::Positive};

constexpr std::string_view to_string(Polarity p) noexcept {
  switch (p) {
    case Polarity::Negative: return "negative";
    case Polarity::Neutral: return "neutral";
    case Polarity::Positive: return "positive";
  }
  return "neutral";
}

constexpr std::optional<Polarity> parse_polarity(std::string_view s) noexcept {
  for (Polarity p : kLabelOrder)
    if (to_string(p) == s) return p;
  return std::nullopt;
}

}  // namespace aspectflow
