#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace claimcheck {

// Claim verdict labels. The numeric order is the argmax tie-break order.
enum class Label : std::uint8_t { kSupports = 0, kRefutes = 1, kNotEnoughInfo = 2 };

inline constexpr std::size_t kLabelCount = 3;
inline constexpr std::array<Label, kLabelCount> kAllLabels = {
    Label::kSupports, Label::kRefutes, Label::kNotEnoughInfo};

constexpr std::size_t index_of(Label l) { return static_cast<std::size_t>(l); }

std::string_view to_string(Label label);

// Accepts the FEVER spellings ("SUPPORTS", "REFUTES", "NOT ENOUGH INFO"),
// case-insensitively.
std::optional<Label> parse_label(std::string_view text);

}  // namespace claimcheck
