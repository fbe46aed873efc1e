#include "claimcheck/labels.hpp"

#include <cctype>
#include <string>

namespace claimcheck {

std::string_view to_string(Label label) {
  switch (label) {
    case Label::kSupports:
      return "SUPPORTS";
    case Label::kRefutes:
      return "REFUTES";
    case Label::kNotEnoughInfo:
      return "NOT ENOUGH INFO";
  }
  return "?";
}

std::optional<Label> parse_label(std::string_view text) {
  std::string upper;
  for (char c : text) upper += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (Label l : kAllLabels)
    if (upper == to_string(l)) return l;
  return std::nullopt;
}

}  // namespace claimcheck
