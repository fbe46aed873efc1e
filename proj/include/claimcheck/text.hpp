#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace claimcheck {

// NFKC-normalized, case-folded tokens split on every non-alphanumeric code
// point. No stopword removal.
std::vector<std::string> tokenize(std::string_view text);

// NFKC + case folding of a whole string, separators untouched.
std::string fold_case(std::string_view text);

// Decodes UTF-8 to scalar values; invalid sequences become U+FFFD.
std::u32string decode_utf8(std::string_view text);

inline constexpr std::string_view kNgramHashName = "fnv1a64-splitmix";

// Stable 64-bit hash of the tab-joined tokens (1 or 2 of them).
std::uint64_t ngram_hash64(std::span<const std::string> tokens);

// Bin of an n-gram in [0, bin_count). bin_count must be a power of two.
inline std::uint32_t hash_ngram(std::span<const std::string> tokens,
                                std::uint64_t bin_count) {
  return static_cast<std::uint32_t>(ngram_hash64(tokens) & (bin_count - 1));
}

}  // namespace claimcheck
