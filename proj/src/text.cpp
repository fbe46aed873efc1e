#include "claimcheck/text.hpp"

#include <stdexcept>

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include "claimcheck/corpus.hpp"
#include "claimcheck/rng.hpp"

namespace claimcheck {

namespace {

const icu::Normalizer2& nfkc_casefold() {
  static const icu::Normalizer2* instance = [] {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* n = icu::Normalizer2::getNFKCCasefoldInstance(status);
    if (U_FAILURE(status)) throw std::runtime_error("ICU NFKC_Casefold unavailable");
    return n;
  }();
  return *instance;
}

}  // namespace

std::string fold_case(std::string_view text) {
  if (text.empty()) return {};
  icu::UnicodeString src = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString folded = nfkc_casefold().normalize(src, status);
  if (U_FAILURE(status)) folded = src;
  std::string out;
  folded.toUTF8String(out);
  return out;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  const std::string folded = fold_case(text);
  const auto* s = reinterpret_cast<const std::uint8_t*>(folded.data());
  const auto length = static_cast<int32_t>(folded.size());
  int32_t i = 0;
  int32_t start = -1;
  while (i < length) {
    const int32_t at = i;
    UChar32 c;
    U8_NEXT(s, i, length, c);
    const bool word = c >= 0 && u_isalnum(c);
    if (word && start < 0) start = at;
    if (!word && start >= 0) {
      tokens.emplace_back(folded, start, at - start);
      start = -1;
    }
  }
  if (start >= 0) tokens.emplace_back(folded, start, length - start);
  return tokens;
}

std::u32string decode_utf8(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  const auto* s = reinterpret_cast<const std::uint8_t*>(text.data());
  const auto length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    UChar32 c;
    U8_NEXT(s, i, length, c);
    out.push_back(c < 0 ? U'\uFFFD' : static_cast<char32_t>(c));
  }
  return out;
}

std::uint64_t ngram_hash64(std::span<const std::string> tokens) {
  std::uint64_t h = fnv1a64("");
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) h = fnv1a64("\t", h);
    h = fnv1a64(tokens[i], h);
  }
  return mix64(h);
}

}  // namespace claimcheck
