#include "claimcheck/ner.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>
#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include "claimcheck/errors.hpp"
#include "claimcheck/kernels.hpp"
#include "claimcheck/text.hpp"

namespace claimcheck {

namespace {

struct Word {
  std::size_t begin = 0;
  std::size_t end = 0;
  bool capitalized = false;
  bool spaced_from_previous = false;  // only spaces since the previous word
};

bool is_joiner(UChar32 c) { return c == '\'' || c == 0x2019 || c == '-'; }

std::vector<Word> split_words(std::string_view text) {
  std::vector<Word> words;
  const auto* s = reinterpret_cast<const std::uint8_t*>(text.data());
  const auto length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  bool only_spaces = true;
  while (i < length) {
    const int32_t at = i;
    UChar32 c;
    U8_NEXT(s, i, length, c);
    if (c < 0 || !u_isalnum(c)) {
      if (c != ' ') only_spaces = false;
      continue;
    }
    Word w;
    w.begin = static_cast<std::size_t>(at);
    w.capitalized = u_isupper(c) || u_istitle(c);
    w.spaced_from_previous = only_spaces;
    int32_t end = i;
    while (end < length) {
      int32_t next = end;
      UChar32 d;
      U8_NEXT(s, next, length, d);
      if (d >= 0 && u_isalnum(d)) {
        end = next;
        continue;
      }
      // An apostrophe or hyphen stays inside the word when a letter follows.
      if (d >= 0 && is_joiner(d) && next < length) {
        int32_t after = next;
        UChar32 e;
        U8_NEXT(s, after, length, e);
        if (e >= 0 && u_isalnum(e)) {
          end = after;
          continue;
        }
      }
      break;
    }
    i = end;
    w.end = static_cast<std::size_t>(end);
    words.push_back(w);
    only_spaces = true;
  }
  return words;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

}  // namespace

const std::set<std::string>& HeuristicExtractor::default_stopwords() {
  static const std::set<std::string> words = {
      "a",    "an",    "the",   "in",    "on",   "at",    "of",  "for",  "to",
      "and",  "but",   "or",    "this",  "that", "these", "those", "there", "it",
      "he",   "she",   "they",  "we",    "i",    "his",   "her", "its",  "their",
      "is",   "was",   "by",    "from",  "with", "as",    "if",  "when", "while",
      "after", "before", "during", "since"};
  return words;
}

HeuristicExtractor::HeuristicExtractor() : stopwords_(default_stopwords()) {}

HeuristicExtractor::HeuristicExtractor(std::set<std::string> leading_stopwords) {
  for (const auto& w : leading_stopwords) stopwords_.insert(fold_case(w));
}

std::vector<EntityMention> HeuristicExtractor::extract(std::int64_t,
                                                       std::string_view claim) const {
  const std::vector<Word> words = split_words(claim);
  std::vector<EntityMention> out;
  std::size_t i = 0;
  while (i < words.size()) {
    if (!words[i].capitalized) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < words.size() && words[j].capitalized && words[j].spaced_from_previous) ++j;
    std::size_t first = i;
    const std::size_t last = j;  // exclusive
    i = j;
    if (first == 0 && last - first == 1) continue;
    while (first < last &&
           stopwords_.count(fold_case(claim.substr(
               words[first].begin, words[first].end - words[first].begin))) > 0)
      ++first;
    if (first == last) continue;
    EntityMention m{std::string(claim.substr(words[first].begin,
                                             words[last - 1].end - words[first].begin)),
                    EntityMention::Source::kHeuristic};
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(std::move(m));
  }
  return out;
}

ExternalEntities ExternalEntities::parse(std::istream& in) {
  ExternalEntities result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    nlohmann::json row;
    try {
      row = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(e.what(), line_no);
    }
    const char* key = row.contains("claim_id") ? "claim_id" : "id";
    if (!row.contains(key) || !row[key].is_number_integer() || !row.contains("entities") ||
        !row["entities"].is_array())
      throw ParseError("expected {id, entities:[...]}", line_no);
    auto& mentions = result.by_claim_[row[key].get<std::int64_t>()];
    for (const auto& e : row["entities"]) {
      if (!e.is_string()) throw ParseError("entity must be a string", line_no);
      std::string surface = trim(e.get<std::string>());
      if (surface.empty()) continue;
      EntityMention m{std::move(surface), EntityMention::Source::kExternal};
      if (std::find(mentions.begin(), mentions.end(), m) == mentions.end())
        mentions.push_back(std::move(m));
    }
  }
  return result;
}

ExternalEntities ExternalEntities::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  return parse(in);
}

std::vector<EntityMention> ExternalEntities::extract(std::int64_t claim_id,
                                                     std::string_view) const {
  auto it = by_claim_.find(claim_id);
  return it == by_claim_.end() ? std::vector<EntityMention>{} : it->second;
}

std::string normalize_title(std::string_view title) {
  static constexpr std::pair<std::string_view, std::string_view> kEscapes[] = {
      {"-LRB-", "("}, {"-RRB-", ")"}, {"-LSB-", "["}, {"-RSB-", "]"},
      {"-LCB-", "{"}, {"-RCB-", "}"}, {"-COLON-", ":"}};
  std::string s;
  s.reserve(title.size());
  for (std::size_t i = 0; i < title.size();) {
    bool replaced = false;
    if (title[i] == '-') {
      for (const auto& [escape, plain] : kEscapes) {
        if (title.substr(i, escape.size()) == escape) {
          s += plain;
          i += escape.size();
          replaced = true;
          break;
        }
      }
    }
    if (replaced) continue;
    s += title[i] == '_' ? ' ' : title[i];
    ++i;
  }
  return fold_case(s);
}

TitleMatcher::TitleMatcher(const Corpus& corpus) : corpus_(&corpus) {
  if (corpus.empty()) throw ValidationError("cannot match titles against an empty corpus");
  titles_.reserve(corpus.size());
  page_ids_.reserve(corpus.size());
  for (const Document& doc : corpus.documents()) {
    titles_.push_back(decode_utf8(normalize_title(doc.page_id)));
    page_ids_.push_back(doc.page_id);
  }
}

TitleMatch TitleMatcher::match(const EntityMention& entity, Execution exec) const {
  const std::u32string needle = decode_utf8(normalize_title(entity.surface));
  const kernels::TitleHit hit = kernels::title_scan(needle, titles_, page_ids_, exec);
  return {entity, page_ids_[hit.index], hit.distance};
}

std::vector<SentenceRef> candidate_sentences_for_claim(
    const TitleMatcher& matcher, const EntityExtractor& extractor, std::int64_t claim_id,
    std::string_view claim, const NerRetrievalOptions& options,
    std::vector<TitleMatch>* matches) {
  std::vector<SentenceRef> refs;
  for (const EntityMention& mention : extractor.extract(claim_id, claim)) {
    TitleMatch m = matcher.match(mention);
    if (m.distance > options.max_distance) continue;
    const Document* doc = matcher.corpus().find(m.page_id);
    for (const auto& line : doc->lines)
      if (!line.empty()) refs.push_back({doc->page_id, line.line_number});
    if (matches != nullptr) matches->push_back(std::move(m));
  }
  std::sort(refs.begin(), refs.end());
  refs.erase(std::unique(refs.begin(), refs.end()), refs.end());
  return refs;
}

std::vector<SentenceRef> candidate_sentences_for_claim(const Corpus& corpus,
                                                       std::string_view claim) {
  if (corpus.empty()) return {};
  return candidate_sentences_for_claim(TitleMatcher(corpus), HeuristicExtractor(), 0, claim);
}

}  // namespace claimcheck
