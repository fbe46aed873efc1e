#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "claimcheck/corpus.hpp"
#include "claimcheck/execution.hpp"

namespace claimcheck {

struct EntityMention {
  enum class Source { kHeuristic, kExternal };

  std::string surface;
  Source source = Source::kHeuristic;

  friend bool operator==(const EntityMention&, const EntityMention&) = default;
};

struct TitleMatch {
  EntityMention entity;
  std::string page_id;
  std::size_t distance = 0;
};

class EntityExtractor {
 public:
  virtual ~EntityExtractor() = default;
  virtual std::vector<EntityMention> extract(std::int64_t claim_id,
                                             std::string_view claim) const = 0;
};

// Maximal runs of capitalized words. A run starting at the first word of the
// claim is kept only if it has two or more words; leading stopwords are then
// stripped from each run.
class HeuristicExtractor final : public EntityExtractor {
 public:
  HeuristicExtractor();
  explicit HeuristicExtractor(std::set<std::string> leading_stopwords);

  std::vector<EntityMention> extract(std::int64_t claim_id,
                                     std::string_view claim) const override;
  std::vector<EntityMention> extract(std::string_view claim) const {
    return extract(0, claim);
  }

  static const std::set<std::string>& default_stopwords();

 private:
  std::set<std::string> stopwords_;  // case-folded
};

// Mentions read from JSON-lines {"id": <claim id>, "entities": [...]}.
class ExternalEntities final : public EntityExtractor {
 public:
  static ExternalEntities load(const std::filesystem::path& path);
  static ExternalEntities parse(std::istream& in);

  std::vector<EntityMention> extract(std::int64_t claim_id,
                                     std::string_view claim) const override;

 private:
  std::unordered_map<std::int64_t, std::vector<EntityMention>> by_claim_;
};

// Case-folds, maps underscores to spaces and FEVER bracket escapes
// (-LRB- etc.) to the characters they stand for.
std::string normalize_title(std::string_view title);

// Normalized titles of a corpus, prepared once for repeated matching.
class TitleMatcher {
 public:
  // Throws ValidationError on an empty corpus.
  explicit TitleMatcher(const Corpus& corpus);

  TitleMatch match(const EntityMention& entity,
                   Execution exec = Execution::kParallel) const;

  const Corpus& corpus() const { return *corpus_; }

 private:
  const Corpus* corpus_;
  std::vector<std::u32string> titles_;
  std::vector<std::string> page_ids_;
};

inline TitleMatch match_entity_to_title(const Corpus& corpus, const EntityMention& entity) {
  return TitleMatcher(corpus).match(entity);
}

struct NerRetrievalOptions {
  std::size_t max_distance = std::numeric_limits<std::size_t>::max();
};

// All non-empty sentences of the pages matched by the claim's entities,
// sorted by (page_id, line_number) without duplicates.
std::vector<SentenceRef> candidate_sentences_for_claim(
    const TitleMatcher& matcher, const EntityExtractor& extractor, std::int64_t claim_id,
    std::string_view claim, const NerRetrievalOptions& options = {},
    std::vector<TitleMatch>* matches = nullptr);

std::vector<SentenceRef> candidate_sentences_for_claim(const Corpus& corpus,
                                                       std::string_view claim);

}  // namespace claimcheck
