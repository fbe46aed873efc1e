#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "claimcheck/corpus.hpp"
#include "claimcheck/entailment.hpp"
#include "claimcheck/features.hpp"
#include "claimcheck/fever.hpp"
#include "claimcheck/forest.hpp"
#include "claimcheck/ner.hpp"
#include "claimcheck/tfidf.hpp"
#include "claimcheck/verdict.hpp"

namespace claimcheck {

struct RetrievalOptions {
  std::size_t k_docs = 5;
  std::size_t k_sents = 5;
  std::uint64_t sentence_bins = kDefaultBinCount;
  bool use_tfidf = true;
  bool use_ner = true;
  NerRetrievalOptions ner;
};

struct Retrieval {
  std::vector<ScoredDocument> documents;    // TF-IDF document stage
  std::vector<ScoredSentence> sentences;    // TF-IDF sentence stage
  std::vector<TitleMatch> entity_matches;   // NER stage
  std::vector<SentenceRef> candidates;      // union, sorted, unique
};

// Both candidate sources: NER title matching (every sentence of the matched
// pages) and TF-IDF (top documents, then top sentences within them).
class Retriever {
 public:
  // `index` may be null when use_tfidf is false.
  Retriever(const Corpus& corpus, const DocumentIndex* index, const EntityExtractor& extractor,
            RetrievalOptions options);

  Retrieval retrieve(std::int64_t claim_id, const std::string& claim) const;

 private:
  const Corpus& corpus_;
  const DocumentIndex* index_;
  const EntityExtractor& extractor_;
  RetrievalOptions options_;
  std::optional<TitleMatcher> matcher_;
};

// Scores the candidates and computes the feature vector for one claim.
ClaimFeatures featurize(const EntailmentScorer& scorer, const Corpus& corpus,
                        std::int64_t claim_id, const std::string& claim,
                        std::optional<Label> label, std::span<const SentenceRef> candidates);

std::vector<TrainingSample> training_samples(std::span<const ClaimFeatures> rows);

// Classifies a feature row and assembles its verdict.
Verdict decide(const RandomForest& forest, const ClaimFeatures& row);

}  // namespace claimcheck
