#include "claimcheck/pipeline.hpp"

#include <algorithm>

#include "claimcheck/errors.hpp"

namespace claimcheck {

Retriever::Retriever(const Corpus& corpus, const DocumentIndex* index,
                     const EntityExtractor& extractor, RetrievalOptions options)
    : corpus_(corpus), index_(index), extractor_(extractor), options_(options) {
  if (options_.use_tfidf && index_ == nullptr)
    throw ValidationError("TF-IDF retrieval requested without a document index");
  if (options_.use_ner && !corpus_.empty()) matcher_.emplace(corpus_);
}

Retrieval Retriever::retrieve(std::int64_t claim_id, const std::string& claim) const {
  Retrieval r;
  if (matcher_) {
    r.candidates = candidate_sentences_for_claim(*matcher_, extractor_, claim_id, claim,
                                                 options_.ner, &r.entity_matches);
  }
  if (options_.use_tfidf) {
    r.documents = index_->top_k(claim, options_.k_docs);
    std::vector<const Document*> docs;
    for (const auto& d : r.documents) docs.push_back(corpus_.find(d.item));
    r.sentences = top_k_sentences(docs, claim, options_.k_sents, options_.sentence_bins);
    for (const auto& s : r.sentences) r.candidates.push_back(s.item);
  }
  std::sort(r.candidates.begin(), r.candidates.end());
  r.candidates.erase(std::unique(r.candidates.begin(), r.candidates.end()), r.candidates.end());
  return r;
}

ClaimFeatures featurize(const EntailmentScorer& scorer, const Corpus& corpus,
                        std::int64_t claim_id, const std::string& claim,
                        std::optional<Label> label, std::span<const SentenceRef> candidates) {
  ClaimFeatures row;
  row.claim_id = claim_id;
  row.label = label;
  row.candidates = score_candidates(scorer, corpus, claim_id, claim, candidates);
  row.features = features(row.candidates);
  return row;
}

std::vector<TrainingSample> training_samples(std::span<const ClaimFeatures> rows) {
  std::vector<TrainingSample> samples;
  for (const auto& r : rows)
    if (r.label) samples.push_back({r.features, *r.label});
  return samples;
}

Verdict decide(const RandomForest& forest, const ClaimFeatures& row) {
  const Prediction p = forest.predict(row.features);
  return assemble(row.claim_id, p.label, row.candidates);
}

}  // namespace claimcheck
