#pragma once
// Independent brute-force reimplementations used as test oracles.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "claimcheck/corpus.hpp"
#include "claimcheck/entailment.hpp"
#include "claimcheck/features.hpp"
#include "claimcheck/forest.hpp"

namespace oracle {

struct Ranked {
  std::size_t index;  // position in the input list
  double score;
};

// Dense TF-IDF cosine ranking. Builds full bin_count-sized vectors for every
// text, so bin_count must stay small. `less_id(a, b)` orders tied items.
std::vector<Ranked> dense_rank(const std::vector<std::string>& texts, const std::string& query,
                               std::uint64_t bin_count, bool unigrams, bool bigrams,
                               std::size_t k,
                               const std::vector<std::size_t>& tie_order);

// All positive-score results of the document ranking, best first.
std::vector<Ranked> dense_top_documents(const claimcheck::Corpus& corpus,
                                        const std::string& claim, std::uint64_t bin_count,
                                        std::size_t k);

struct RankedSentence {
  claimcheck::SentenceRef ref;
  double score;
};
std::vector<RankedSentence> dense_top_sentences(
    const std::vector<const claimcheck::Document*>& docs, const std::string& claim,
    std::uint64_t bin_count, std::size_t k);

// Full (|a|+1) x (|b|+1) edit-distance table; returns the bottom-right cell.
std::size_t levenshtein_table(const std::u32string& a, const std::u32string& b);

// Straight-line evaluation of f1..f12.
std::array<double, 12> feature_formulas(const std::vector<claimcheck::EntailmentTriple>& t);

// Best information gain over every feature in `features` and every midpoint
// threshold, computed without the library's split code.
double best_gain(std::span<const claimcheck::TrainingSample> samples,
                 std::span<const std::size_t> indices, std::span<const std::size_t> features);

// Information gain of one explicit split.
double split_gain(std::span<const claimcheck::TrainingSample> samples,
                  std::span<const std::size_t> indices, std::size_t feature, double threshold);

}  // namespace oracle
