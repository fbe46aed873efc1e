#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "claimcheck/corpus.hpp"
#include "claimcheck/execution.hpp"
#include "claimcheck/kernels.hpp"

namespace claimcheck {

enum NgramOrder : std::uint8_t { kUnigrams = 1, kBigrams = 2 };

inline constexpr std::uint64_t kDefaultBinCount = std::uint64_t{1} << 24;
inline constexpr std::string_view kWeightingTag =
    "tf=log1p(count);idf=max(0,log((N-df+0.5)/(df+0.5)))";

struct TfidfConfig {
  std::uint64_t bin_count = kDefaultBinCount;  // power of two, <= 2^32
  std::uint8_t orders = kUnigrams | kBigrams;
};

// Validates a config; throws ValidationError.
void check_config(const TfidfConfig& config);

// (bin, raw count) pairs for all n-grams of the requested orders, sorted by
// bin. Colliding n-grams add up.
std::vector<std::pair<std::uint32_t, std::uint32_t>> bin_counts(
    std::span<const std::string> tokens, const TfidfConfig& config);

inline double idf_weight(std::uint64_t item_count, std::uint64_t df) {
  const double n = static_cast<double>(item_count);
  const double d = static_cast<double>(df);
  const double v = std::log((n - d + 0.5) / (d + 0.5));
  return v > 0.0 ? v : 0.0;
}

template <class Id>
struct Scored {
  Id item;
  double score = 0.0;
};

// Hashed TF-IDF vectors for a fixed list of texts. Immutable once built.
class TfidfIndex {
 public:
  TfidfIndex() = default;

  // Throws ValidationError when `texts` is empty.
  static TfidfIndex build(std::span<const std::string> texts, const TfidfConfig& config,
                          Execution exec = Execution::kParallel);

  const TfidfConfig& config() const { return config_; }
  std::size_t item_count() const { return vectors_.size(); }
  std::uint32_t document_frequency(std::uint32_t bin) const;
  double idf(std::uint32_t bin) const {
    return idf_weight(item_count(), document_frequency(bin));
  }
  const SparseVector& vector(std::size_t i) const { return vectors_[i]; }
  double norm(std::size_t i) const { return norms_[i]; }
  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& df_table() const {
    return df_;
  }

  // Query vector with the same weighting as the indexed items.
  SparseVector query_vector(std::string_view text) const;

  std::vector<double> scores(std::string_view text,
                             Execution exec = Execution::kParallel) const;

  void write(std::ostream& out) const;
  static TfidfIndex read(std::istream& in);

 private:
  void finish();

  TfidfConfig config_;
  std::vector<SparseVector> vectors_;
  std::vector<double> norms_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> df_;  // sorted by bin
};

// Picks the k best positive scores; ties by ascending id.
template <class Id>
std::vector<Scored<Id>> select_top_k(std::span<const double> scores,
                                     std::span<const Id> ids, std::size_t k);

using ScoredDocument = Scored<std::string>;
using ScoredSentence = Scored<SentenceRef>;

// Document-level index over page texts plus the page ids it ranks.
class DocumentIndex {
 public:
  static DocumentIndex build(const Corpus& corpus, const TfidfConfig& config = {},
                             Execution exec = Execution::kParallel);

  const TfidfIndex& tfidf() const { return index_; }
  const std::vector<std::string>& page_ids() const { return page_ids_; }
  std::uint64_t source_checksum() const { return source_checksum_; }

  std::vector<ScoredDocument> top_k(std::string_view claim, std::size_t k = 5,
                                    Execution exec = Execution::kParallel) const;

  // Header: magic, format version, bin_count, ngram orders, hash name,
  // weighting tag, item count, source checksum.
  void save(const std::filesystem::path& path) const;
  static DocumentIndex load(const std::filesystem::path& path);
  void write(std::ostream& out) const;
  static DocumentIndex read(std::istream& in);

 private:
  TfidfIndex index_;
  std::vector<std::string> page_ids_;
  std::uint64_t source_checksum_ = 0;
};

inline constexpr std::uint32_t kIndexFormatVersion = 1;

inline DocumentIndex build_document_index(const Corpus& corpus, std::uint64_t bin_count,
                                          std::uint8_t orders) {
  return DocumentIndex::build(corpus, TfidfConfig{bin_count, orders});
}

inline std::vector<ScoredDocument> top_k_documents(const DocumentIndex& index,
                                                   std::string_view claim,
                                                   std::size_t k = 5) {
  return index.top_k(claim, k);
}

// Bigram-only transient index over the non-empty sentences of `documents`.
std::vector<ScoredSentence> top_k_sentences(std::span<const Document* const> documents,
                                            std::string_view claim, std::size_t k = 5,
                                            std::uint64_t bin_count = kDefaultBinCount,
                                            Execution exec = Execution::kParallel);

}  // namespace claimcheck
