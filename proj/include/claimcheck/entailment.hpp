#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "claimcheck/corpus.hpp"
#include "claimcheck/execution.hpp"

namespace claimcheck {

// Probabilities that a sentence supports, refutes, or says nothing about a
// claim.
struct EntailmentTriple {
  double support = 0.0;
  double refute = 0.0;
  double uninformative = 1.0;

  friend bool operator==(const EntailmentTriple&, const EntailmentTriple&) = default;
};

inline constexpr double kTripleSumTolerance = 1e-6;
// External probabilities further than this from summing to 1 are rejected;
// closer ones are renormalized.
inline constexpr double kRenormalizeTolerance = 1e-3;

bool is_valid(const EntailmentTriple& t, double tolerance = kTripleSumTolerance);
std::string to_string(const EntailmentTriple& t);

struct ScoredCandidate {
  SentenceRef ref;
  std::string sentence;
  EntailmentTriple triple;
};

struct ScoringPair {
  std::int64_t claim_id = 0;
  std::string_view claim;
  const SentenceRef* ref = nullptr;
  std::string_view sentence;
};

// Immutable once constructed; score() must be safe to call concurrently.
class EntailmentScorer {
 public:
  virtual ~EntailmentScorer() = default;
  virtual EntailmentTriple score(const ScoringPair& pair) const = 0;
};

inline EntailmentTriple score_pair(const EntailmentScorer& scorer, const ScoringPair& pair) {
  return scorer.score(pair);
}

// Negation cues of the baseline scorer. "n't" is recognised in its tokenized
// form: a token "t" right after a token ending in 'n'.
bool has_negation_cue(std::span<const std::string> tokens);

// Lexical stand-in for a trained entailment model. With o the fraction of
// distinct claim tokens present in the sentence and g = 1 when exactly one
// side carries a negation cue: (o(1-g), o g, 1-o).
EntailmentTriple baseline_score(std::span<const std::string> claim_tokens,
                                std::span<const std::string> sentence_tokens);

class BaselineScorer final : public EntailmentScorer {
 public:
  EntailmentTriple score(const ScoringPair& pair) const override;
};

// Looks up triples by (claim_id, page_id, line_number) from JSON-lines rows
// {claim_id, page_id, line_number, support, refute, uninformative}.
class ProbabilityFileScorer final : public EntailmentScorer {
 public:
  static ProbabilityFileScorer load(const std::filesystem::path& path);
  static ProbabilityFileScorer parse(std::istream& in);

  EntailmentTriple score(const ScoringPair& pair) const override;
  std::size_t size() const { return table_.size(); }

 private:
  struct Key {
    std::int64_t claim_id;
    SentenceRef ref;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      return SentenceRefHash{}(k.ref) ^ (std::hash<std::int64_t>{}(k.claim_id) * 0x9e3779b9u);
    }
  };
  std::unordered_map<Key, EntailmentTriple, KeyHash> table_;
};

// Validates an externally supplied triple, renormalizing small rounding
// drift. Throws ValidationError.
EntailmentTriple checked_triple(double support, double refute, double uninformative);

// Scores every resolvable ref against the claim; refs missing from the corpus
// are dropped.
std::vector<ScoredCandidate> score_candidates(const EntailmentScorer& scorer,
                                              const Corpus& corpus, std::int64_t claim_id,
                                              std::string_view claim,
                                              std::span<const SentenceRef> refs,
                                              Execution exec = Execution::kParallel);

}  // namespace claimcheck
