#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "claimcheck/corpus.hpp"
#include "claimcheck/entailment.hpp"
#include "claimcheck/fever.hpp"
#include "claimcheck/forest.hpp"
#include "claimcheck/rng.hpp"
#include "claimcheck/verdict.hpp"

namespace fixture {

std::filesystem::path data_path(const std::string& name);
inline std::filesystem::path mini_wiki() { return data_path("mini_wiki.jsonl"); }
inline std::filesystem::path mini_claims() { return data_path("mini_claims.jsonl"); }

// Fresh directory removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

void write_file(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

claimcheck::Document make_doc(const std::string& page_id,
                              const std::vector<std::string>& sentences);
claimcheck::Corpus make_corpus(const std::vector<claimcheck::Document>& docs);

// Random words over a small alphabet so n-grams recur across documents.
std::string random_sentence(claimcheck::Rng& rng, std::size_t max_words, std::size_t vocab);
// Up to `max_docs` documents of up to `max_sentences` sentences each.
claimcheck::Corpus random_corpus(claimcheck::Rng& rng, std::size_t max_docs,
                                 std::size_t max_sentences, std::size_t vocab);

std::u32string random_u32(claimcheck::Rng& rng, std::size_t max_len, char32_t alphabet);

// A valid triple; a quarter of the draws are snapped to a coarse grid so
// ties between components occur.
claimcheck::EntailmentTriple random_triple(claimcheck::Rng& rng);

// Two classes separated by f7 > 0.5 (SUPPORTS) versus f7 <= 0.5 (REFUTES),
// other features noise.
std::vector<claimcheck::TrainingSample> separable_f7(std::size_t n, std::uint64_t seed);
claimcheck::FeatureVector random_features(claimcheck::Rng& rng);

// Gold claims with random evidence sets and predictions that partly agree
// with them.
struct ScoringCase {
  std::vector<claimcheck::GoldInstance> gold;
  std::vector<claimcheck::Verdict> predictions;
};
ScoringCase random_scoring_case(claimcheck::Rng& rng, std::size_t claims);

// Probability file for the candidates in `retrieve` output: gold evidence of
// SUPPORTS claims is certain support, of REFUTES claims certain refutation,
// everything else uninformative. Returns the number of rows written.
std::size_t write_oracle_probabilities(const std::filesystem::path& candidates,
                                       const std::filesystem::path& gold_claims,
                                       const std::filesystem::path& out);

struct CliResult {
  int status;
  std::string out;
  std::string err;
};
CliResult run_cli(const std::vector<std::string>& args);

}  // namespace fixture
