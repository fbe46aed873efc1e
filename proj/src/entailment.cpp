#include "claimcheck/entailment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "claimcheck/errors.hpp"
#include "claimcheck/text.hpp"

namespace claimcheck {

bool is_valid(const EntailmentTriple& t, double tolerance) {
  for (double v : {t.support, t.refute, t.uninformative})
    if (!(v >= 0.0 && v <= 1.0)) return false;
  return std::abs(t.support + t.refute + t.uninformative - 1.0) <= tolerance;
}

std::string to_string(const EntailmentTriple& t) {
  auto shortest = [](double v) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
  };
  return '(' + shortest(t.support) + ", " + shortest(t.refute) + ", " + shortest(t.uninformative) +
         ')';
}

bool has_negation_cue(std::span<const std::string> tokens) {
  static const std::set<std::string, std::less<>> kCues = {"not", "no", "never", "n't",
                                                           "neither", "nor"};
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (kCues.count(tokens[i]) > 0) return true;
    if (tokens[i] == "t" && i > 0 && !tokens[i - 1].empty() && tokens[i - 1].back() == 'n')
      return true;
  }
  return false;
}

EntailmentTriple baseline_score(std::span<const std::string> claim_tokens,
                                std::span<const std::string> sentence_tokens) {
  const std::set<std::string_view> claim(claim_tokens.begin(), claim_tokens.end());
  const std::set<std::string_view> sentence(sentence_tokens.begin(), sentence_tokens.end());
  double overlap = 0.0;
  if (!claim.empty()) {
    std::size_t shared = 0;
    for (std::string_view t : claim) shared += sentence.count(t);
    overlap = static_cast<double>(shared) / static_cast<double>(claim.size());
  }
  const double g =
      has_negation_cue(claim_tokens) != has_negation_cue(sentence_tokens) ? 1.0 : 0.0;
  EntailmentTriple t{overlap * (1.0 - g), overlap * g, 1.0 - overlap};
  const double sum = t.support + t.refute + t.uninformative;
  t.support /= sum;
  t.refute /= sum;
  t.uninformative /= sum;
  return t;
}

EntailmentTriple BaselineScorer::score(const ScoringPair& pair) const {
  return baseline_score(tokenize(pair.claim), tokenize(pair.sentence));
}

EntailmentTriple checked_triple(double support, double refute, double uninformative) {
  EntailmentTriple t{support, refute, uninformative};
  bool ok = true;
  for (double v : {support, refute, uninformative})
    if (!(v >= 0.0 && v <= 1.0)) ok = false;
  const double sum = support + refute + uninformative;
  if (!ok || std::abs(sum - 1.0) > kRenormalizeTolerance)
    throw ValidationError("invalid entailment triple " + to_string(t) + ", sum " +
                          std::to_string(sum));
  t.support /= sum;
  t.refute /= sum;
  t.uninformative /= sum;
  return t;
}

ProbabilityFileScorer ProbabilityFileScorer::parse(std::istream& in) {
  ProbabilityFileScorer scorer;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Key key;
    double s = 0, r = 0, u = 0;
    try {
      const auto row = nlohmann::json::parse(line);
      key.claim_id = row.at("claim_id").get<std::int64_t>();
      key.ref.page_id = row.at("page_id").get<std::string>();
      key.ref.line_number = row.at("line_number").get<std::uint32_t>();
      s = row.at("support").get<double>();
      r = row.at("refute").get<double>();
      u = row.at("uninformative").get<double>();
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(e.what(), line_no);
    }
    try {
      scorer.table_[key] = checked_triple(s, r, u);
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return scorer;
}

ProbabilityFileScorer ProbabilityFileScorer::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  return parse(in);
}

EntailmentTriple ProbabilityFileScorer::score(const ScoringPair& pair) const {
  const Key key{pair.claim_id, pair.ref != nullptr ? *pair.ref : SentenceRef{}};
  auto it = table_.find(key);
  if (it == table_.end())
    throw MissingProbabilityError("no probabilities for claim " +
                                  std::to_string(pair.claim_id) + ", sentence (" +
                                  key.ref.page_id + ", " +
                                  std::to_string(key.ref.line_number) + ")");
  return it->second;
}

std::vector<ScoredCandidate> score_candidates(const EntailmentScorer& scorer,
                                              const Corpus& corpus, std::int64_t claim_id,
                                              std::string_view claim,
                                              std::span<const SentenceRef> refs,
                                              Execution exec) {
  std::vector<ScoredCandidate> out;
  out.reserve(refs.size());
  for (const SentenceRef& ref : refs) {
    if (auto text = corpus.sentence(ref)) out.push_back({ref, std::string(*text), {}});
  }
  const auto n = static_cast<std::ptrdiff_t>(out.size());
  std::exception_ptr failure;
  std::ptrdiff_t failed_at = n;
#pragma omp parallel for schedule(dynamic, 8) if (exec == Execution::kParallel && n > 64)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[i].triple = scorer.score({claim_id, claim, &out[i].ref, out[i].sentence});
    } catch (...) {
#pragma omp critical(claimcheck_score_failure)
      if (i < failed_at) {
        failed_at = i;
        failure = std::current_exception();
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace claimcheck
