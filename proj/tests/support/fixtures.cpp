#include "support/fixtures.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <unistd.h>

#include <json.hpp>

#include "claimcheck/cli.hpp"

namespace fixture {

namespace fs = std::filesystem;
using claimcheck::Rng;

fs::path data_path(const std::string& name) { return fs::path(CLAIMCHECK_TEST_DATA) / name; }

TempDir::TempDir() {
  static std::uint64_t counter = 0;
  const fs::path base = fs::temp_directory_path();
  for (;;) {
    path_ = base / ("claimcheck-test-" + std::to_string(::getpid()) + "-" +
                    std::to_string(counter++));
    if (fs::create_directory(path_)) break;
  }
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

claimcheck::Document make_doc(const std::string& page_id,
                              const std::vector<std::string>& sentences) {
  claimcheck::Document d;
  d.page_id = page_id;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    d.lines.push_back({static_cast<std::uint32_t>(i), sentences[i]});
    if (!d.text.empty()) d.text += ' ';
    d.text += sentences[i];
  }
  return d;
}

claimcheck::Corpus make_corpus(const std::vector<claimcheck::Document>& docs) {
  claimcheck::Corpus c;
  for (const auto& d : docs) c.add(d);
  return c;
}

std::string random_sentence(Rng& rng, std::size_t max_words, std::size_t vocab) {
  const std::size_t words = 1 + rng.below(max_words);
  std::string s;
  for (std::size_t w = 0; w < words; ++w) {
    if (w) s += ' ';
    s += "w" + std::to_string(rng.below(vocab));
  }
  return s + ".";
}

claimcheck::Corpus random_corpus(Rng& rng, std::size_t max_docs, std::size_t max_sentences,
                                 std::size_t vocab) {
  const std::size_t docs = 1 + rng.below(max_docs);
  std::vector<claimcheck::Document> out;
  for (std::size_t d = 0; d < docs; ++d) {
    std::vector<std::string> sentences(1 + rng.below(max_sentences));
    for (auto& s : sentences) s = random_sentence(rng, 8, vocab);
    out.push_back(make_doc("Doc_" + std::to_string(rng.below(1000000)) + "_" + std::to_string(d),
                           sentences));
  }
  return make_corpus(out);
}

std::u32string random_u32(Rng& rng, std::size_t max_len, char32_t alphabet) {
  std::u32string s(rng.below(max_len + 1), U'a');
  for (auto& c : s) {
    c = U'a' + static_cast<char32_t>(rng.below(alphabet));
    if (rng.below(10) == 0) c = U'é' + static_cast<char32_t>(rng.below(3));
  }
  return s;
}

claimcheck::EntailmentTriple random_triple(Rng& rng) {
  if (rng.below(4) == 0) {
    const std::uint64_t a = rng.below(5), b = rng.below(5 - a);
    return {a / 4.0, b / 4.0, (4 - a - b) / 4.0};
  }
  const double x = rng.unit(), y = rng.unit();
  const double lo = std::min(x, y), hi = std::max(x, y);
  return {lo, hi - lo, 1.0 - hi};
}

claimcheck::FeatureVector random_features(Rng& rng) {
  claimcheck::FeatureVector f;
  for (std::size_t i = 0; i < claimcheck::kFeatureCount; ++i) f[i] = rng.unit();
  f.n = rng.below(20);
  return f;
}

std::vector<claimcheck::TrainingSample> separable_f7(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<claimcheck::TrainingSample> out;
  for (std::size_t i = 0; i < n; ++i) {
    claimcheck::TrainingSample s;
    s.features = random_features(rng);
    s.label = s.features.f(7) > 0.5 ? claimcheck::Label::kSupports : claimcheck::Label::kRefutes;
    out.push_back(s);
  }
  return out;
}

ScoringCase random_scoring_case(Rng& rng, std::size_t claims) {
  using claimcheck::Label;
  ScoringCase sc;
  auto ref = [&] {
    return claimcheck::SentenceRef{"P" + std::to_string(rng.below(4)),
                                   static_cast<std::uint32_t>(rng.below(5))};
  };
  for (std::size_t i = 0; i < claims; ++i) {
    claimcheck::GoldInstance g;
    g.claim_id = static_cast<std::int64_t>(i);
    g.claim = "claim";
    g.label = claimcheck::kAllLabels[rng.below(3)];
    if (*g.label != Label::kNotEnoughInfo) {
      const std::size_t sets = 1 + rng.below(3);
      for (std::size_t k = 0; k < sets; ++k) {
        claimcheck::EvidenceSet set;
        const std::size_t n = 1 + rng.below(3);
        for (std::size_t j = 0; j < n; ++j) set.push_back(ref());
        g.evidence_sets.push_back(set);
      }
    }
    sc.gold.push_back(g);
    if (rng.below(10) == 0) continue;  // missing prediction
    claimcheck::Verdict v;
    v.claim_id = g.claim_id;
    v.label = rng.below(2) ? *g.label : claimcheck::kAllLabels[rng.below(3)];
    if (v.label != Label::kNotEnoughInfo) {
      if (!g.evidence_sets.empty() && rng.below(2))
        for (const auto& r : g.evidence_sets[rng.below(g.evidence_sets.size())])
          v.evidence.push_back(r);
      const std::size_t extra = rng.below(3);
      for (std::size_t j = 0; j < extra && v.evidence.size() < 5; ++j) v.evidence.push_back(ref());
    }
    sc.predictions.push_back(v);
  }
  return sc;
}

std::size_t write_oracle_probabilities(const fs::path& candidates, const fs::path& gold_claims,
                                       const fs::path& out) {
  using claimcheck::Label;
  std::map<std::int64_t, claimcheck::FeverInstance> gold;
  for (auto& g : claimcheck::read_fever_instances(gold_claims)) gold[g.claim_id] = g;
  std::ifstream in(candidates);
  if (!in) throw std::runtime_error("cannot read " + candidates.string());
  std::ofstream o(out);
  std::size_t rows = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto row = nlohmann::json::parse(line);
    const std::int64_t id = row.at("id").get<std::int64_t>();
    const auto& g = gold.at(id);
    for (const auto& c : row.at("candidates")) {
      const claimcheck::SentenceRef ref{c.at(0).get<std::string>(), c.at(1).get<std::uint32_t>()};
      bool in_gold = false;
      for (const auto& set : g.evidence_sets)
        in_gold = in_gold || std::find(set.begin(), set.end(), ref) != set.end();
      double s = 0, r = 0, u = 1;
      if (in_gold && g.label == Label::kSupports) s = 1, u = 0;
      if (in_gold && g.label == Label::kRefutes) r = 1, u = 0;
      o << nlohmann::json{{"claim_id", id}, {"page_id", ref.page_id},
                          {"line_number", ref.line_number}, {"support", s},
                          {"refute", r}, {"uninformative", u}}
               .dump()
        << '\n';
      ++rows;
    }
  }
  if (!o) throw std::runtime_error("cannot write " + out.string());
  return rows;
}

CliResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int status = claimcheck::cli::run_subcommand(args, out, err);
  return {status, out.str(), err.str()};
}

}  // namespace fixture
