#include "claimcheck/tfidf.hpp"

#include <algorithm>
#include <bit>
#include <fstream>

#include "claimcheck/binary_io.hpp"
#include "claimcheck/errors.hpp"
#include "claimcheck/text.hpp"

namespace claimcheck {

void check_config(const TfidfConfig& config) {
  if (config.bin_count == 0 || !std::has_single_bit(config.bin_count) ||
      config.bin_count > (std::uint64_t{1} << 32))
    throw ValidationError("bin_count must be a power of two in [1, 2^32], got " +
                          std::to_string(config.bin_count));
  if ((config.orders & (kUnigrams | kBigrams)) == 0 || (config.orders & ~3u) != 0)
    throw ValidationError("ngram orders must be a non-empty subset of {1,2}");
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> bin_counts(
    std::span<const std::string> tokens, const TfidfConfig& config) {
  std::vector<std::uint32_t> bins;
  if (config.orders & kUnigrams) {
    for (std::size_t i = 0; i < tokens.size(); ++i)
      bins.push_back(hash_ngram(tokens.subspan(i, 1), config.bin_count));
  }
  if ((config.orders & kBigrams) && tokens.size() >= 2) {
    for (std::size_t i = 0; i + 1 < tokens.size(); ++i)
      bins.push_back(hash_ngram(tokens.subspan(i, 2), config.bin_count));
  }
  std::sort(bins.begin(), bins.end());
  std::vector<std::pair<std::uint32_t, std::uint32_t>> counts;
  for (std::uint32_t b : bins) {
    if (!counts.empty() && counts.back().first == b)
      ++counts.back().second;
    else
      counts.emplace_back(b, 1);
  }
  return counts;
}

std::uint32_t TfidfIndex::document_frequency(std::uint32_t bin) const {
  auto it = std::lower_bound(df_.begin(), df_.end(), bin,
                             [](const auto& p, std::uint32_t b) { return p.first < b; });
  return (it != df_.end() && it->first == bin) ? it->second : 0;
}

TfidfIndex TfidfIndex::build(std::span<const std::string> texts,
                             const TfidfConfig& config, Execution exec) {
  check_config(config);
  if (texts.empty()) throw ValidationError("cannot index an empty collection");

  const auto n = static_cast<std::ptrdiff_t>(texts.size());
  const bool parallel = exec == Execution::kParallel && n > 256;
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> counts(texts.size());
#pragma omp parallel for schedule(dynamic, 64) if (parallel)
  for (std::ptrdiff_t i = 0; i < n; ++i) counts[i] = bin_counts(tokenize(texts[i]), config);

  // Document frequencies are merged serially so the table never depends on
  // scheduling.
  std::vector<std::uint32_t> all_bins;
  for (const auto& c : counts)
    for (const auto& [bin, count] : c) all_bins.push_back(bin);
  std::sort(all_bins.begin(), all_bins.end());

  TfidfIndex index;
  index.config_ = config;
  for (std::uint32_t b : all_bins) {
    if (!index.df_.empty() && index.df_.back().first == b)
      ++index.df_.back().second;
    else
      index.df_.emplace_back(b, 1);
  }

  index.vectors_.resize(texts.size());
#pragma omp parallel for schedule(dynamic, 64) if (parallel)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    SparseVector& v = index.vectors_[i];
    v.bins.reserve(counts[i].size());
    v.weights.reserve(counts[i].size());
    for (const auto& [bin, count] : counts[i]) {
      v.bins.push_back(bin);
      v.weights.push_back(std::log1p(static_cast<double>(count)) * index.idf(bin));
    }
  }
  index.finish();
  return index;
}

void TfidfIndex::finish() {
  norms_.resize(vectors_.size());
  for (std::size_t i = 0; i < vectors_.size(); ++i) norms_[i] = l2_norm(vectors_[i]);
}

SparseVector TfidfIndex::query_vector(std::string_view text) const {
  SparseVector q;
  for (const auto& [bin, count] : bin_counts(tokenize(text), config_)) {
    q.bins.push_back(bin);
    q.weights.push_back(std::log1p(static_cast<double>(count)) * idf(bin));
  }
  return q;
}

std::vector<double> TfidfIndex::scores(std::string_view text, Execution exec) const {
  return kernels::cosine_scan(query_vector(text), vectors_, norms_, exec);
}

void TfidfIndex::write(std::ostream& out) const {
  BinaryWriter w(out);
  w.u64(config_.bin_count);
  w.u8(config_.orders);
  w.u64(df_.size());
  for (const auto& [bin, df] : df_) {
    w.u32(bin);
    w.u32(df);
  }
  w.u64(vectors_.size());
  for (const auto& v : vectors_) {
    w.u32(static_cast<std::uint32_t>(v.size()));
    for (std::size_t j = 0; j < v.size(); ++j) {
      w.u32(v.bins[j]);
      w.f64(v.weights[j]);
    }
  }
}

TfidfIndex TfidfIndex::read(std::istream& in) {
  BinaryReader r(in, "tf-idf index");
  TfidfIndex index;
  index.config_.bin_count = r.u64();
  index.config_.orders = r.u8();
  check_config(index.config_);
  const std::uint64_t df_size = r.u64();
  for (std::uint64_t i = 0; i < df_size; ++i) {
    const std::uint32_t bin = r.u32();
    const std::uint32_t df = r.u32();
    index.df_.emplace_back(bin, df);
  }
  const std::uint64_t items = r.u64();
  for (std::uint64_t i = 0; i < items; ++i) {
    SparseVector v;
    const std::uint32_t nnz = r.u32();
    for (std::uint32_t j = 0; j < nnz; ++j) {
      v.bins.push_back(r.u32());
      v.weights.push_back(r.f64());
    }
    index.vectors_.push_back(std::move(v));
  }
  index.finish();
  return index;
}

template <class Id>
std::vector<Scored<Id>> select_top_k(std::span<const double> scores,
                                     std::span<const Id> ids, std::size_t k) {
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < scores.size(); ++i)
    if (scores[i] > 0.0) order.push_back(i);
  auto before = [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return ids[a] < ids[b];
  };
  const std::size_t take = std::min(k, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take),
                    order.end(), before);
  std::vector<Scored<Id>> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) out.push_back({ids[order[i]], scores[order[i]]});
  return out;
}

template std::vector<Scored<std::string>> select_top_k(std::span<const double>,
                                                       std::span<const std::string>,
                                                       std::size_t);
template std::vector<Scored<SentenceRef>> select_top_k(std::span<const double>,
                                                       std::span<const SentenceRef>,
                                                       std::size_t);

namespace {

const std::string& document_text(const Document& doc, std::string& scratch) {
  if (!doc.text.empty() || doc.lines.empty()) return doc.text;
  scratch.clear();
  for (const auto& line : doc.lines) {
    if (!scratch.empty()) scratch += ' ';
    scratch += line.text;
  }
  return scratch;
}

constexpr std::string_view kIndexMagic = "CCTFIDF\n";

}  // namespace

DocumentIndex DocumentIndex::build(const Corpus& corpus, const TfidfConfig& config,
                                   Execution exec) {
  if (corpus.empty()) throw ValidationError("cannot index an empty corpus");
  std::vector<std::string> texts;
  DocumentIndex index;
  texts.reserve(corpus.size());
  index.page_ids_.reserve(corpus.size());
  std::string scratch;
  for (const Document& doc : corpus.documents()) {
    texts.push_back(document_text(doc, scratch));
    index.page_ids_.push_back(doc.page_id);
  }
  index.index_ = TfidfIndex::build(texts, config, exec);
  index.source_checksum_ = corpus.source_checksum();
  return index;
}

std::vector<ScoredDocument> DocumentIndex::top_k(std::string_view claim, std::size_t k,
                                                 Execution exec) const {
  const std::vector<double> s = index_.scores(claim, exec);
  return select_top_k<std::string>(s, page_ids_, k);
}

void DocumentIndex::write(std::ostream& out) const {
  BinaryWriter w(out);
  w.bytes(kIndexMagic);
  w.u32(kIndexFormatVersion);
  w.u64(index_.config().bin_count);
  w.u8(index_.config().orders);
  w.str(kNgramHashName);
  w.str(kWeightingTag);
  w.u64(page_ids_.size());
  w.u64(source_checksum_);
  for (const auto& id : page_ids_) w.str(id);
  index_.write(out);
}

DocumentIndex DocumentIndex::read(std::istream& in) {
  BinaryReader r(in, "index file");
  if (r.bytes(kIndexMagic.size()) != kIndexMagic) throw ParseError("not an index file");
  const std::uint32_t version = r.u32();
  if (version != kIndexFormatVersion)
    throw VersionError("index format version " + std::to_string(version) +
                       ", expected " + std::to_string(kIndexFormatVersion));
  const std::uint64_t bins = r.u64();
  const std::uint8_t orders = r.u8();
  if (r.str() != kNgramHashName) throw ValidationError("index uses a different n-gram hash");
  if (r.str() != kWeightingTag) throw ValidationError("index uses a different tf-idf variant");
  const std::uint64_t items = r.u64();
  DocumentIndex index;
  index.source_checksum_ = r.u64();
  for (std::uint64_t i = 0; i < items; ++i) index.page_ids_.push_back(r.str());
  index.index_ = TfidfIndex::read(in);
  if (index.index_.config().bin_count != bins || index.index_.config().orders != orders ||
      index.index_.item_count() != items)
    throw ParseError("index header disagrees with its body");
  return index;
}

void DocumentIndex::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  write(out);
  if (!out) throw IoError("write failed: " + path.string());
}

DocumentIndex DocumentIndex::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  return read(in);
}

std::vector<ScoredSentence> top_k_sentences(std::span<const Document* const> documents,
                                            std::string_view claim, std::size_t k,
                                            std::uint64_t bin_count, Execution exec) {
  std::vector<std::string> texts;
  std::vector<SentenceRef> refs;
  for (const Document* doc : documents) {
    for (const auto& line : doc->lines) {
      if (line.empty()) continue;
      texts.push_back(line.text);
      refs.push_back({doc->page_id, line.line_number});
    }
  }
  if (texts.empty()) return {};
  const TfidfIndex index = TfidfIndex::build(texts, {bin_count, kBigrams}, exec);
  const std::vector<double> s = index.scores(claim, exec);
  return select_top_k<SentenceRef>(s, refs, k);
}

}  // namespace claimcheck
