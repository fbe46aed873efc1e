#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace claimcheck {

// Pointer to one numbered sentence of a corpus page.
struct SentenceRef {
  std::string page_id;
  std::uint32_t line_number = 0;

  friend auto operator<=>(const SentenceRef&, const SentenceRef&) = default;
  friend bool operator==(const SentenceRef&, const SentenceRef&) = default;
};

struct SentenceRefHash {
  std::size_t operator()(const SentenceRef& ref) const noexcept;
};

struct SentenceLine {
  std::uint32_t line_number = 0;
  std::string text;

  // Empty sentences keep their slot so line numbering survives; retrieval
  // skips them.
  bool empty() const { return text.empty(); }
};

struct Document {
  std::string page_id;
  std::string text;
  std::vector<SentenceLine> lines;  // strictly increasing line_number

  const SentenceLine* find_line(std::uint32_t line_number) const;
};

struct IngestStats {
  std::size_t documents_read = 0;
  std::size_t lines_read = 0;
  std::size_t lines_skipped = 0;
  std::size_t empty_lines = 0;
  std::size_t records_skipped = 0;  // records with an empty id
};

struct SourceFile {
  std::string path;
  std::uint64_t checksum = 0;  // FNV-1a 64 over the raw bytes
  std::uint64_t bytes = 0;
};

// Immutable after ingest; safe for concurrent readers.
class Corpus {
 public:
  Corpus() = default;

  // Adds a document. Throws IngestError on an empty or duplicate page_id.
  void add(Document doc);

  std::size_t size() const { return documents_.size(); }
  bool empty() const { return documents_.empty(); }
  const std::vector<Document>& documents() const { return documents_; }
  const Document& document(std::size_t i) const { return documents_[i]; }

  const Document* find(std::string_view page_id) const;
  std::optional<std::string_view> sentence(const SentenceRef& ref) const;

  const IngestStats& stats() const { return stats_; }
  const std::vector<SourceFile>& sources() const { return sources_; }
  // Combined checksum of all source files, in ingest order.
  std::uint64_t source_checksum() const;

 private:
  friend class CorpusReader;

  std::vector<Document> documents_;
  std::unordered_map<std::string, std::size_t> by_id_;
  IngestStats stats_;
  std::vector<SourceFile> sources_;
};

// Reads one or more FEVER wiki-dump JSON-lines files into a Corpus.
class CorpusReader {
 public:
  // Parses the `lines` field of a dump record into `doc`, returning the
  // number of malformed rows skipped.
  static std::size_t parse_lines(std::string_view lines, Document& doc);

  // Parses one JSON record ({id, text, lines}) and adds it to `corpus`.
  static void add_record(std::string_view json_line, std::size_t line_no,
                         Corpus& corpus);

  // `path` may be a single file or a directory; directories contribute every
  // regular *.jsonl file, sorted by name. Throws IoError on unreadable paths.
  static Corpus ingest(const std::filesystem::path& path);
};

inline Corpus ingest_dump(const std::filesystem::path& path) {
  return CorpusReader::ingest(path);
}

inline std::optional<std::string_view> get_sentence(const Corpus& corpus,
                                                    const SentenceRef& ref) {
  return corpus.sentence(ref);
}

std::uint64_t fnv1a64(std::string_view bytes,
                      std::uint64_t state = 0xcbf29ce484222325ULL);

}  // namespace claimcheck
