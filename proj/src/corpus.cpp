#include "claimcheck/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "claimcheck/errors.hpp"

namespace claimcheck {

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t state) {
  for (unsigned char c : bytes) {
    state ^= c;
    state *= 0x100000001b3ULL;
  }
  return state;
}

std::size_t SentenceRefHash::operator()(const SentenceRef& ref) const noexcept {
  return std::hash<std::string>{}(ref.page_id) * 31u + ref.line_number;
}

const SentenceLine* Document::find_line(std::uint32_t line_number) const {
  auto it = std::lower_bound(
      lines.begin(), lines.end(), line_number,
      [](const SentenceLine& l, std::uint32_t n) { return l.line_number < n; });
  if (it == lines.end() || it->line_number != line_number) return nullptr;
  return &*it;
}

void Corpus::add(Document doc) {
  if (doc.page_id.empty()) throw IngestError("document with empty page_id");
  auto [it, inserted] = by_id_.emplace(doc.page_id, documents_.size());
  if (!inserted) throw IngestError("duplicate page_id: " + doc.page_id);
  documents_.push_back(std::move(doc));
}

const Document* Corpus::find(std::string_view page_id) const {
  auto it = by_id_.find(std::string(page_id));
  return it == by_id_.end() ? nullptr : &documents_[it->second];
}

std::optional<std::string_view> Corpus::sentence(const SentenceRef& ref) const {
  const Document* doc = find(ref.page_id);
  if (doc == nullptr) return std::nullopt;
  const SentenceLine* line = doc->find_line(ref.line_number);
  if (line == nullptr) return std::nullopt;
  return std::string_view(line->text);
}

std::uint64_t Corpus::source_checksum() const {
  std::uint64_t h = fnv1a64("");
  for (const auto& s : sources_) {
    char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>(s.checksum >> (8 * i));
    h = fnv1a64(std::string_view(buf, 8), h);
  }
  return h;
}

namespace {

bool parse_index(std::string_view field, std::uint32_t& out) {
  if (field.empty()) return false;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
  return ec == std::errc() && ptr == field.data() + field.size();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path.string());
  return std::move(ss).str();
}

}  // namespace

std::size_t CorpusReader::parse_lines(std::string_view lines, Document& doc) {
  std::size_t skipped = 0;
  std::size_t pos = 0;
  while (pos <= lines.size()) {
    std::size_t end = lines.find('\n', pos);
    if (end == std::string_view::npos) end = lines.size();
    std::string_view row = lines.substr(pos, end - pos);
    pos = end + 1;
    if (row.empty()) continue;

    std::size_t tab = row.find('\t');
    std::uint32_t number = 0;
    if (tab == std::string_view::npos || !parse_index(row.substr(0, tab), number) ||
        (!doc.lines.empty() && number <= doc.lines.back().line_number)) {
      ++skipped;
      continue;
    }
    std::string_view rest = row.substr(tab + 1);
    // Anything after the second tab is per-line metadata (hyperlink anchors).
    std::size_t meta = rest.find('\t');
    if (meta != std::string_view::npos) rest = rest.substr(0, meta);
    doc.lines.push_back({number, std::string(rest)});
  }
  return skipped;
}

void CorpusReader::add_record(std::string_view json_line, std::size_t line_no,
                              Corpus& corpus) {
  nlohmann::json record;
  try {
    record = nlohmann::json::parse(json_line);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what(), line_no);
  }
  if (!record.is_object() || !record.contains("id") || !record["id"].is_string())
    throw ParseError("record without string id", line_no);

  Document doc;
  doc.page_id = record["id"].get<std::string>();
  if (doc.page_id.empty()) {
    ++corpus.stats_.records_skipped;
    return;
  }
  if (auto it = record.find("text"); it != record.end() && it->is_string())
    doc.text = it->get<std::string>();
  if (auto it = record.find("lines"); it != record.end() && it->is_string()) {
    corpus.stats_.lines_skipped += parse_lines(it->get_ref<const std::string&>(), doc);
  }
  corpus.stats_.lines_read += doc.lines.size();
  corpus.stats_.empty_lines += static_cast<std::size_t>(
      std::count_if(doc.lines.begin(), doc.lines.end(),
                    [](const SentenceLine& l) { return l.empty(); }));
  corpus.add(std::move(doc));
  ++corpus.stats_.documents_read;
}

Corpus CorpusReader::ingest(const std::filesystem::path& path) {
  namespace fs = std::filesystem;
  std::error_code ec;
  std::vector<fs::path> files;
  if (fs::is_directory(path, ec)) {
    for (const auto& entry : fs::directory_iterator(path, ec)) {
      if (entry.is_regular_file() && entry.path().extension() == ".jsonl")
        files.push_back(entry.path());
    }
    if (ec) throw IoError("cannot list " + path.string() + ": " + ec.message());
    std::sort(files.begin(), files.end());
  } else if (fs::is_regular_file(path, ec)) {
    files.push_back(path);
  } else {
    throw IoError("no such file or directory: " + path.string());
  }

  Corpus corpus;
  for (const auto& file : files) {
    const std::string bytes = read_file(file);
    corpus.sources_.push_back({file.string(), fnv1a64(bytes), bytes.size()});
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < bytes.size()) {
      std::size_t end = bytes.find('\n', pos);
      if (end == std::string::npos) end = bytes.size();
      std::string_view line(bytes.data() + pos, end - pos);
      pos = end + 1;
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
      try {
        add_record(line, line_no, corpus);
      } catch (const ParseError& e) {
        throw ParseError(file.string(), e);
      }
    }
  }
  return corpus;
}

}  // namespace claimcheck
