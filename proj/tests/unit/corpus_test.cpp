#include "doctest.h"

#include "claimcheck/corpus.hpp"
#include "claimcheck/errors.hpp"
#include "support/fixtures.hpp"

using namespace claimcheck;

TEST_CASE("single record parses into numbered sentences") {
  fixture::TempDir dir;
  fixture::write_file(dir / "a.jsonl",
                      R"({"id":"A","text":"x. y.","lines":"0\tx.\n1\ty."})" "\n");
  const Corpus c = ingest_dump(dir / "a.jsonl");
  REQUIRE(c.size() == 1);
  CHECK(c.document(0).lines.size() == 2);
  CHECK(get_sentence(c, {"A", 1}).value() == "y.");
  CHECK_FALSE(get_sentence(c, {"A", 99}).has_value());
  CHECK_FALSE(get_sentence(c, {"Z", 0}).has_value());
  CHECK(c.stats().documents_read == 1);
  CHECK(c.stats().lines_skipped == 0);
}

TEST_CASE("empty file gives an empty corpus") {
  fixture::TempDir dir;
  fixture::write_file(dir / "e.jsonl", "");
  const Corpus c = ingest_dump(dir / "e.jsonl");
  CHECK(c.empty());
  CHECK(c.sources().size() == 1);
}

TEST_CASE("malformed rows are skipped and counted") {
  Document d;
  d.page_id = "P";
  CHECK(CorpusReader::parse_lines("0\tfine\ngarbled-no-tab\n1\talso fine", d) == 1);
  CHECK(d.lines.size() == 2);

  Document e;
  e.page_id = "Q";
  // non-integer index, negative index, repeated number
  CHECK(CorpusReader::parse_lines("x\tbad\n-1\tbad\n0\tok\n0\tagain\n2\tok", e) == 3);
  REQUIRE(e.lines.size() == 2);
  CHECK(e.lines[1].line_number == 2);

  fixture::TempDir dir;
  fixture::write_file(dir / "g.jsonl",
                      R"({"id":"G","text":"","lines":"0\ta\ngarbled-no-tab\n1\tb"})" "\n");
  const Corpus c = ingest_dump(dir / "g.jsonl");
  CHECK(c.stats().lines_skipped == 1);
  CHECK(c.stats().lines_read == 2);
}

TEST_CASE("metadata after the sentence is discarded and empty lines keep their slot") {
  Document d;
  d.page_id = "P";
  CorpusReader::parse_lines("0\tSentence one.\tanchor\tTarget\n1\t\n2\tThird.", d);
  REQUIRE(d.lines.size() == 3);
  CHECK(d.lines[0].text == "Sentence one.");
  CHECK(d.lines[1].empty());
  CHECK(d.lines[2].text == "Third.");
}

TEST_CASE("duplicate page ids are an ingest error naming the id") {
  fixture::TempDir dir;
  fixture::write_file(dir / "d.jsonl",
                      R"({"id":"Dup","text":"","lines":""})" "\n"
                      R"({"id":"Dup","text":"","lines":""})" "\n");
  try {
    ingest_dump(dir / "d.jsonl");
    FAIL("expected IngestError");
  } catch (const IngestError& e) {
    CHECK(std::string(e.what()).find("Dup") != std::string::npos);
  }
}

TEST_CASE("unreadable path is an I/O error") {
  CHECK_THROWS_AS(ingest_dump("/nonexistent/dir/file.jsonl"), IoError);
}

TEST_CASE("malformed JSON reports its line number") {
  fixture::TempDir dir;
  fixture::write_file(dir / "m.jsonl", R"({"id":"A","text":"","lines":""})" "\n{oops\n");
  try {
    ingest_dump(dir / "m.jsonl");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("directories are read in name order and record checksums") {
  fixture::TempDir dir;
  fixture::write_file(dir / "b.jsonl", R"({"id":"B","text":"","lines":"0\tb"})" "\n");
  fixture::write_file(dir / "a.jsonl", R"({"id":"A","text":"","lines":"0\ta"})" "\n");
  fixture::write_file(dir / "ignored.txt", "not json");
  const Corpus c = ingest_dump(dir.path());
  REQUIRE(c.size() == 2);
  CHECK(c.document(0).page_id == "A");
  REQUIRE(c.sources().size() == 2);
  CHECK(c.sources()[0].checksum ==
        fnv1a64(fixture::read_file(dir / "a.jsonl")));
}

TEST_CASE("round trip and idempotence on the mini corpus") {
  const Corpus a = ingest_dump(fixture::mini_wiki());
  const Corpus b = ingest_dump(fixture::mini_wiki());
  REQUIRE(a.size() == 50);
  REQUIRE(a.size() == b.size());
  CHECK(a.source_checksum() == b.source_checksum());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Document& d = a.document(i);
    CHECK(d.page_id == b.document(i).page_id);
    CHECK(d.text == b.document(i).text);
    for (const auto& line : d.lines)
      CHECK(get_sentence(a, {d.page_id, line.line_number}).value() == line.text);
  }
}

TEST_CASE("fnv1a64 known values") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
}
