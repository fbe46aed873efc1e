#include "doctest.h"

#include <sstream>

#include "claimcheck/errors.hpp"
#include "claimcheck/levenshtein.hpp"
#include "claimcheck/ner.hpp"
#include "support/fixtures.hpp"

using namespace claimcheck;

namespace {

std::vector<std::string> surfaces(const std::vector<EntityMention>& m) {
  std::vector<std::string> out;
  for (const auto& e : m) out.push_back(e.surface);
  return out;
}

using Strings = std::vector<std::string>;

}  // namespace

TEST_CASE("heuristic extractor") {
  const HeuristicExtractor h;
  CHECK(surfaces(h.extract("Tilda Swinton is a vegan.")) == Strings{"Tilda Swinton"});
  CHECK(h.extract("the cat sat").empty());
  // a lone capitalized first word is only sentence case
  CHECK(h.extract("Cats sat on mats.").empty());
  CHECK(surfaces(h.extract("Paris is in France.")) == Strings{"France"});
  // leading stopwords are stripped
  CHECK(surfaces(h.extract("The Beatles formed in Liverpool.")) ==
        Strings{"Beatles", "Liverpool"});
  CHECK(surfaces(h.extract("She met The Rolling Stones.")) == Strings{"Rolling Stones"});
  // punctuation breaks a run; repeats are dropped
  CHECK(surfaces(h.extract("He visited Paris, France and Paris again.")) ==
        Strings{"Paris", "France"});
  CHECK(surfaces(h.extract("It stars Ryan O'Neal and Jean-Luc Godard.")) ==
        Strings{"Ryan O'Neal", "Jean-Luc Godard"});
  CHECK(surfaces(h.extract("Soul Food is a film.")) == Strings{"Soul Food"});
}

TEST_CASE("custom leading stopwords") {
  const HeuristicExtractor h(std::set<std::string>{"Mister"});
  CHECK(surfaces(h.extract("We saw Mister Rogers.")) == Strings{"Rogers"});
  CHECK(surfaces(h.extract("We saw The Who.")) == Strings{"The Who"});
}

TEST_CASE("external entities pass through verbatim") {
  std::istringstream in(
      R"({"id": 7, "entities": ["Soul Food"]})" "\n"
      R"({"claim_id": 8, "entities": ["  A  ", "B", "B", ""]})" "\n");
  const ExternalEntities ext = ExternalEntities::parse(in);
  const auto m = ext.extract(7, "ignored text");
  REQUIRE(m.size() == 1);
  CHECK(m[0].surface == "Soul Food");
  CHECK(m[0].source == EntityMention::Source::kExternal);
  CHECK(surfaces(ext.extract(8, "")) == Strings{"A", "B"});
  CHECK(ext.extract(9, "Tilda Swinton").empty());

  std::istringstream bad("{\"id\": 1}\n");
  CHECK_THROWS_AS(ExternalEntities::parse(bad), ParseError);
}

TEST_CASE("title normalization") {
  CHECK(normalize_title("Tilda_Swinton") == "tilda swinton");
  CHECK(normalize_title("Soul_Food_-LRB-film-RRB-") == "soul food (film)");
  CHECK(normalize_title("X-COLON-_Y") == "x: y");
  CHECK(normalize_title("Semi-Final") == "semi-final");
}

TEST_CASE("entity to title matching") {
  const Corpus c = fixture::make_corpus({fixture::make_doc("Tilda_Swinton", {"a"}),
                                         fixture::make_doc("Soul_Food", {"b"}),
                                         fixture::make_doc("Soul_Food_-LRB-film-RRB-", {"c"})});
  TitleMatch m = match_entity_to_title(c, {"Tilda Swinton"});
  CHECK(m.page_id == "Tilda_Swinton");
  CHECK(m.distance == 0);
  m = match_entity_to_title(c, {"Soul Food"});
  CHECK(m.page_id == "Soul_Food");
  CHECK(m.distance == 0);
  CHECK(levenshtein(std::string_view("soul food"), std::string_view("soul food (film)")) == 7);
  m = match_entity_to_title(c, {"Soul Food film"});
  CHECK(m.page_id == "Soul_Food_-LRB-film-RRB-");
  CHECK(m.distance == 2);

  const Corpus xy = fixture::make_corpus({fixture::make_doc("XY", {"a"}),
                                          fixture::make_doc("X", {"b"})});
  CHECK(match_entity_to_title(xy, {"X"}).page_id == "X");

  CHECK_THROWS_AS(match_entity_to_title(Corpus{}, {"X"}), ValidationError);
}

TEST_CASE("ties prefer the shorter title, then the smaller page id") {
  // "abc" is one edit from each of these
  const Corpus c = fixture::make_corpus({fixture::make_doc("abcd", {"1"}),
                                         fixture::make_doc("abd", {"2"}),
                                         fixture::make_doc("abx", {"3"}),
                                         fixture::make_doc("ab", {"4"})});
  const TitleMatch m = match_entity_to_title(c, {"abc"});
  CHECK(m.distance == 1);
  CHECK(m.page_id == "ab");

  const Corpus same_len = fixture::make_corpus({fixture::make_doc("abx", {"1"}),
                                                fixture::make_doc("abd", {"2"})});
  CHECK(match_entity_to_title(same_len, {"abc"}).page_id == "abd");
}

TEST_CASE("matched distance is minimal over all titles") {
  Rng rng(21);
  std::vector<Document> docs;
  for (int i = 0; i < 300; ++i) {
    std::u32string t = fixture::random_u32(rng, 12, 5);
    std::string title = "T" + std::to_string(i) + "_";
    for (char32_t ch : t) title += ch < 128 ? static_cast<char>(ch) : 'z';
    docs.push_back(fixture::make_doc(title, {"s"}));
  }
  const Corpus c = fixture::make_corpus(docs);
  const TitleMatcher matcher(c);
  for (int q = 0; q < 50; ++q) {
    std::string e = "t" + std::to_string(rng.below(400)) + " ";
    for (char32_t ch : fixture::random_u32(rng, 12, 5)) e += ch < 128 ? static_cast<char>(ch) : 'z';
    const TitleMatch serial = matcher.match({e}, Execution::kSerial);
    const TitleMatch par = matcher.match({e}, Execution::kParallel);
    CHECK(serial.page_id == par.page_id);
    CHECK(serial.distance == par.distance);
    for (const auto& d : c.documents())
      CHECK(serial.distance <= levenshtein(normalize_title(e), normalize_title(d.page_id)));
    CHECK(serial.distance == levenshtein(normalize_title(e), normalize_title(serial.page_id)));
  }
}

TEST_CASE("candidate sentences") {
  Document three = fixture::make_doc("Tilda_Swinton", {"One.", "Two.", "Three."});
  Document with_gap = fixture::make_doc("Derek_Jarman", {"First.", "", "Third."});
  const Corpus c = fixture::make_corpus({three, with_gap});

  auto refs = candidate_sentences_for_claim(c, "Tilda Swinton is an actress.");
  CHECK(refs == std::vector<SentenceRef>{{"Tilda_Swinton", 0}, {"Tilda_Swinton", 1},
                                         {"Tilda_Swinton", 2}});
  CHECK(candidate_sentences_for_claim(c, "no entities here").empty());

  // both mentions land on the same page
  refs = candidate_sentences_for_claim(c, "Actress Tilda Swinton, or Tilda Swintan.");
  CHECK(refs.size() == 3);

  // the empty line keeps its number but is not a candidate
  refs = candidate_sentences_for_claim(c, "He met Derek Jarman.");
  CHECK(refs == std::vector<SentenceRef>{{"Derek_Jarman", 0}, {"Derek_Jarman", 2}});
  CHECK(std::is_sorted(refs.begin(), refs.end()));
}

TEST_CASE("distance cutoff drops far matches") {
  const Corpus c = fixture::make_corpus({fixture::make_doc("Tilda_Swinton", {"One."})});
  const TitleMatcher matcher(c);
  const HeuristicExtractor h;
  std::vector<TitleMatch> matches;
  auto refs = candidate_sentences_for_claim(matcher, h, 1, "We met Completely Different.",
                                            {.max_distance = 3}, &matches);
  CHECK(refs.empty());
  CHECK(matches.empty());
  refs = candidate_sentences_for_claim(matcher, h, 1, "We met Tilda Swinton.", {.max_distance = 0},
                                       &matches);
  CHECK(refs.size() == 1);
  REQUIRE(matches.size() == 1);
  CHECK(matches[0].distance == 0);
}
