#include "claimcheck/cli.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "claimcheck/errors.hpp"
#include "claimcheck/metrics.hpp"
#include "claimcheck/nli_dataset.hpp"
#include "claimcheck/pipeline.hpp"

namespace claimcheck::cli {

namespace {

// Per-stage counts, one line per stage: "claimcheck: stage=... key=value".
void log_stage(std::ostream& err, std::string_view stage,
               std::initializer_list<std::pair<std::string_view, std::size_t>> counts) {
  err << "claimcheck: stage=" << stage;
  for (const auto& [key, value] : counts) err << ' ' << key << '=' << value;
  err << '\n';
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  return out;
}

void close_output(std::ofstream& out, const std::string& path) {
  out.close();
  if (!out) throw IoError("write failed: " + path);
}

struct CorpusFlags {
  std::string wiki;
};

struct RetrievalFlags {
  std::string index;
  std::uint64_t bins = kDefaultBinCount;
  std::size_t k_docs = 5;
  std::size_t k_sents = 5;
  std::string ner = "heuristic";
  std::string ner_file;
  std::size_t max_ner_distance = std::numeric_limits<std::size_t>::max();
  bool no_tfidf = false;

  void add_to(CLI::App* app) {
    app->add_option("--index", index, "document index built by `index` (built in memory if absent)")
        ->check(CLI::ExistingFile);
    app->add_option("--bins", bins, "hash bins for TF-IDF vectors (power of two)");
    app->add_option("--k-docs", k_docs, "documents kept by TF-IDF retrieval")
        ->check(CLI::PositiveNumber);
    app->add_option("--k-sents", k_sents, "sentences kept by TF-IDF retrieval")
        ->check(CLI::PositiveNumber);
    app->add_option("--ner", ner, "entity source")
        ->check(CLI::IsMember({"heuristic", "file", "none"}));
    app->add_option("--ner-file", ner_file, "JSON-lines {id, entities}")
        ->check(CLI::ExistingFile);
    app->add_option("--max-ner-distance", max_ner_distance,
                    "drop title matches farther than this (default: unlimited)");
    app->add_flag("--no-tfidf", no_tfidf, "disable TF-IDF retrieval");
  }

  std::unique_ptr<EntityExtractor> extractor() const {
    if (ner == "file") {
      if (ner_file.empty()) throw ValidationError("--ner file requires --ner-file");
      return std::make_unique<ExternalEntities>(ExternalEntities::load(ner_file));
    }
    return std::make_unique<HeuristicExtractor>();
  }

  RetrievalOptions options() const {
    RetrievalOptions o;
    o.k_docs = k_docs;
    o.k_sents = k_sents;
    o.sentence_bins = bins;
    o.use_tfidf = !no_tfidf;
    o.use_ner = ner != "none";
    o.ner.max_distance = max_ner_distance;
    return o;
  }

  std::optional<DocumentIndex> document_index(const Corpus& corpus) const {
    if (no_tfidf) return std::nullopt;
    if (!index.empty()) {
      DocumentIndex idx = DocumentIndex::load(index);
      if (idx.source_checksum() != corpus.source_checksum())
        throw ValidationError("index " + index + " was built from different source files");
      return idx;
    }
    return DocumentIndex::build(corpus, {bins, kUnigrams | kBigrams});
  }
};

struct ScorerFlags {
  std::string scorer = "baseline";
  std::string prob_file;

  void add_to(CLI::App* app) {
    app->add_option("--scorer", scorer, "entailment scorer")
        ->check(CLI::IsMember({"baseline", "file"}));
    app->add_option("--prob-file", prob_file,
                    "JSON-lines {claim_id, page_id, line_number, support, refute, uninformative}")
        ->check(CLI::ExistingFile);
  }

  std::unique_ptr<EntailmentScorer> make() const {
    if (scorer == "file") {
      if (prob_file.empty()) throw ValidationError("--scorer file requires --prob-file");
      return std::make_unique<ProbabilityFileScorer>(ProbabilityFileScorer::load(prob_file));
    }
    return std::make_unique<BaselineScorer>();
  }
};

struct ForestFlags {
  std::size_t trees = 50;
  std::size_t max_depth = 3;
  std::size_t features_per_split = 0;
  std::uint64_t seed = 0;

  void add_to(CLI::App* app) {
    app->add_option("--trees", trees, "number of trees")->check(CLI::PositiveNumber);
    app->add_option("--max-depth", max_depth, "maximum tree depth");
    app->add_option("--features-per-split", features_per_split,
                    "features considered per split (0: ceil(sqrt(12)))");
    app->add_option("--seed", seed, "random seed");
  }

  ForestConfig config() const { return {trees, max_depth, features_per_split, seed}; }
};

nlohmann::json retrieval_row(const FeverInstance& claim, const Retrieval& r) {
  nlohmann::json row;
  row["id"] = claim.claim_id;
  row["claim"] = claim.claim;
  row["label"] = claim.label ? nlohmann::json(std::string(to_string(*claim.label)))
                             : nlohmann::json();
  nlohmann::json docs = nlohmann::json::array();
  for (const auto& d : r.documents) docs.push_back({{"page_id", d.item}, {"score", d.score}});
  row["documents"] = std::move(docs);
  nlohmann::json ents = nlohmann::json::array();
  for (const auto& m : r.entity_matches)
    ents.push_back({{"entity", m.entity.surface}, {"page_id", m.page_id}, {"distance", m.distance}});
  row["entities"] = std::move(ents);
  nlohmann::json cands = nlohmann::json::array();
  for (const auto& c : r.candidates) cands.push_back({c.page_id, c.line_number});
  row["candidates"] = std::move(cands);
  return row;
}

std::vector<ClaimFeatures> read_features_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  return read_claim_features(in);
}

ClassCounts parse_counts(const std::string& text) {
  ClassCounts counts{};
  std::stringstream ss(text);
  std::string part;
  std::size_t i = 0;
  while (std::getline(ss, part, ',')) {
    if (i >= kLabelCount) throw ValidationError("--sample-counts takes three numbers");
    try {
      counts[i++] = std::stoul(part);
    } catch (const std::exception&) {
      throw ValidationError("bad --sample-counts value: " + part);
    }
  }
  if (i != kLabelCount) throw ValidationError("--sample-counts takes three numbers");
  return counts;
}

}  // namespace

int run_subcommand(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"claimcheck: claim verification over a FEVER-format Wikipedia dump"};
  app.name("claimcheck");
  app.require_subcommand(1, 1);

  CorpusFlags corpus_flags;
  RetrievalFlags retrieval;
  ScorerFlags scorer_flags;
  ForestFlags forest_flags;
  std::string claims_path, out_path, manifest_path, csv_path, model_path, features_path;
  std::string gold_path, pred_path, report_path, sample_counts;
  std::uint64_t seed = 0;
  std::uint64_t sample_seed = 0;
  bool no_undersample = false;

  auto add_wiki = [&](CLI::App* sub) {
    sub->add_option("--wiki", corpus_flags.wiki, "wiki dump file or directory of *.jsonl")
        ->required()
        ->check(CLI::ExistingPath);
  };

  auto* ingest = app.add_subcommand("ingest", "read a wiki dump and report statistics");
  add_wiki(ingest);
  ingest->add_option("--manifest", manifest_path, "write ingest statistics and checksums (JSON)");

  auto* index = app.add_subcommand("index", "build the document TF-IDF index");
  add_wiki(index);
  index->add_option("--out", out_path, "index file")->required();
  index->add_option("--bins", retrieval.bins, "hash bins (power of two)");

  auto* retrieve = app.add_subcommand("retrieve", "retrieve candidate evidence sentences");
  add_wiki(retrieve);
  retrieve->add_option("--claims", claims_path, "claims JSON-lines")->required()->check(CLI::ExistingFile);
  retrieve->add_option("--out", out_path, "candidates JSON-lines")->required();
  retrieval.add_to(retrieve);

  auto* gen_nli = app.add_subcommand("gen-nli", "generate the SNLI-style dataset from FEVER claims");
  add_wiki(gen_nli);
  gen_nli->add_option("--claims", claims_path, "labelled claims JSON-lines")->required()->check(CLI::ExistingFile);
  gen_nli->add_option("--out", out_path, "examples JSON-lines")->required();
  gen_nli->add_option("--manifest", manifest_path, "class counts and skips (JSON)");
  gen_nli->add_option("--seed", seed, "random seed");
  gen_nli->add_flag("--no-undersample", no_undersample, "keep the unbalanced dataset");

  auto* feats = app.add_subcommand("features", "score candidates and compute claim features");
  add_wiki(feats);
  feats->add_option("--candidates", claims_path, "output of `retrieve`")->required()->check(CLI::ExistingFile);
  feats->add_option("--out", out_path, "feature rows JSON-lines")->required();
  feats->add_option("--csv", csv_path, "also write claim_id,label,n,f1..f12 as CSV");
  scorer_flags.add_to(feats);

  auto* train = app.add_subcommand("train", "train the random forest on feature rows");
  train->add_option("--features", features_path, "labelled feature rows")->required()->check(CLI::ExistingFile);
  train->add_option("--out", model_path, "model file")->required();
  train->add_option("--sample-counts", sample_counts,
                    "per-class sample sizes SUPPORTS,REFUTES,NEI (e.g. 3000,3000,4000)");
  train->add_option("--sample-seed", sample_seed, "seed for --sample-counts");
  forest_flags.add_to(train);

  auto* predict = app.add_subcommand("predict", "classify feature rows and select evidence");
  predict->add_option("--model", model_path, "model file")->required()->check(CLI::ExistingFile);
  predict->add_option("--features", features_path, "feature rows")->required()->check(CLI::ExistingFile);
  predict->add_option("--out", out_path, "predictions JSON-lines")->required();

  auto* score_cmd = app.add_subcommand("score", "score predictions against gold claims");
  score_cmd->add_option("--gold", gold_path, "gold claims JSON-lines")->required()->check(CLI::ExistingFile);
  score_cmd->add_option("--pred", pred_path, "predictions JSON-lines")->required()->check(CLI::ExistingFile);
  score_cmd->add_option("--report", report_path, "write the report as JSON");

  auto* e2e = app.add_subcommand("e2e", "retrieve, score, classify and assemble in one run");
  add_wiki(e2e);
  e2e->add_option("--claims", claims_path, "claims JSON-lines")->required()->check(CLI::ExistingFile);
  e2e->add_option("--out", out_path, "predictions JSON-lines")->required();
  e2e->add_option("--model", model_path, "model file (trained on the claims' labels if absent)")
      ->check(CLI::ExistingFile);
  e2e->add_option("--features-out", features_path, "also write feature rows");
  e2e->add_option("--report", report_path, "write the score report as JSON (labelled claims)");
  retrieval.add_to(e2e);
  scorer_flags.add_to(e2e);
  forest_flags.add_to(e2e);

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.push_back("claimcheck");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*ingest) {
      const Corpus corpus = ingest_dump(corpus_flags.wiki);
      const IngestStats& s = corpus.stats();
      log_stage(err, "ingest", {{"documents", s.documents_read}, {"lines", s.lines_read},
                                {"lines_skipped", s.lines_skipped}, {"empty_lines", s.empty_lines},
                                {"records_skipped", s.records_skipped}});
      out << "documents " << s.documents_read << "\nlines " << s.lines_read << "\nlines_skipped "
          << s.lines_skipped << "\n";
      if (!manifest_path.empty()) {
        nlohmann::json files = nlohmann::json::array();
        for (const auto& f : corpus.sources())
          files.push_back({{"path", f.path}, {"bytes", f.bytes}, {"fnv1a64", f.checksum}});
        nlohmann::json m = {{"documents", s.documents_read}, {"lines", s.lines_read},
                            {"lines_skipped", s.lines_skipped}, {"empty_lines", s.empty_lines},
                            {"records_skipped", s.records_skipped},
                            {"source_checksum", corpus.source_checksum()}, {"files", files}};
        auto f = open_output(manifest_path);
        f << m.dump(2) << '\n';
        close_output(f, manifest_path);
      }
      return 0;
    }

    if (*index) {
      const Corpus corpus = ingest_dump(corpus_flags.wiki);
      const DocumentIndex idx = DocumentIndex::build(corpus, {retrieval.bins, kUnigrams | kBigrams});
      idx.save(out_path);
      log_stage(err, "index", {{"documents", idx.page_ids().size()},
                               {"bins", static_cast<std::size_t>(retrieval.bins)},
                               {"df_entries", idx.tfidf().df_table().size()}});
      out << "indexed " << idx.page_ids().size() << " documents into " << out_path << '\n';
      return 0;
    }

    if (*retrieve) {
      const Corpus corpus = ingest_dump(corpus_flags.wiki);
      const auto claims = read_fever_instances(std::filesystem::path(claims_path));
      const auto idx = retrieval.document_index(corpus);
      const auto extractor = retrieval.extractor();
      const Retriever retriever(corpus, idx ? &*idx : nullptr, *extractor, retrieval.options());
      auto f = open_output(out_path);
      std::size_t candidates = 0, entities = 0;
      for (const auto& claim : claims) {
        const Retrieval r = retriever.retrieve(claim.claim_id, claim.claim);
        candidates += r.candidates.size();
        entities += r.entity_matches.size();
        f << retrieval_row(claim, r).dump() << '\n';
      }
      close_output(f, out_path);
      log_stage(err, "retrieve", {{"claims", claims.size()}, {"entity_matches", entities},
                                  {"candidates", candidates}});
      out << "retrieved " << candidates << " candidates for " << claims.size() << " claims\n";
      return 0;
    }

    if (*gen_nli) {
      const Corpus corpus = ingest_dump(corpus_flags.wiki);
      const auto instances = read_fever_instances(std::filesystem::path(claims_path));
      const NliDataset data = build_nli_dataset(instances, corpus, seed);
      const NliClassCounts before = class_counts(data.examples);
      const std::vector<NliExample> kept =
          no_undersample ? data.examples : undersample(data.examples, seed);
      const NliClassCounts after = class_counts(kept);
      auto f = open_output(out_path);
      write_nli_examples(f, kept);
      close_output(f, out_path);
      const nlohmann::json manifest = nli_manifest(seed, data.stats, before, after);
      if (!manifest_path.empty()) {
        auto m = open_output(manifest_path);
        m << manifest.dump(2) << '\n';
        close_output(m, manifest_path);
      }
      log_stage(err, "gen-nli", {{"instances", data.stats.instances_used},
                                 {"examples", data.examples.size()}, {"kept", kept.size()},
                                 {"neutral_skipped", data.stats.neutral_skipped}});
      out << manifest.dump(2) << '\n';
      return 0;
    }

    if (*feats) {
      const Corpus corpus = ingest_dump(corpus_flags.wiki);
      const auto scorer = scorer_flags.make();
      std::ifstream in(claims_path);
      if (!in) throw IoError("cannot read " + claims_path);
      std::vector<ClaimFeatures> rows;
      std::string line;
      std::size_t line_no = 0, pairs = 0;
      while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json row;
        std::vector<SentenceRef> refs;
        std::optional<Label> label;
        try {
          row = nlohmann::json::parse(line);
          for (const auto& c : row.at("candidates"))
            refs.push_back({c.at(0).get<std::string>(), c.at(1).get<std::uint32_t>()});
          if (auto it = row.find("label"); it != row.end() && !it->is_null())
            label = parse_label(it->get<std::string>());
        } catch (const nlohmann::json::exception& e) {
          throw ParseError(e.what(), line_no);
        }
        rows.push_back(featurize(*scorer, corpus, row.at("id").get<std::int64_t>(),
                                 row.value("claim", std::string()), label, refs));
        pairs += rows.back().candidates.size();
      }
      auto f = open_output(out_path);
      write_claim_features(f, rows);
      close_output(f, out_path);
      if (!csv_path.empty()) {
        auto c = open_output(csv_path);
        write_features_csv(c, rows);
        close_output(c, csv_path);
      }
      log_stage(err, "features", {{"claims", rows.size()}, {"pairs_scored", pairs}});
      out << "wrote features for " << rows.size() << " claims\n";
      return 0;
    }

    if (*train) {
      const auto rows = read_features_file(features_path);
      std::vector<TrainingSample> samples = training_samples(rows);
      if (!sample_counts.empty()) {
        std::vector<Label> labels;
        for (const auto& s : samples) labels.push_back(s.label);
        std::vector<std::string> warnings;
        std::vector<TrainingSample> chosen;
        for (std::size_t i : sample_per_class(labels, parse_counts(sample_counts), sample_seed, &warnings))
          chosen.push_back(samples[i]);
        for (const auto& w : warnings) err << "claimcheck: warning: " << w << '\n';
        samples = std::move(chosen);
      }
      const RandomForest forest = RandomForest::train(samples, forest_flags.config());
      forest.save(model_path);
      log_stage(err, "train", {{"samples", samples.size()}, {"trees", forest.trees().size()}});
      out << "trained " << forest.trees().size() << " trees on " << samples.size()
          << " claims -> " << model_path << '\n';
      return 0;
    }

    if (*predict) {
      const RandomForest forest = RandomForest::load(model_path);
      const auto rows = read_features_file(features_path);
      std::vector<Verdict> verdicts;
      std::size_t overrides = 0;
      for (const auto& row : rows) {
        verdicts.push_back(decide(forest, row));
        overrides += verdicts.back().override_applied;
      }
      auto f = open_output(out_path);
      write_predictions(f, verdicts);
      close_output(f, out_path);
      log_stage(err, "predict", {{"claims", verdicts.size()}, {"overrides", overrides}});
      out << "wrote " << verdicts.size() << " predictions\n";
      return 0;
    }

    if (*score_cmd) {
      const auto gold = read_fever_instances(std::filesystem::path(gold_path));
      const auto preds = read_predictions(std::filesystem::path(pred_path));
      const ScoreReport report = score(gold, preds);
      print_report(out, report);
      if (!report_path.empty()) {
        auto f = open_output(report_path);
        f << to_json(report).dump(2) << '\n';
        close_output(f, report_path);
      }
      return 0;
    }

    if (*e2e) {
      const Corpus corpus = ingest_dump(corpus_flags.wiki);
      const auto claims = read_fever_instances(std::filesystem::path(claims_path));
      const auto idx = retrieval.document_index(corpus);
      const auto extractor = retrieval.extractor();
      const auto scorer = scorer_flags.make();
      const Retriever retriever(corpus, idx ? &*idx : nullptr, *extractor, retrieval.options());

      std::vector<ClaimFeatures> rows;
      std::size_t candidates = 0;
      for (const auto& claim : claims) {
        const Retrieval r = retriever.retrieve(claim.claim_id, claim.claim);
        candidates += r.candidates.size();
        rows.push_back(featurize(*scorer, corpus, claim.claim_id, claim.claim, claim.label,
                                 r.candidates));
      }
      log_stage(err, "retrieve", {{"claims", claims.size()}, {"candidates", candidates}});
      if (!features_path.empty()) {
        auto f = open_output(features_path);
        write_claim_features(f, rows);
        close_output(f, features_path);
      }

      RandomForest forest;
      if (!model_path.empty()) {
        forest = RandomForest::load(model_path);
      } else {
        const auto samples = training_samples(rows);
        forest = RandomForest::train(samples, forest_flags.config());
        log_stage(err, "train", {{"samples", samples.size()}, {"trees", forest.trees().size()}});
      }

      std::vector<Verdict> verdicts;
      std::size_t overrides = 0;
      for (const auto& row : rows) {
        verdicts.push_back(decide(forest, row));
        overrides += verdicts.back().override_applied;
      }
      auto f = open_output(out_path);
      write_predictions(f, verdicts);
      close_output(f, out_path);
      log_stage(err, "predict", {{"claims", verdicts.size()}, {"overrides", overrides}});

      const bool labelled = std::all_of(claims.begin(), claims.end(),
                                        [](const FeverInstance& c) { return c.label.has_value(); });
      if (labelled && !claims.empty()) {
        const ScoreReport report = score(claims, verdicts);
        print_report(out, report);
        if (!report_path.empty()) {
          auto r = open_output(report_path);
          r << to_json(report).dump(2) << '\n';
          close_output(r, report_path);
        }
      } else {
        out << "wrote " << verdicts.size() << " predictions\n";
      }
      return 0;
    }
  } catch (const Error& e) {
    err << "claimcheck: error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "claimcheck: unexpected error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_subcommand(args, std::cout, std::cerr);
}

}  // namespace claimcheck::cli
