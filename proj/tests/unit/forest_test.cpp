#include "doctest.h"

#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "claimcheck/errors.hpp"
#include "claimcheck/forest.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace claimcheck;

namespace {

std::string bytes_of(const RandomForest& f) {
  std::ostringstream out;
  f.write(out);
  return out.str();
}

double accuracy(const RandomForest& f, const std::vector<TrainingSample>& s) {
  std::size_t ok = 0;
  for (const auto& x : s) ok += f.predict(x.features).label == x.label;
  return static_cast<double>(ok) / static_cast<double>(s.size());
}

std::vector<TrainingSample> three_class(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<TrainingSample> out;
  for (std::size_t i = 0; i < n; ++i) {
    TrainingSample s;
    s.features = fixture::random_features(rng);
    const double z = s.features[0] + 0.5 * s.features[4] + 0.2 * rng.unit();
    s.label = z < 0.5 ? Label::kSupports : z < 1.0 ? Label::kRefutes : Label::kNotEnoughInfo;
    // coarse values produce repeated feature values
    s.features[2] = std::floor(s.features[2] * 4) / 4;
    out.push_back(s);
  }
  return out;
}

}  // namespace

TEST_CASE("entropy in nats") {
  CHECK(entropy({0, 0, 0}) == 0.0);
  CHECK(entropy({5, 0, 0}) == 0.0);
  CHECK(entropy({1, 1, 0}) == doctest::Approx(std::log(2.0)));
  CHECK(entropy({2, 2, 2}) == doctest::Approx(std::log(3.0)));
}

TEST_CASE("default split subset is ceil(sqrt(12))") {
  CHECK(ForestConfig{}.split_features() == 4);
  CHECK(ForestConfig{.features_per_split = 20}.split_features() == 12);
  CHECK(ForestConfig{}.trees == 50);
  CHECK(ForestConfig{}.max_depth == 3);
}

TEST_CASE("candidate splits use midpoints and match the gain oracle") {
  const auto s = three_class(60, 1);
  std::vector<std::size_t> idx(s.size());
  std::iota(idx.begin(), idx.end(), 0);
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    const auto cands = candidate_splits(s, idx, f);
    std::vector<double> v;
    for (const auto& x : s) v.push_back(x.features[f]);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    REQUIRE(cands.size() == v.size() - 1);
    for (std::size_t j = 0; j < cands.size(); ++j) {
      CHECK(cands[j].threshold > v[j] - 1e-15);
      CHECK(cands[j].threshold < v[j + 1]);
      CHECK(cands[j].gain ==
            doctest::Approx(oracle::split_gain(s, idx, f, cands[j].threshold)).epsilon(1e-12));
    }
  }
}

TEST_CASE("every chosen split is the best among the features considered") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng data_rng(seed);
    const auto s = three_class(20 + data_rng.below(81), seed + 100);
    std::vector<std::size_t> idx(s.size());
    for (auto& i : idx) i = data_rng.below(s.size());
    Rng rng(seed);
    std::vector<DecisionTree::SplitTrace> trace;
    const DecisionTree t = DecisionTree::grow(s, idx, 3, 4, rng, &trace);
    CHECK(t.depth() <= 3);
    REQUIRE(!trace.empty());
    CHECK(trace[0].indices.size() == idx.size());
    for (const auto& tr : trace) {
      CHECK(tr.features_considered.size() == 4);
      const double best = oracle::best_gain(s, tr.indices, tr.features_considered);
      CHECK(tr.chosen.gain >= best - 1e-12);
      CHECK(tr.chosen.gain ==
            doctest::Approx(oracle::split_gain(s, tr.indices, tr.chosen.feature, tr.chosen.threshold))
                .epsilon(1e-12));
    }
  }
}

TEST_CASE("separable f7 data") {
  const auto train = fixture::separable_f7(200, 1);
  const auto held = fixture::separable_f7(200, 2);

  // brute-force depth-1 stump over f7 reaches 100% on the training set
  std::vector<std::size_t> idx(train.size());
  std::iota(idx.begin(), idx.end(), 0);
  const std::size_t f7[] = {6};
  const double stump = oracle::best_gain(train, idx, f7);
  std::array<std::size_t, 3> counts{};
  for (const auto& s : train) ++counts[index_of(s.label)];
  CHECK(stump == doctest::Approx(entropy(counts)));

  const RandomForest f = RandomForest::train(train, {.seed = 3});
  CHECK(accuracy(f, train) == 1.0);
  CHECK(accuracy(f, held) >= 0.95);
  for (const auto& t : f.trees()) CHECK(t.depth() <= 3);
}

TEST_CASE("identical features with mixed labels grow single leaves") {
  std::vector<TrainingSample> s(10);
  for (std::size_t i = 0; i < s.size(); ++i) {
    s[i].features[0] = 0.5;
    s[i].label = i < 4 ? Label::kSupports : Label::kRefutes;
  }
  const RandomForest f = RandomForest::train(s, {.trees = 20, .seed = 1});
  for (const auto& t : f.trees()) {
    REQUIRE(t.nodes().size() == 1);
    const auto& d = t.nodes()[0].distribution;
    CHECK(d[0] + d[1] + d[2] == doctest::Approx(1.0));
    // bootstrap of 10 draws: every share is a multiple of 1/10
    for (double p : d) CHECK(std::abs(p * 10 - std::round(p * 10)) < 1e-9);
  }
}

TEST_CASE("constant forest and probability sums") {
  std::vector<DecisionTree> trees(50, DecisionTree::leaf({1, 0, 0}));
  const RandomForest constant(ForestConfig{}, trees);
  const Prediction p = constant.predict(FeatureVector{});
  CHECK(p.label == Label::kSupports);
  CHECK(p.probabilities == ClassDistribution{1, 0, 0});

  const RandomForest tie(ForestConfig{.trees = 2},
                         {DecisionTree::leaf({0, 0.5, 0.5}), DecisionTree::leaf({0, 0.5, 0.5})});
  CHECK(tie.predict(FeatureVector{}).label == Label::kRefutes);

  const auto s = three_class(150, 4);
  const RandomForest f = RandomForest::train(s, {.seed = 9});
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    const Prediction q = f.predict(fixture::random_features(rng));
    CHECK(q.probabilities[0] + q.probabilities[1] + q.probabilities[2] ==
          doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("training is deterministic and schedule independent") {
  const auto s = three_class(120, 6);
  const RandomForest a = RandomForest::train(s, {.seed = 11}, Execution::kSerial);
  const RandomForest b = RandomForest::train(s, {.seed = 11}, Execution::kParallel);
  const RandomForest c = RandomForest::train(s, {.seed = 11}, Execution::kParallel);
  CHECK(a == b);
  CHECK(bytes_of(a) == bytes_of(c));
  const RandomForest d = RandomForest::train(s, {.seed = 12});
  CHECK_FALSE(a == d);
}

TEST_CASE("prediction ignores tree order") {
  const auto s = three_class(120, 7);
  const RandomForest f = RandomForest::train(s, {.seed = 2});
  std::vector<DecisionTree> reversed(f.trees().rbegin(), f.trees().rend());
  const RandomForest g(f.config(), reversed);
  Rng rng(8);
  for (int i = 0; i < 100; ++i) {
    const FeatureVector x = fixture::random_features(rng);
    CHECK(f.predict(x).probabilities == g.predict(x).probabilities);
  }
}

TEST_CASE("model files round trip and reject corruption") {
  const auto s = three_class(120, 10);
  const RandomForest f = RandomForest::train(s, {.seed = 5});
  fixture::TempDir dir;
  f.save(dir / "model.bin");
  const RandomForest g = RandomForest::load(dir / "model.bin");
  CHECK(f == g);
  CHECK(g.config().seed == 5);
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    const FeatureVector x = fixture::random_features(rng);
    const Prediction a = f.predict(x), b = g.predict(x);
    CHECK(a.label == b.label);
    CHECK(a.probabilities == b.probabilities);
  }

  const std::string bytes = bytes_of(f);
  std::istringstream truncated(bytes.substr(0, bytes.size() - 10));
  CHECK_THROWS_AS(RandomForest::read(truncated), ParseError);
  std::string wrong = bytes;
  wrong[8] = static_cast<char>(kModelFormatVersion + 1);
  std::istringstream version(wrong);
  CHECK_THROWS_AS(RandomForest::read(version), VersionError);
  CHECK_THROWS_AS(RandomForest::load(dir / "missing.bin"), IoError);
}

TEST_CASE("degenerate training input") {
  const auto s = fixture::separable_f7(10, 1);
  CHECK_THROWS_AS(RandomForest::train(std::span(s).first(1), {}), TrainingError);
  std::vector<TrainingSample> one_class(5);
  CHECK_THROWS_AS(RandomForest::train(one_class, {}), TrainingError);
  CHECK_THROWS_AS(RandomForest::train(s, {.trees = 0}), TrainingError);
  auto bad = s;
  bad[0].features[3] = std::nan("");
  CHECK_THROWS_AS(RandomForest::train(bad, {}), TrainingError);
}

TEST_CASE("training claim sampling") {
  std::vector<FeverInstance> pool;
  for (int c = 0; c < 3; ++c)
    for (int i = 0; i < 5000; ++i)
      pool.push_back({c * 10000 + i, "claim", kAllLabels[c], {}});
  std::vector<std::string> warnings;
  const auto a = sample_training_claims(pool, 1, kDefaultTrainingQuota, &warnings);
  std::array<std::size_t, 3> counts{};
  for (const auto& x : a) ++counts[index_of(*x.label)];
  CHECK(counts == std::array<std::size_t, 3>{3000, 3000, 4000});
  CHECK(warnings.empty());
  const auto b = sample_training_claims(pool, 1);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].claim_id == b[i].claim_id);
  std::set<std::int64_t> ids;
  for (const auto& x : a) ids.insert(x.claim_id);
  CHECK(ids.size() == a.size());

  std::vector<FeverInstance> small;
  for (int i = 0; i < 100; ++i) small.push_back({i, "c", Label::kSupports, {}});
  for (int i = 0; i < 5000; ++i) small.push_back({1000 + i, "c", Label::kRefutes, {}});
  small.push_back({99999, "unlabelled", std::nullopt, {}});
  warnings.clear();
  const auto c = sample_training_claims(small, 2, kDefaultTrainingQuota, &warnings);
  std::array<std::size_t, 3> sc{};
  for (const auto& x : c) ++sc[index_of(*x.label)];
  CHECK(sc == std::array<std::size_t, 3>{100, 3000, 0});
  CHECK(warnings.size() == 2);
}
