#include "claimcheck/forest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "claimcheck/binary_io.hpp"
#include "claimcheck/errors.hpp"

namespace claimcheck {

std::size_t ForestConfig::split_features() const {
  if (features_per_split != 0) return std::min(features_per_split, kFeatureCount);
  return static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(kFeatureCount))));
}

double entropy(const ClassCounts& counts) {
  const std::size_t total = counts[0] + counts[1] + counts[2];
  if (total == 0) return 0.0;
  double h = 0.0;
  for (std::size_t c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log(p);
  }
  return h;
}

namespace {

ClassCounts count_classes(std::span<const TrainingSample> samples,
                          std::span<const std::size_t> indices) {
  ClassCounts counts{};
  for (std::size_t i : indices) ++counts[index_of(samples[i].label)];
  return counts;
}

ClassDistribution normalize(const ClassCounts& counts) {
  const double total = static_cast<double>(counts[0] + counts[1] + counts[2]);
  ClassDistribution d{};
  for (std::size_t c = 0; c < kLabelCount; ++c)
    d[c] = total > 0 ? static_cast<double>(counts[c]) / total : 0.0;
  return d;
}

double split_threshold(double below, double above) {
  const double mid = below + (above - below) / 2.0;
  // Keeps `above` on the right side even for adjacent doubles.
  return mid < above ? mid : below;
}

// Sorts `indices` by the feature value (then by sample index) and scans the
// midpoints between consecutive distinct values.
std::vector<SplitCandidate> scan_splits(std::span<const TrainingSample> samples,
                                        std::vector<std::size_t>& indices,
                                        std::size_t feature) {
  std::sort(indices.begin(), indices.end(), [&](std::size_t a, std::size_t b) {
    const double va = samples[a].features[feature];
    const double vb = samples[b].features[feature];
    return va != vb ? va < vb : a < b;
  });
  const ClassCounts total = count_classes(samples, indices);
  const double parent = entropy(total);
  const double n = static_cast<double>(indices.size());

  std::vector<SplitCandidate> out;
  ClassCounts left{};
  for (std::size_t k = 0; k + 1 < indices.size(); ++k) {
    ++left[index_of(samples[indices[k]].label)];
    const double a = samples[indices[k]].features[feature];
    const double b = samples[indices[k + 1]].features[feature];
    if (!(a < b)) continue;
    ClassCounts right{};
    for (std::size_t c = 0; c < kLabelCount; ++c) right[c] = total[c] - left[c];
    const double nl = static_cast<double>(k + 1);
    const double gain = parent - (nl / n) * entropy(left) - ((n - nl) / n) * entropy(right);
    out.push_back({feature, split_threshold(a, b), gain});
  }
  return out;
}

struct Grower {
  std::span<const TrainingSample> samples;
  std::size_t max_depth;
  std::size_t split_features;
  Rng& rng;
  std::vector<DecisionTree::SplitTrace>* trace;
  std::vector<DecisionTree::Node> nodes;

  std::uint32_t grow(std::vector<std::size_t> indices, std::size_t depth) {
    const auto id = static_cast<std::uint32_t>(nodes.size());
    const ClassCounts counts = count_classes(samples, indices);
    nodes.push_back({});
    nodes[id].distribution = normalize(counts);
    const bool pure = std::count_if(counts.begin(), counts.end(),
                                    [](std::size_t c) { return c > 0; }) <= 1;
    if (pure || depth >= max_depth || indices.size() < 2) return id;

    // Partial Fisher-Yates over feature ids picks the candidates for this node.
    std::array<std::size_t, kFeatureCount> features{};
    std::iota(features.begin(), features.end(), std::size_t{0});
    for (std::size_t i = 0; i < split_features; ++i)
      std::swap(features[i], features[i + rng.below(kFeatureCount - i)]);

    SplitCandidate best;
    bool found = false;
    std::vector<std::size_t> scratch = indices;
    for (std::size_t i = 0; i < split_features; ++i) {
      for (const SplitCandidate& c : scan_splits(samples, scratch, features[i])) {
        if (!found || c.gain > best.gain) {
          best = c;
          found = true;
        }
      }
    }
    if (!found || best.gain <= kMinGain) return id;

    if (trace != nullptr) {
      trace->push_back({indices,
                        std::vector<std::size_t>(features.begin(),
                                                 features.begin() + split_features),
                        best});
    }

    std::vector<std::size_t> left, right;
    for (std::size_t i : indices)
      (samples[i].features[best.feature] <= best.threshold ? left : right).push_back(i);
    indices.clear();
    indices.shrink_to_fit();

    nodes[id].feature = static_cast<std::int32_t>(best.feature);
    nodes[id].threshold = best.threshold;
    const std::uint32_t l = grow(std::move(left), depth + 1);
    const std::uint32_t r = grow(std::move(right), depth + 1);
    nodes[id].left = l;
    nodes[id].right = r;
    return id;
  }
};

}  // namespace

std::vector<SplitCandidate> candidate_splits(std::span<const TrainingSample> samples,
                                             std::span<const std::size_t> indices,
                                             std::size_t feature) {
  std::vector<std::size_t> scratch(indices.begin(), indices.end());
  return scan_splits(samples, scratch, feature);
}

DecisionTree DecisionTree::grow(std::span<const TrainingSample> samples,
                                std::vector<std::size_t> indices, std::size_t max_depth,
                                std::size_t split_features, Rng& rng,
                                std::vector<SplitTrace>* trace) {
  Grower g{samples, max_depth, std::min(split_features, kFeatureCount), rng, trace, {}};
  g.grow(std::move(indices), 0);
  DecisionTree tree;
  tree.nodes_ = std::move(g.nodes);
  return tree;
}

DecisionTree DecisionTree::leaf(const ClassDistribution& distribution) {
  DecisionTree tree;
  tree.nodes_.push_back({});
  tree.nodes_[0].distribution = distribution;
  return tree;
}

const ClassDistribution& DecisionTree::classify(const FeatureVector& x) const {
  std::uint32_t at = 0;
  while (!nodes_[at].is_leaf()) {
    const Node& node = nodes_[at];
    at = x[static_cast<std::size_t>(node.feature)] <= node.threshold ? node.left : node.right;
  }
  return nodes_[at].distribution;
}

std::size_t DecisionTree::depth() const {
  if (nodes_.empty()) return 0;
  std::size_t deepest = 0;
  std::vector<std::pair<std::uint32_t, std::size_t>> stack = {{0, 0}};
  while (!stack.empty()) {
    auto [at, d] = stack.back();
    stack.pop_back();
    if (nodes_[at].is_leaf()) {
      deepest = std::max(deepest, d);
    } else {
      stack.push_back({nodes_[at].left, d + 1});
      stack.push_back({nodes_[at].right, d + 1});
    }
  }
  return deepest;
}

RandomForest RandomForest::train(std::span<const TrainingSample> samples,
                                 const ForestConfig& config, Execution exec) {
  if (samples.size() < 2) throw TrainingError("need at least 2 training samples");
  const ClassCounts counts = [&] {
    ClassCounts c{};
    for (const auto& s : samples) ++c[index_of(s.label)];
    return c;
  }();
  if (std::count_if(counts.begin(), counts.end(), [](std::size_t c) { return c > 0; }) < 2)
    throw TrainingError("training data contains a single class");
  if (config.trees == 0) throw TrainingError("forest needs at least one tree");
  for (const auto& s : samples)
    for (double v : s.features.values)
      if (!std::isfinite(v)) throw TrainingError("non-finite feature value");

  std::vector<DecisionTree> trees(config.trees);
  const std::size_t m = config.split_features();
  const auto n = static_cast<std::ptrdiff_t>(config.trees);
  auto grow_one = [&](std::ptrdiff_t t) {
    Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(t)));
    std::vector<std::size_t> bootstrap(samples.size());
    for (auto& i : bootstrap) i = rng.below(samples.size());
    trees[t] = DecisionTree::grow(samples, std::move(bootstrap), config.max_depth, m, rng);
  };
  if (exec == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t t = 0; t < n; ++t) grow_one(t);
  } else {
    for (std::ptrdiff_t t = 0; t < n; ++t) grow_one(t);
  }
  return RandomForest(config, std::move(trees));
}

Prediction RandomForest::predict(const FeatureVector& x) const {
  std::array<std::vector<double>, kLabelCount> votes;
  for (const auto& tree : trees_) {
    const ClassDistribution& d = tree.classify(x);
    for (std::size_t c = 0; c < kLabelCount; ++c) votes[c].push_back(d[c]);
  }
  Prediction p;
  if (trees_.empty()) return p;
  for (std::size_t c = 0; c < kLabelCount; ++c) {
    // Sorted accumulation makes the mean independent of tree order.
    std::sort(votes[c].begin(), votes[c].end());
    double sum = 0.0;
    for (double v : votes[c]) sum += v;
    p.probabilities[c] = sum / static_cast<double>(trees_.size());
  }
  std::size_t best = 0;
  for (std::size_t c = 1; c < kLabelCount; ++c)
    if (p.probabilities[c] > p.probabilities[best]) best = c;
  p.label = kAllLabels[best];
  return p;
}

namespace {
constexpr std::string_view kModelMagic = "CCFOREST";
constexpr std::string_view kModelTrailer = "END\n";
}  // namespace

void RandomForest::write(std::ostream& out) const {
  BinaryWriter w(out);
  w.bytes(kModelMagic);
  w.u8(kModelFormatVersion);
  w.u64(kFeatureCount);
  w.u64(config_.trees);
  w.u64(config_.max_depth);
  w.u64(config_.features_per_split);
  w.u64(config_.seed);
  w.u64(trees_.size());
  for (const auto& tree : trees_) {
    w.u32(static_cast<std::uint32_t>(tree.nodes_.size()));
    for (const auto& node : tree.nodes_) {
      w.u32(static_cast<std::uint32_t>(node.feature));
      w.f64(node.threshold);
      w.u32(node.left);
      w.u32(node.right);
      for (double p : node.distribution) w.f64(p);
    }
  }
  w.bytes(kModelTrailer);
}

RandomForest RandomForest::read(std::istream& in) {
  BinaryReader r(in, "model file");
  if (r.bytes(kModelMagic.size()) != kModelMagic) throw ParseError("not a model file");
  const std::uint8_t version = r.u8();
  if (version != kModelFormatVersion)
    throw VersionError("model format version " + std::to_string(version) + ", expected " +
                       std::to_string(kModelFormatVersion));
  if (r.u64() != kFeatureCount) throw ParseError("model feature count mismatch");
  ForestConfig config;
  config.trees = r.u64();
  config.max_depth = r.u64();
  config.features_per_split = r.u64();
  config.seed = r.u64();
  const std::uint64_t tree_count = r.u64();
  if (tree_count > (1u << 20)) throw ParseError("corrupt model file: tree count");
  std::vector<DecisionTree> trees(tree_count);
  for (auto& tree : trees) {
    const std::uint32_t node_count = r.u32();
    if (node_count == 0 || node_count > (1u << 24))
      throw ParseError("corrupt model file: node count");
    tree.nodes_.resize(node_count);
    for (auto& node : tree.nodes_) {
      node.feature = static_cast<std::int32_t>(r.u32());
      node.threshold = r.f64();
      node.left = r.u32();
      node.right = r.u32();
      for (double& p : node.distribution) p = r.f64();
      if (node.feature >= static_cast<std::int32_t>(kFeatureCount) ||
          (!node.is_leaf() && (node.left >= node_count || node.right >= node_count)))
        throw ParseError("corrupt model file: node");
    }
  }
  if (r.bytes(kModelTrailer.size()) != kModelTrailer)
    throw ParseError("corrupt model file: missing trailer");
  return RandomForest(config, std::move(trees));
}

void RandomForest::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  write(out);
  if (!out) throw IoError("write failed: " + path.string());
}

RandomForest RandomForest::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  return read(in);
}

std::vector<std::size_t> sample_per_class(std::span<const Label> labels,
                                          const ClassCounts& quota, std::uint64_t seed,
                                          std::vector<std::string>* warnings) {
  std::array<std::vector<std::size_t>, kLabelCount> pools;
  for (std::size_t i = 0; i < labels.size(); ++i) pools[index_of(labels[i])].push_back(i);
  std::vector<std::size_t> chosen;
  for (std::size_t c = 0; c < kLabelCount; ++c) {
    auto& pool = pools[c];
    if (pool.size() < quota[c]) {
      if (warnings != nullptr)
        warnings->push_back("requested " + std::to_string(quota[c]) + " " +
                            std::string(to_string(kAllLabels[c])) + " claims, only " +
                            std::to_string(pool.size()) + " available; taking all");
      chosen.insert(chosen.end(), pool.begin(), pool.end());
      continue;
    }
    Rng rng(derive_seed(seed, c));
    for (std::size_t i = 0; i < quota[c]; ++i) {
      std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
      chosen.push_back(pool[i]);
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

std::vector<FeverInstance> sample_training_claims(std::span<const FeverInstance> instances,
                                                  std::uint64_t seed, const ClassCounts& quota,
                                                  std::vector<std::string>* warnings) {
  std::vector<Label> labels;
  std::vector<std::size_t> positions;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    if (!instances[i].label) continue;
    labels.push_back(*instances[i].label);
    positions.push_back(i);
  }
  std::vector<FeverInstance> out;
  for (std::size_t k : sample_per_class(labels, quota, seed, warnings))
    out.push_back(instances[positions[k]]);
  return out;
}

}  // namespace claimcheck
