#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "claimcheck/execution.hpp"
#include "claimcheck/features.hpp"
#include "claimcheck/fever.hpp"
#include "claimcheck/labels.hpp"
#include "claimcheck/rng.hpp"

namespace claimcheck {

using ClassCounts = std::array<std::size_t, kLabelCount>;
using ClassDistribution = std::array<double, kLabelCount>;

struct TrainingSample {
  FeatureVector features;
  Label label = Label::kNotEnoughInfo;
};

struct ForestConfig {
  std::size_t trees = 50;
  std::size_t max_depth = 3;
  // 0 selects ceil(sqrt(feature count)) = 4.
  std::size_t features_per_split = 0;
  std::uint64_t seed = 0;

  std::size_t split_features() const;
  friend bool operator==(const ForestConfig&, const ForestConfig&) = default;
};

// Entropy in nats of a class histogram.
double entropy(const ClassCounts& counts);

struct SplitCandidate {
  std::size_t feature = 0;  // 0-based
  double threshold = 0.0;
  double gain = 0.0;
};

// Every midpoint split of `feature` over the samples at `indices`, with its
// information gain, in ascending threshold order.
std::vector<SplitCandidate> candidate_splits(std::span<const TrainingSample> samples,
                                             std::span<const std::size_t> indices,
                                             std::size_t feature);

// Splits with gain at or below this are treated as no improvement.
inline constexpr double kMinGain = 1e-12;

class DecisionTree {
 public:
  struct Node {
    std::int32_t feature = -1;  // -1 marks a leaf
    double threshold = 0.0;     // go left when value <= threshold
    std::uint32_t left = 0;
    std::uint32_t right = 0;
    ClassDistribution distribution{};  // empirical class mix of the node's samples

    bool is_leaf() const { return feature < 0; }
    friend bool operator==(const Node&, const Node&) = default;
  };

  // Record of one split decision, for checking split optimality.
  struct SplitTrace {
    std::vector<std::size_t> indices;
    std::vector<std::size_t> features_considered;
    SplitCandidate chosen;
  };

  // Grows a tree on samples[indices] (indices may repeat).
  static DecisionTree grow(std::span<const TrainingSample> samples,
                           std::vector<std::size_t> indices, std::size_t max_depth,
                           std::size_t split_features, Rng& rng,
                           std::vector<SplitTrace>* trace = nullptr);

  static DecisionTree leaf(const ClassDistribution& distribution);

  const ClassDistribution& classify(const FeatureVector& x) const;
  // Number of internal nodes on the longest root-to-leaf path.
  std::size_t depth() const;
  const std::vector<Node>& nodes() const { return nodes_; }

  friend bool operator==(const DecisionTree&, const DecisionTree&) = default;

 private:
  friend class RandomForest;
  std::vector<Node> nodes_;
};

struct Prediction {
  Label label = Label::kNotEnoughInfo;
  ClassDistribution probabilities{};
};

inline constexpr std::uint8_t kModelFormatVersion = 1;

class RandomForest {
 public:
  RandomForest() = default;
  RandomForest(ForestConfig config, std::vector<DecisionTree> trees)
      : config_(config), trees_(std::move(trees)) {}

  // Bootstrap-aggregated trees, tree i driven by the stream (seed, i).
  // Throws TrainingError on fewer than 2 samples or a single class.
  static RandomForest train(std::span<const TrainingSample> samples,
                            const ForestConfig& config,
                            Execution exec = Execution::kParallel);

  // Mean of the leaf distributions; argmax ties go to the earlier label.
  Prediction predict(const FeatureVector& x) const;

  const ForestConfig& config() const { return config_; }
  const std::vector<DecisionTree>& trees() const { return trees_; }

  void save(const std::filesystem::path& path) const;
  static RandomForest load(const std::filesystem::path& path);
  void write(std::ostream& out) const;
  static RandomForest read(std::istream& in);

  friend bool operator==(const RandomForest&, const RandomForest&) = default;

 private:
  ForestConfig config_;
  std::vector<DecisionTree> trees_;
};

inline Prediction predict(const RandomForest& forest, const FeatureVector& x) {
  return forest.predict(x);
}

inline constexpr ClassCounts kDefaultTrainingQuota = {3000, 3000, 4000};

// Per-class uniform sample without replacement; returns positions into
// `labels` in ascending order. A class smaller than its quota is taken whole
// and a warning is appended.
std::vector<std::size_t> sample_per_class(std::span<const Label> labels,
                                          const ClassCounts& quota, std::uint64_t seed,
                                          std::vector<std::string>* warnings = nullptr);

// Unlabelled instances are never selected.
std::vector<FeverInstance> sample_training_claims(std::span<const FeverInstance> instances,
                                                  std::uint64_t seed,
                                                  const ClassCounts& quota = kDefaultTrainingQuota,
                                                  std::vector<std::string>* warnings = nullptr);

}  // namespace claimcheck
