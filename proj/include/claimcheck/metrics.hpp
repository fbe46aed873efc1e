#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <string>

#include <json.hpp>

#include "claimcheck/fever.hpp"
#include "claimcheck/verdict.hpp"

namespace claimcheck {

// confusion[gold][predicted]
using ConfusionMatrix = std::array<std::array<std::size_t, kLabelCount>, kLabelCount>;

struct ScoreReport {
  double label_accuracy = 0.0;
  double evidence_precision = 0.0;
  double evidence_recall = 0.0;
  double evidence_f1 = 0.0;
  double fever_score = 0.0;
  std::size_t claims = 0;
  ConfusionMatrix confusion{};
};

inline constexpr std::string_view kEvidenceAveraging =
    "micro-averaged over claims whose gold label is not NOT ENOUGH INFO";

// Claims without a prediction count as NOT ENOUGH INFO with no evidence.
// Throws ValidationError for predictions of unknown or repeated claim ids, or
// gold instances without a label.
ScoreReport score(std::span<const GoldInstance> gold, std::span<const Verdict> predictions);

nlohmann::json to_json(const ScoreReport& report);
void print_report(std::ostream& out, const ScoreReport& report);

}  // namespace claimcheck
