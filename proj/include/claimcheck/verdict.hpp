#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include <json.hpp>

#include "claimcheck/corpus.hpp"
#include "claimcheck/entailment.hpp"
#include "claimcheck/labels.hpp"

namespace claimcheck {

inline constexpr std::size_t kMaxEvidence = 5;

struct Verdict {
  std::int64_t claim_id = 0;
  Label label = Label::kNotEnoughInfo;
  std::vector<SentenceRef> evidence;  // empty for NOT ENOUGH INFO, at most 5
  Label classifier_label = Label::kNotEnoughInfo;
  bool override_applied = false;
};

// Turns a classifier label into a verdict. For SUPPORTS (REFUTES) the
// evidence is the top five candidates by s*cs (r*cr) with a positive
// product, ties by (page_id, line_number); when no candidate has cs = 1
// (cr = 1) the label falls back to NOT ENOUGH INFO with no evidence.
Verdict assemble(std::int64_t claim_id, Label predicted,
                 std::span<const ScoredCandidate> candidates);

// FEVER submission row {id, predicted_label, predicted_evidence: [[page, line], ...]}.
nlohmann::json to_json(const Verdict& verdict);
Verdict parse_prediction(const nlohmann::json& row, std::size_t line_no = 0);
std::vector<Verdict> read_predictions(std::istream& in);
std::vector<Verdict> read_predictions(const std::filesystem::path& path);
void write_predictions(std::ostream& out, std::span<const Verdict> verdicts);

}  // namespace claimcheck
