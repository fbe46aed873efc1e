#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "claimcheck/corpus.hpp"
#include "claimcheck/labels.hpp"

namespace claimcheck {

using EvidenceSet = std::vector<SentenceRef>;

// One labelled claim ⟨claim, label, evidence sets⟩. Unlabelled (test) claims
// have no label and no evidence.
struct FeverInstance {
  std::int64_t claim_id = 0;
  std::string claim;
  std::optional<Label> label;
  std::vector<EvidenceSet> evidence_sets;
};

using GoldInstance = FeverInstance;

// Accepts FEVER rows {id, claim, label, evidence}. Evidence entries may be the
// 4-element FEVER form [annotation, evidence id, page, line] or [page, line];
// entries with a null page are dropped, as are sets left empty.
// Throws ParseError (with line number) or ValidationError when a
// SUPPORTS/REFUTES claim carries no evidence.
FeverInstance parse_fever_instance(const nlohmann::json& row, std::size_t line_no = 0);
std::vector<FeverInstance> read_fever_instances(std::istream& in);
std::vector<FeverInstance> read_fever_instances(const std::filesystem::path& path);

nlohmann::json to_json(const FeverInstance& instance);
void write_fever_instances(std::ostream& out, const std::vector<FeverInstance>& instances);

}  // namespace claimcheck
