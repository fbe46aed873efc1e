#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "claimcheck/corpus.hpp"
#include "claimcheck/execution.hpp"
#include "claimcheck/fever.hpp"

namespace claimcheck {

enum class NliLabel : std::uint8_t { kEntailment = 0, kContradiction = 1, kNeutral = 2 };

std::string_view to_string(NliLabel label);
std::optional<NliLabel> parse_nli_label(std::string_view text);

// Premise is the evidence (or neutral) sentence, hypothesis the claim.
struct NliExample {
  std::string premise;
  std::string hypothesis;
  NliLabel label = NliLabel::kNeutral;
  std::int64_t claim_id = 0;
  SentenceRef origin;  // sentence the premise was taken from

  friend bool operator==(const NliExample&, const NliExample&) = default;
};

using NliClassCounts = std::array<std::size_t, 3>;

struct NliBuildStats {
  std::size_t instances_used = 0;
  std::size_t instances_ignored = 0;  // NOT ENOUGH INFO or unlabelled
  std::size_t neutral_skipped = 0;    // no admissible neutral sentence
  std::size_t duplicates_dropped = 0;
  std::size_t empty_premises = 0;
};

struct NliDataset {
  std::vector<NliExample> examples;
  NliBuildStats stats;
};

NliClassCounts class_counts(std::span<const NliExample> examples);

// Entailment/Contradiction examples from the first sentence of every evidence
// set, each followed by a Neutral sibling drawn from the same page and absent
// from all of the instance's evidence. Randomness is derived per instance from
// (seed, claim_id). Throws ValidationError naming the claim when an evidence
// ref does not resolve.
NliDataset build_nli_dataset(std::span<const FeverInstance> instances, const Corpus& corpus,
                             std::uint64_t seed, Execution exec = Execution::kParallel);

// Reduces every class to the smallest class count by sampling without
// replacement; survivors keep their relative order.
std::vector<NliExample> undersample(std::span<const NliExample> examples, std::uint64_t seed);

nlohmann::json to_json(const NliExample& example);
void write_nli_examples(std::ostream& out, std::span<const NliExample> examples);

nlohmann::json nli_manifest(std::uint64_t seed, const NliBuildStats& stats,
                            const NliClassCounts& before, const NliClassCounts& after);

}  // namespace claimcheck
