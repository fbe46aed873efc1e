#include "claimcheck/nli_dataset.hpp"

#include <algorithm>
#include <exception>
#include <ostream>
#include <set>
#include <tuple>
#include <unordered_set>

#include "claimcheck/errors.hpp"
#include "claimcheck/rng.hpp"

namespace claimcheck {

std::string_view to_string(NliLabel label) {
  switch (label) {
    case NliLabel::kEntailment:
      return "entailment";
    case NliLabel::kContradiction:
      return "contradiction";
    case NliLabel::kNeutral:
      return "neutral";
  }
  return "?";
}

std::optional<NliLabel> parse_nli_label(std::string_view text) {
  for (NliLabel l : {NliLabel::kEntailment, NliLabel::kContradiction, NliLabel::kNeutral})
    if (text == to_string(l)) return l;
  return std::nullopt;
}

NliClassCounts class_counts(std::span<const NliExample> examples) {
  NliClassCounts counts{};
  for (const auto& e : examples) ++counts[static_cast<std::size_t>(e.label)];
  return counts;
}

namespace {

struct Generated {
  NliExample example;
  std::optional<NliExample> neutral;  // empty: recorded skip
};

struct InstanceOutput {
  std::vector<Generated> pairs;
  std::size_t empty_premises = 0;
  std::size_t duplicates = 0;
};

InstanceOutput generate(const FeverInstance& inst, const Corpus& corpus, std::uint64_t seed) {
  InstanceOutput out;
  std::set<SentenceRef> in_evidence;
  for (const auto& set : inst.evidence_sets) {
    for (const auto& ref : set) {
      if (!corpus.sentence(ref))
        throw ValidationError("claim " + std::to_string(inst.claim_id) + ": evidence (" +
                              ref.page_id + ", " + std::to_string(ref.line_number) +
                              ") is not in the corpus");
      in_evidence.insert(ref);
    }
  }

  const NliLabel label =
      *inst.label == Label::kSupports ? NliLabel::kEntailment : NliLabel::kContradiction;
  Rng rng(derive_seed(seed, static_cast<std::uint64_t>(inst.claim_id)));
  std::set<SentenceRef> used_neutral;
  std::set<std::string_view> seen_premises;

  for (const auto& set : inst.evidence_sets) {
    const SentenceRef& first = set.front();
    const std::string_view premise = *corpus.sentence(first);
    if (premise.empty()) {
      ++out.empty_premises;
      continue;
    }
    // Same premise twice within one claim is a duplicate triple.
    if (!seen_premises.insert(premise).second) {
      ++out.duplicates;
      continue;
    }

    Generated g;
    g.example = {std::string(premise), inst.claim, label, inst.claim_id, first};

    const Document* doc = corpus.find(first.page_id);
    std::vector<const SentenceLine*> admissible;
    for (const auto& line : doc->lines) {
      const SentenceRef ref{doc->page_id, line.line_number};
      if (!line.empty() && in_evidence.count(ref) == 0 && used_neutral.count(ref) == 0)
        admissible.push_back(&line);
    }
    if (!admissible.empty()) {
      const SentenceLine* pick = admissible[rng.below(admissible.size())];
      const SentenceRef ref{doc->page_id, pick->line_number};
      used_neutral.insert(ref);
      g.neutral = NliExample{pick->text, inst.claim, NliLabel::kNeutral, inst.claim_id, ref};
    }
    out.pairs.push_back(std::move(g));
  }
  return out;
}

using TripleKey = std::tuple<std::string, std::string, NliLabel>;

struct TripleKeyHash {
  std::size_t operator()(const TripleKey& k) const noexcept {
    const std::size_t a = std::hash<std::string>{}(std::get<0>(k));
    const std::size_t b = std::hash<std::string>{}(std::get<1>(k));
    return a ^ (b * 0x9e3779b97f4a7c15ULL) ^ static_cast<std::size_t>(std::get<2>(k));
  }
};

}  // namespace

NliDataset build_nli_dataset(std::span<const FeverInstance> instances, const Corpus& corpus,
                             std::uint64_t seed, Execution exec) {
  NliDataset result;
  std::vector<const FeverInstance*> used;
  for (const auto& inst : instances) {
    if (inst.label && *inst.label != Label::kNotEnoughInfo && !inst.evidence_sets.empty())
      used.push_back(&inst);
    else
      ++result.stats.instances_ignored;
  }
  result.stats.instances_used = used.size();

  std::vector<InstanceOutput> outputs(used.size());
  const auto n = static_cast<std::ptrdiff_t>(used.size());
  std::exception_ptr failure;
  std::ptrdiff_t failed_at = n;
#pragma omp parallel for schedule(dynamic, 16) if (exec == Execution::kParallel && n > 64)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      outputs[i] = generate(*used[i], corpus, seed);
    } catch (...) {
#pragma omp critical(claimcheck_nli_failure)
      if (i < failed_at) {
        failed_at = i;
        failure = std::current_exception();
      }
    }
  }
  if (failure) std::rethrow_exception(failure);

  std::unordered_set<TripleKey, TripleKeyHash> seen;
  auto key = [](const NliExample& e) { return TripleKey{e.premise, e.hypothesis, e.label}; };
  for (auto& out : outputs) {
    result.stats.empty_premises += out.empty_premises;
    result.stats.duplicates_dropped += out.duplicates;
    for (auto& g : out.pairs) {
      if (!seen.insert(key(g.example)).second) {
        ++result.stats.duplicates_dropped;
        continue;
      }
      result.examples.push_back(std::move(g.example));
      if (g.neutral && seen.insert(key(*g.neutral)).second) {
        result.examples.push_back(std::move(*g.neutral));
      } else {
        if (g.neutral) ++result.stats.duplicates_dropped;
        ++result.stats.neutral_skipped;
      }
    }
  }
  return result;
}

std::vector<NliExample> undersample(std::span<const NliExample> examples, std::uint64_t seed) {
  std::array<std::vector<std::size_t>, 3> by_class;
  for (std::size_t i = 0; i < examples.size(); ++i)
    by_class[static_cast<std::size_t>(examples[i].label)].push_back(i);
  const std::size_t m =
      std::min({by_class[0].size(), by_class[1].size(), by_class[2].size()});

  std::vector<bool> keep(examples.size(), false);
  for (std::size_t c = 0; c < by_class.size(); ++c) {
    auto& pool = by_class[c];
    Rng rng(derive_seed(seed, c));
    // Partial Fisher-Yates: the first m slots become a uniform sample.
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t j = i + rng.below(pool.size() - i);
      std::swap(pool[i], pool[j]);
      keep[pool[i]] = true;
    }
  }
  std::vector<NliExample> out;
  out.reserve(3 * m);
  for (std::size_t i = 0; i < examples.size(); ++i)
    if (keep[i]) out.push_back(examples[i]);
  return out;
}

nlohmann::json to_json(const NliExample& e) {
  return {{"premise", e.premise},
          {"hypothesis", e.hypothesis},
          {"label", std::string(to_string(e.label))},
          {"origin",
           {{"claim_id", e.claim_id},
            {"page_id", e.origin.page_id},
            {"line_number", e.origin.line_number}}}};
}

void write_nli_examples(std::ostream& out, std::span<const NliExample> examples) {
  for (const auto& e : examples) out << to_json(e).dump() << '\n';
}

nlohmann::json nli_manifest(std::uint64_t seed, const NliBuildStats& stats,
                            const NliClassCounts& before, const NliClassCounts& after) {
  auto counts = [](const NliClassCounts& c) {
    return nlohmann::json{{"entailment", c[0]}, {"contradiction", c[1]}, {"neutral", c[2]}};
  };
  return {{"seed", seed},
          {"counts_before_undersampling", counts(before)},
          {"counts_after_undersampling", counts(after)},
          {"instances_used", stats.instances_used},
          {"instances_ignored", stats.instances_ignored},
          {"neutral_skipped", stats.neutral_skipped},
          {"duplicates_dropped", stats.duplicates_dropped},
          {"empty_premises", stats.empty_premises}};
}

}  // namespace claimcheck
