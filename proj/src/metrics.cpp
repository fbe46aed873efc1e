#include "claimcheck/metrics.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <set>
#include <unordered_map>

#include "claimcheck/errors.hpp"

namespace claimcheck {

ScoreReport score(std::span<const GoldInstance> gold, std::span<const Verdict> predictions) {
  std::unordered_map<std::int64_t, const GoldInstance*> gold_by_id;
  for (const auto& g : gold) {
    if (!g.label) throw ValidationError("gold claim " + std::to_string(g.claim_id) + " has no label");
    if (!gold_by_id.emplace(g.claim_id, &g).second)
      throw ValidationError("duplicate gold claim id " + std::to_string(g.claim_id));
  }
  std::unordered_map<std::int64_t, const Verdict*> pred_by_id;
  for (const auto& p : predictions) {
    if (gold_by_id.count(p.claim_id) == 0)
      throw ValidationError("prediction for unknown claim id " + std::to_string(p.claim_id));
    if (!pred_by_id.emplace(p.claim_id, &p).second)
      throw ValidationError("duplicate prediction for claim id " + std::to_string(p.claim_id));
  }

  ScoreReport report;
  report.claims = gold.size();
  std::size_t correct = 0, fever_hits = 0;
  std::size_t predicted_refs = 0, predicted_hits = 0, gold_refs = 0, gold_hits = 0;
  const Verdict missing;
  for (const auto& g : gold) {
    auto it = pred_by_id.find(g.claim_id);
    const Verdict& p = it == pred_by_id.end() ? missing : *it->second;
    const Label gold_label = *g.label;
    ++report.confusion[index_of(gold_label)][index_of(p.label)];
    const bool label_ok = p.label == gold_label;
    correct += label_ok;

    if (gold_label == Label::kNotEnoughInfo) {
      fever_hits += label_ok;
      continue;
    }
    const std::set<SentenceRef> predicted(p.evidence.begin(), p.evidence.end());
    std::set<SentenceRef> gold_union;
    for (const auto& set : g.evidence_sets) gold_union.insert(set.begin(), set.end());

    predicted_refs += predicted.size();
    gold_refs += gold_union.size();
    for (const auto& ref : predicted) {
      if (gold_union.count(ref) > 0) {
        ++predicted_hits;
        ++gold_hits;
      }
    }
    const bool complete = std::any_of(
        g.evidence_sets.begin(), g.evidence_sets.end(), [&](const EvidenceSet& set) {
          return std::all_of(set.begin(), set.end(),
                             [&](const SentenceRef& r) { return predicted.count(r) > 0; });
        });
    fever_hits += label_ok && complete;
  }

  const auto ratio = [](std::size_t a, std::size_t b) {
    return static_cast<double>(a) / static_cast<double>(b);
  };
  if (report.claims > 0) {
    report.label_accuracy = ratio(correct, report.claims);
    report.fever_score = ratio(fever_hits, report.claims);
  }
  // Vacuous cases follow the shared-task scorer: nothing predicted means no
  // false positives, nothing to find means nothing missed.
  report.evidence_precision = predicted_refs > 0 ? ratio(predicted_hits, predicted_refs) : 1.0;
  report.evidence_recall = gold_refs > 0 ? ratio(gold_hits, gold_refs) : 1.0;
  const double pr = report.evidence_precision + report.evidence_recall;
  report.evidence_f1 =
      pr > 0.0 ? 2.0 * report.evidence_precision * report.evidence_recall / pr : 0.0;
  return report;
}

nlohmann::json to_json(const ScoreReport& r) {
  nlohmann::json confusion = nlohmann::json::object();
  for (Label g : kAllLabels) {
    nlohmann::json row = nlohmann::json::object();
    for (Label p : kAllLabels)
      row[std::string(to_string(p))] = r.confusion[index_of(g)][index_of(p)];
    confusion[std::string(to_string(g))] = std::move(row);
  }
  return {{"evidence_averaging", std::string(kEvidenceAveraging)},
          {"claims", r.claims},
          {"label_accuracy", r.label_accuracy},
          {"evidence_precision", r.evidence_precision},
          {"evidence_recall", r.evidence_recall},
          {"evidence_f1", r.evidence_f1},
          {"fever_score", r.fever_score},
          {"confusion", std::move(confusion)}};
}

void print_report(std::ostream& out, const ScoreReport& r) {
  const auto flags = out.flags();
  out << std::fixed << std::setprecision(4);
  out << "claims               " << r.claims << '\n'
      << "label accuracy       " << r.label_accuracy << '\n'
      << "evidence precision   " << r.evidence_precision << '\n'
      << "evidence recall      " << r.evidence_recall << '\n'
      << "evidence F1          " << r.evidence_f1 << '\n'
      << "FEVER score          " << r.fever_score << '\n'
      << "(evidence P/R " << kEvidenceAveraging << ")\n\n"
      << "gold \\ predicted     SUPPORTS  REFUTES  NEI\n";
  for (Label g : kAllLabels) {
    out << std::left << std::setw(21) << to_string(g) << std::right;
    for (Label p : kAllLabels) out << std::setw(9) << r.confusion[index_of(g)][index_of(p)];
    out << '\n';
  }
  out.flags(flags);
}

}  // namespace claimcheck
