#include "claimcheck/verdict.hpp"

#include <algorithm>
#include <fstream>

#include "claimcheck/errors.hpp"
#include "claimcheck/features.hpp"

namespace claimcheck {

Verdict assemble(std::int64_t claim_id, Label predicted,
                 std::span<const ScoredCandidate> candidates) {
  Verdict v;
  v.claim_id = claim_id;
  v.classifier_label = predicted;
  v.label = predicted;
  if (predicted == Label::kNotEnoughInfo) return v;

  const bool supports = predicted == Label::kSupports;
  struct Ranked {
    double product;
    const SentenceRef* ref;
  };
  std::vector<Ranked> ranked;
  bool any_indicated = false;
  for (const auto& c : candidates) {
    const IndicatorTriple ind = indicators(c.triple);
    const std::uint8_t flag = supports ? ind.cs : ind.cr;
    any_indicated = any_indicated || flag == 1;
    const double product = (supports ? c.triple.support : c.triple.refute) * flag;
    if (product > 0.0) ranked.push_back({product, &c.ref});
  }
  if (!any_indicated) {
    v.label = Label::kNotEnoughInfo;
    v.override_applied = true;
    return v;
  }
  std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
    if (a.product != b.product) return a.product > b.product;
    return *a.ref < *b.ref;
  });
  for (const auto& r : ranked) {
    if (v.evidence.size() == kMaxEvidence) break;
    if (std::find(v.evidence.begin(), v.evidence.end(), *r.ref) == v.evidence.end())
      v.evidence.push_back(*r.ref);
  }
  return v;
}

nlohmann::json to_json(const Verdict& v) {
  nlohmann::json evidence = nlohmann::json::array();
  for (const auto& ref : v.evidence) evidence.push_back({ref.page_id, ref.line_number});
  return {{"id", v.claim_id},
          {"predicted_label", std::string(to_string(v.label))},
          {"predicted_evidence", std::move(evidence)}};
}

Verdict parse_prediction(const nlohmann::json& row, std::size_t line_no) {
  Verdict v;
  try {
    v.claim_id = row.at("id").get<std::int64_t>();
    const auto label = parse_label(row.at("predicted_label").get<std::string>());
    if (!label) throw ParseError("unknown predicted_label", line_no);
    v.label = *label;
    v.classifier_label = *label;
    if (auto it = row.find("predicted_evidence"); it != row.end() && !it->is_null()) {
      for (const auto& e : *it) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_number_integer())
          throw ParseError("predicted_evidence entries must be [page_id, line]", line_no);
        v.evidence.push_back({e[0].get<std::string>(), e[1].get<std::uint32_t>()});
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what(), line_no);
  }
  return v;
}

std::vector<Verdict> read_predictions(std::istream& in) {
  std::vector<Verdict> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json row;
    try {
      row = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(e.what(), line_no);
    }
    out.push_back(parse_prediction(row, line_no));
  }
  return out;
}

std::vector<Verdict> read_predictions(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  return read_predictions(in);
}

void write_predictions(std::ostream& out, std::span<const Verdict> verdicts) {
  for (const auto& v : verdicts) out << to_json(v).dump() << '\n';
}

}  // namespace claimcheck
