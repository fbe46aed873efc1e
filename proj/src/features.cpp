#include "claimcheck/features.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include "claimcheck/errors.hpp"

namespace claimcheck {

namespace {

double sorted_sum(std::vector<double>& terms) {
  std::sort(terms.begin(), terms.end());
  double sum = 0.0;
  for (double t : terms) sum += t;
  return sum;
}

}  // namespace

FeatureVector features(std::span<const EntailmentTriple> triples) {
  FeatureVector fv;
  fv.n = triples.size();
  std::array<std::vector<double>, 3> indicated;
  std::array<double, 3> maxima{0.0, 0.0, 0.0};
  for (const auto& t : triples) {
    const IndicatorTriple c = indicators(t);
    const std::array<double, 3> p{t.support, t.refute, t.uninformative};
    const std::array<std::uint8_t, 3> flags{c.cs, c.cr, c.cu};
    for (std::size_t k = 0; k < 3; ++k) {
      fv[k] += flags[k];
      indicated[k].push_back(p[k] * flags[k]);
      maxima[k] = std::max(maxima[k], p[k]);
    }
  }
  for (std::size_t k = 0; k < 3; ++k) {
    fv[3 + k] = sorted_sum(indicated[k]);
    fv[6 + k] = maxima[k];
    fv[9 + k] = fv[k] != 0.0 ? fv[3 + k] / fv[k] : 0.0;
  }
  return fv;
}

FeatureVector features(std::span<const ScoredCandidate> candidates) {
  std::vector<EntailmentTriple> triples;
  triples.reserve(candidates.size());
  for (const auto& c : candidates) triples.push_back(c.triple);
  return features(triples);
}

nlohmann::json to_json(const ClaimFeatures& row) {
  nlohmann::json j;
  j["claim_id"] = row.claim_id;
  j["label"] = row.label ? nlohmann::json(std::string(to_string(*row.label))) : nlohmann::json();
  j["n"] = row.features.n;
  for (std::size_t k = 1; k <= kFeatureCount; ++k)
    j["f" + std::to_string(k)] = row.features.f(k);
  nlohmann::json cands = nlohmann::json::array();
  for (const auto& c : row.candidates) {
    cands.push_back({{"page_id", c.ref.page_id},
                     {"line_number", c.ref.line_number},
                     {"sentence", c.sentence},
                     {"support", c.triple.support},
                     {"refute", c.triple.refute},
                     {"uninformative", c.triple.uninformative}});
  }
  j["candidates"] = std::move(cands);
  return j;
}

ClaimFeatures parse_claim_features(const nlohmann::json& j, std::size_t line_no) {
  ClaimFeatures row;
  try {
    row.claim_id = j.at("claim_id").get<std::int64_t>();
    if (auto it = j.find("label"); it != j.end() && !it->is_null()) {
      row.label = parse_label(it->get<std::string>());
      if (!row.label) throw ParseError("unknown label " + it->dump(), line_no);
    }
    row.features.n = j.at("n").get<std::size_t>();
    for (std::size_t k = 1; k <= kFeatureCount; ++k)
      row.features[k - 1] = j.at("f" + std::to_string(k)).get<double>();
    if (auto it = j.find("candidates"); it != j.end()) {
      for (const auto& c : *it) {
        ScoredCandidate sc;
        sc.ref = {c.at("page_id").get<std::string>(), c.at("line_number").get<std::uint32_t>()};
        if (auto s = c.find("sentence"); s != c.end()) sc.sentence = s->get<std::string>();
        sc.triple = {c.at("support").get<double>(), c.at("refute").get<double>(),
                     c.at("uninformative").get<double>()};
        row.candidates.push_back(std::move(sc));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what(), line_no);
  }
  return row;
}

std::vector<ClaimFeatures> read_claim_features(std::istream& in) {
  std::vector<ClaimFeatures> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(e.what(), line_no);
    }
    rows.push_back(parse_claim_features(j, line_no));
  }
  return rows;
}

void write_claim_features(std::ostream& out, std::span<const ClaimFeatures> rows) {
  for (const auto& r : rows) out << to_json(r).dump() << '\n';
}

void write_features_csv(std::ostream& out, std::span<const ClaimFeatures> rows) {
  out << "claim_id,label,n";
  for (std::size_t k = 1; k <= kFeatureCount; ++k) out << ",f" << k;
  out << '\n';
  for (const auto& r : rows) {
    out << r.claim_id << ',' << (r.label ? to_string(*r.label) : "") << ',' << r.features.n;
    for (double v : r.features.values) out << ',' << nlohmann::json(v).dump();
    out << '\n';
  }
}

}  // namespace claimcheck
