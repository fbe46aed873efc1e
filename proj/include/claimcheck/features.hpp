#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "claimcheck/entailment.hpp"
#include "claimcheck/labels.hpp"

namespace claimcheck {

// Which components of a triple are maximal. Ties set several flags.
struct IndicatorTriple {
  std::uint8_t cs = 0;
  std::uint8_t cr = 0;
  std::uint8_t cu = 0;

  friend bool operator==(const IndicatorTriple&, const IndicatorTriple&) = default;
};

constexpr IndicatorTriple indicators(const EntailmentTriple& t) {
  return {static_cast<std::uint8_t>(t.support >= t.refute && t.support >= t.uninformative),
          static_cast<std::uint8_t>(t.refute >= t.support && t.refute >= t.uninformative),
          static_cast<std::uint8_t>(t.uninformative >= t.support &&
                                    t.uninformative >= t.refute)};
}

inline constexpr std::size_t kFeatureCount = 12;

// f1..f12 for one claim, stored 0-based:
//   f1-f3   indicator counts (cs, cr, cu)
//   f4-f6   sums of the indicated probabilities
//   f7-f9   maxima of s, r, u (0 for no candidates)
//   f10-f12 f4/f1, f5/f2, f6/f3 (0 when the divisor is 0)
struct FeatureVector {
  std::array<double, kFeatureCount> values{};
  std::size_t n = 0;

  double operator[](std::size_t i) const { return values[i]; }
  double& operator[](std::size_t i) { return values[i]; }
  // 1-based accessor matching the f-numbering above.
  double f(std::size_t k) const { return values[k - 1]; }

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

// Sums are accumulated in sorted order, so the result does not depend on the
// order of the candidates.
FeatureVector features(std::span<const EntailmentTriple> triples);
FeatureVector features(std::span<const ScoredCandidate> candidates);

// One row of the feature dump.
struct ClaimFeatures {
  std::int64_t claim_id = 0;
  std::optional<Label> label;
  FeatureVector features;
  std::vector<ScoredCandidate> candidates;
};

nlohmann::json to_json(const ClaimFeatures& row);
ClaimFeatures parse_claim_features(const nlohmann::json& row, std::size_t line_no = 0);
std::vector<ClaimFeatures> read_claim_features(std::istream& in);
void write_claim_features(std::ostream& out, std::span<const ClaimFeatures> rows);
void write_features_csv(std::ostream& out, std::span<const ClaimFeatures> rows);

}  // namespace claimcheck
