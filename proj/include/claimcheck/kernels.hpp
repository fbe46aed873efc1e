#pragma once

// Data-parallel inner loops. Every kernel has a serial reference version
// that defines its result; the OpenMP version must match it exactly.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "claimcheck/execution.hpp"

namespace claimcheck {

// Sparse vector sorted by strictly increasing bin.
struct SparseVector {
  std::vector<std::uint32_t> bins;
  std::vector<double> weights;

  std::size_t size() const { return bins.size(); }
  bool empty() const { return bins.empty(); }
  friend bool operator==(const SparseVector&, const SparseVector&) = default;
};

double dot(const SparseVector& a, const SparseVector& b);
double l2_norm(const SparseVector& v);

namespace kernels {

// Cosine of `query` against every item. Items with zero norm score 0.
std::vector<double> cosine_scan_serial(const SparseVector& query,
                                       std::span<const SparseVector> items,
                                       std::span<const double> norms);
std::vector<double> cosine_scan_parallel(const SparseVector& query,
                                         std::span<const SparseVector> items,
                                         std::span<const double> norms);

inline std::vector<double> cosine_scan(const SparseVector& query,
                                       std::span<const SparseVector> items,
                                       std::span<const double> norms,
                                       Execution exec) {
  return exec == Execution::kParallel ? cosine_scan_parallel(query, items, norms)
                                      : cosine_scan_serial(query, items, norms);
}

struct TitleHit {
  std::size_t index = 0;
  std::size_t distance = 0;
  bool found = false;
};

// Minimal-distance title for `entity` with ties broken by shorter title, then
// by `order_key` ascending. The serial version scans every title; the
// parallel one also skips titles whose length difference alone exceeds the
// running best, which cannot change the result.
TitleHit title_scan_serial(const std::u32string& entity,
                           std::span<const std::u32string> titles,
                           std::span<const std::string> order_key);
TitleHit title_scan_parallel(const std::u32string& entity,
                             std::span<const std::u32string> titles,
                             std::span<const std::string> order_key);

inline TitleHit title_scan(const std::u32string& entity,
                           std::span<const std::u32string> titles,
                           std::span<const std::string> order_key, Execution exec) {
  return exec == Execution::kParallel ? title_scan_parallel(entity, titles, order_key)
                                      : title_scan_serial(entity, titles, order_key);
}

}  // namespace kernels
}  // namespace claimcheck
