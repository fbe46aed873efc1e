#include <cmath>

#include "claimcheck/kernels.hpp"

namespace claimcheck {

double dot(const SparseVector& a, const SparseVector& b) {
  double sum = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.bins.size() && j < b.bins.size()) {
    if (a.bins[i] < b.bins[j]) {
      ++i;
    } else if (b.bins[j] < a.bins[i]) {
      ++j;
    } else {
      sum += a.weights[i++] * b.weights[j++];
    }
  }
  return sum;
}

double l2_norm(const SparseVector& v) {
  double sum = 0.0;
  for (double w : v.weights) sum += w * w;
  return std::sqrt(sum);
}

namespace kernels {

namespace {

inline double cosine(const SparseVector& q, double qnorm, const SparseVector& item,
                     double norm) {
  if (norm == 0.0) return 0.0;
  return dot(q, item) / (qnorm * norm);
}

}  // namespace

std::vector<double> cosine_scan_serial(const SparseVector& query,
                                       std::span<const SparseVector> items,
                                       std::span<const double> norms) {
  std::vector<double> scores(items.size(), 0.0);
  const double qnorm = l2_norm(query);
  if (qnorm == 0.0) return scores;
  for (std::size_t i = 0; i < items.size(); ++i)
    scores[i] = cosine(query, qnorm, items[i], norms[i]);
  return scores;
}

std::vector<double> cosine_scan_parallel(const SparseVector& query,
                                         std::span<const SparseVector> items,
                                         std::span<const double> norms) {
  std::vector<double> scores(items.size(), 0.0);
  const double qnorm = l2_norm(query);
  if (qnorm == 0.0) return scores;
  const auto n = static_cast<std::ptrdiff_t>(items.size());
#pragma omp parallel for schedule(static, 1024) if (n > 4096)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    scores[i] = cosine(query, qnorm, items[i], norms[i]);
  return scores;
}

}  // namespace kernels
}  // namespace claimcheck
