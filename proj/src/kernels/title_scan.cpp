#include <limits>

#include "claimcheck/kernels.hpp"
#include "claimcheck/levenshtein.hpp"

namespace claimcheck::kernels {

namespace {

bool better(std::size_t dist, std::size_t index, const TitleHit& best,
            std::span<const std::u32string> titles, std::span<const std::string> keys) {
  if (!best.found) return true;
  if (dist != best.distance) return dist < best.distance;
  if (titles[index].size() != titles[best.index].size())
    return titles[index].size() < titles[best.index].size();
  return keys[index] < keys[best.index];
}

}  // namespace

TitleHit title_scan_serial(const std::u32string& entity,
                           std::span<const std::u32string> titles,
                           std::span<const std::string> order_key) {
  TitleHit best;
  for (std::size_t i = 0; i < titles.size(); ++i) {
    const std::size_t d = levenshtein(entity, titles[i]);
    if (better(d, i, best, titles, order_key)) best = {i, d, true};
  }
  return best;
}

TitleHit title_scan_parallel(const std::u32string& entity,
                             std::span<const std::u32string> titles,
                             std::span<const std::string> order_key) {
  TitleHit best;
  const auto n = static_cast<std::ptrdiff_t>(titles.size());
#pragma omp parallel if (n > 2048)
  {
    TitleHit local;
#pragma omp for schedule(static) nowait
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const std::u32string& title = titles[i];
      const std::size_t gap = title.size() > entity.size() ? title.size() - entity.size()
                                                           : entity.size() - title.size();
      if (local.found && gap > local.distance) continue;
      const std::size_t bound =
          local.found ? local.distance : std::numeric_limits<std::size_t>::max() - 1;
      const std::size_t d = levenshtein_bounded(entity, title, bound);
      if (d > bound) continue;
      if (better(d, static_cast<std::size_t>(i), local, titles, order_key))
        local = {static_cast<std::size_t>(i), d, true};
    }
#pragma omp critical(claimcheck_title_scan)
    {
      if (local.found && better(local.distance, local.index, best, titles, order_key))
        best = local;
    }
  }
  return best;
}

}  // namespace claimcheck::kernels
