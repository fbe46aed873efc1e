#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace claimcheck {

// Edit distance (unit-cost insert/delete/substitute) over code points.
std::size_t levenshtein(std::u32string_view a, std::u32string_view b);

// Same, over UTF-8 strings decoded to Unicode scalar values.
std::size_t levenshtein(std::string_view a, std::string_view b);

// Exact distance when it is <= `bound`; otherwise some value > `bound`.
std::size_t levenshtein_bounded(std::u32string_view a, std::u32string_view b,
                                std::size_t bound);

}  // namespace claimcheck
