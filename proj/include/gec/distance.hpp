// SPDX-License-Identifier: Apache-2.0
#ifndef GEC_DISTANCE_HPP
#define GEC_DISTANCE_HPP

#include "gec/utf8.hpp"

#include <algorithm>
#include <cstddef>
#include <string_view>
#include <vector>

namespace gec {

/// Levenshtein counts insertions, deletions and substitutions. The optimal
/// string alignment variant additionally charges 1 for swapping two adjacent
/// scalars (restricted Damerau distance).
enum class EditMetric { Levenshtein, OptimalStringAlignment };

template <typename Seq>
std::size_t edit_distance(const Seq &a, const Seq &b,
                          EditMetric metric = EditMetric::Levenshtein) {
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  std::vector<std::size_t> prev2(m + 1), prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j)
    prev[j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost});
      if (metric == EditMetric::OptimalStringAlignment && i > 1 && j > 1 &&
          a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1])
        cur[j] = std::min(cur[j], prev2[j - 2] + 1);
    }
    std::swap(prev2, prev);
    std::swap(prev, cur);
  }
  return prev[m];
}

/// Edit distance between two UTF-8 strings, measured in Unicode scalars.
inline std::size_t levenshtein(std::string_view a, std::string_view b,
                               EditMetric metric = EditMetric::Levenshtein) {
  return edit_distance(utf8::to_scalars(a), utf8::to_scalars(b), metric);
}

} // namespace gec

#endif // GEC_DISTANCE_HPP
