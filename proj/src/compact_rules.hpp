// SPDX-License-Identifier: Apache-2.0
// Removal rules shared by the statistic-level and integer-level code.
#pragma once

#include <cstddef>
#include <vector>

namespace linwidth::detail {

/// `same(i, j)`: full statistic equality, `pair(i, j)`: equal L and R,
/// `lam(i)`: lambda. Indices refer to the original sequence.
template <class Same, class Pair, class Lam>
struct RemovalRules {
  Same same;
  Pair pair;
  Lam lam;

  bool monotone_between(const std::vector<std::size_t>& s, std::size_t i, std::size_t j) const {
    const int lo = lam(s[i]), hi = lam(s[j]);
    bool up = true, down = true;
    for (std::size_t m = i + 1; m < j; ++m) {
      const int v = lam(s[m]);
      up = up && lo <= v && v <= hi;
      down = down && lo >= v && v >= hi;
    }
    return up || down;
  }

  /// Leftmost applicable removal as a half-open range [from, to) of
  /// positions in `s`; from == to when nothing applies.
  std::pair<std::size_t, std::size_t> first_removal(const std::vector<std::size_t>& s) const {
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i + 1 < s.size() && same(s[i], s[i + 1])) return {i + 1, i + 2};
      for (std::size_t j = i + 2; j < s.size(); ++j) {
        if (!pair(s[i], s[j])) break;  // L and R are monotone, so equal pairs are contiguous
        if (monotone_between(s, i, j)) return {i + 1, j};
      }
    }
    return {0, 0};
  }

  std::vector<std::size_t> compact(std::size_t n) const {
    std::vector<std::size_t> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = i;
    while (true) {
      const auto [from, to] = first_removal(s);
      if (from == to) return s;
      s.erase(s.begin() + static_cast<std::ptrdiff_t>(from), s.begin() + static_cast<std::ptrdiff_t>(to));
    }
  }
};

template <class Same, class Pair, class Lam>
RemovalRules<Same, Pair, Lam> rules(Same s, Pair p, Lam l) {
  return {s, p, l};
}

/// Extensions e1, e2 with pointwise leq(e1[t], e2[t]) exist: a monotone path
/// through the position grid from (0,0) to (n1-1, n2-1) along leq cells.
template <class Leq>
bool aligned_leq(std::size_t n1, std::size_t n2, Leq leq) {
  if (n1 == 0 || n2 == 0) return n1 == n2;
  std::vector<char> reach(n1 * n2, 0);
  for (std::size_t p = 0; p < n1; ++p) {
    for (std::size_t q = 0; q < n2; ++q) {
      if (!leq(p, q)) continue;
      bool r = (p == 0 && q == 0);
      if (p > 0 && reach[(p - 1) * n2 + q]) r = true;
      if (q > 0 && reach[p * n2 + q - 1]) r = true;
      if (p > 0 && q > 0 && reach[(p - 1) * n2 + q - 1]) r = true;
      reach[p * n2 + q] = r;
    }
  }
  return reach[n1 * n2 - 1];
}

}  // namespace linwidth::detail
