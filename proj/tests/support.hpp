// SPDX-License-Identifier: Apache-2.0
// Test-only helpers: seeded generators and brute-force oracles that do not go
// through the echelon machinery they check.
#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "linwidth/ffla.hpp"

namespace linwidth::testing {

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline Vector random_vector(std::mt19937_64& g, const Field& f, std::size_t n) {
  std::uniform_int_distribution<Scalar> d(0, f.order() - 1);
  Vector v(n);
  for (auto& x : v) x = d(g);
  return v;
}

/// All vectors of GF(q)^n.
inline std::vector<Vector> all_vectors(const Field& f, std::size_t n) {
  std::vector<Vector> out;
  Vector v(n, 0);
  while (true) {
    out.push_back(v);
    std::size_t i = 0;
    while (i < n && ++v[i] == f.order()) v[i++] = 0;
    if (i == n) break;
  }
  return out;
}

/// Span as an explicit set: closure of {0} under adding multiples of each
/// generator.
inline std::set<Vector> brute_span(const Field& f, std::size_t n, const std::vector<Vector>& gens) {
  std::set<Vector> s{Vector(n, 0)};
  for (const auto& g : gens) {
    std::set<Vector> next;
    for (const auto& v : s) {
      for (Scalar c = 0; c < f.order(); ++c) {
        Vector w = v;
        for (std::size_t i = 0; i < n; ++i) w[i] = f.add(w[i], f.mul(c, g[i]));
        next.insert(std::move(w));
      }
    }
    s = std::move(next);
  }
  return s;
}

/// Rank as log_q of the explicit span size.
inline int brute_rank(const Field& f, std::size_t n, const std::vector<Vector>& vs) {
  std::size_t size = brute_span(f, n, vs).size(), r = 0;
  while (size > 1) size /= f.order(), ++r;
  return static_cast<int>(r);
}

/// lambda(X) = r(X) + r(E-X) - r(E) for every X, indexed by bitmask.
inline std::vector<int> brute_lambda_table(const Field& f, std::size_t n, const std::vector<Vector>& vs) {
  const std::size_t m = vs.size();
  const int total = brute_rank(f, n, vs);
  std::vector<int> out(std::size_t{1} << m);
  for (std::size_t x = 0; x < out.size(); ++x) {
    std::vector<Vector> in, outside;
    for (std::size_t i = 0; i < m; ++i) ((x >> i) & 1 ? in : outside).push_back(vs[i]);
    out[x] = brute_rank(f, n, in) + brute_rank(f, n, outside) - total;
  }
  return out;
}

/// Cut-rank of every vertex subset of a graph given by 0/1 adjacency rows.
inline std::vector<int> brute_cut_rank_table(const std::vector<std::vector<int>>& adj) {
  const std::size_t n = adj.size();
  const auto& f2 = *Field::gf2();
  std::vector<int> out(std::size_t{1} << n);
  for (std::size_t x = 0; x < out.size(); ++x) {
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < n; ++j) {
      if (!((x >> j) & 1)) cols.push_back(j);
    }
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < n; ++i) {
      if (!((x >> i) & 1)) continue;
      Vector r;
      for (auto j : cols) r.push_back(static_cast<Scalar>(adj[i][j]));
      rows.push_back(r);
    }
    out[x] = brute_rank(f2, cols.size(), rows);
  }
  return out;
}

inline std::vector<std::vector<int>> random_adjacency(std::mt19937_64& g, std::size_t n, double p = 0.5) {
  std::bernoulli_distribution d(p);
  std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) a[i][j] = a[j][i] = d(g) ? 1 : 0;
  }
  return a;
}

/// Minimum over all orderings of the largest proper-prefix value of a
/// set-function table on n elements.
inline int brute_layout_width(const std::vector<int>& table, std::size_t n) {
  if (n <= 1) return 0;
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  int best = 1 << 20;
  do {
    int w = 0;
    std::size_t m = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) w = std::max(w, table[m |= std::size_t{1} << perm[i]]);
    best = std::min(best, w);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace linwidth::testing
