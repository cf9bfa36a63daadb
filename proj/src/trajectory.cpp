// SPDX-License-Identifier: Apache-2.0
#include "linwidth/trajectory.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

#include "compact_rules.hpp"
#include "linwidth/errors.hpp"

namespace linwidth {

namespace {

bool same_pair(const Statistic& a, const Statistic& b) { return a.L == b.L && a.R == b.R; }

auto statistic_rules(const Trajectory& t) {
  return detail::rules([&t](std::size_t i, std::size_t j) { return t[i] == t[j]; },
                       [&t](std::size_t i, std::size_t j) { return same_pair(t[i], t[j]); },
                       [&t](std::size_t i) { return t[i].lambda; });
}

auto sequence_rules(const std::vector<int>& s) {
  return detail::rules([&s](std::size_t i, std::size_t j) { return s[i] == s[j]; },
                       [](std::size_t, std::size_t) { return true; }, [&s](std::size_t i) { return s[i]; });
}

}  // namespace

bool validate(const Subspace& b, const Trajectory& t) {
  if (t.empty()) return false;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i].lambda < 0) return false;
    if (t[i].L.ambient() != b.ambient() || t[i].R.ambient() != b.ambient()) return false;
    if (!b.contains(t[i].L) || !b.contains(t[i].R)) return false;
    if (i > 0 && !t[i].L.contains(t[i - 1].L)) return false;
    if (i > 0 && !t[i - 1].R.contains(t[i].R)) return false;
  }
  return t.front().R == t.back().L;
}

int width(const Trajectory& t) {
  int w = 0;
  for (const auto& a : t) w = std::max(w, a.lambda);
  return w;
}

Trajectory compactify(const Trajectory& t) {
  Trajectory out;
  for (auto i : statistic_rules(t).compact(t.size())) out.push_back(t[i]);
  return out;
}

bool is_compact(const Trajectory& t) {
  std::vector<std::size_t> all(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) all[i] = i;
  const auto [from, to] = statistic_rules(t).first_removal(all);
  return from == to;
}

bool stat_leq(const Statistic& a, const Statistic& b) { return same_pair(a, b) && a.lambda <= b.lambda; }

bool traj_tle(const Trajectory& t1, const Trajectory& t2) {
  return detail::aligned_leq(t1.size(), t2.size(), [&](std::size_t p, std::size_t q) { return stat_leq(t1[p], t2[q]); });
}

bool sequence_tle(const std::vector<int>& a, const std::vector<int>& b) {
  return detail::aligned_leq(a.size(), b.size(), [&](std::size_t p, std::size_t q) { return a[p] <= b[q]; });
}

const std::vector<std::vector<int>>& compact_lambda_sequences(int k) {
  static std::mutex mu;
  static std::map<int, std::vector<std::vector<int>>> cache;
  if (k < 0) throw InputError("negative width bound");
  std::lock_guard lock(mu);
  if (auto it = cache.find(k); it != cache.end()) return it->second;

  auto is_compact_seq = [](const std::vector<int>& s) {
    std::vector<std::size_t> all(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) all[i] = i;
    const auto [from, to] = sequence_rules(s).first_removal(all);
    return from == to;
  };
  // Compactness is inherited by prefixes, so extend level by level.
  std::vector<std::vector<int>> out, frontier;
  for (int v = 0; v <= k; ++v) frontier.push_back({v});
  const std::size_t cap = static_cast<std::size_t>(2 * k + 1);
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (auto& s : frontier) {
      if (s.size() > cap) throw InvariantViolation("compact lambda sequence longer than 2k+1");
      for (int v = 0; v <= k; ++v) {
        auto t = s;
        t.push_back(v);
        if (is_compact_seq(t)) next.push_back(std::move(t));
      }
      out.push_back(std::move(s));
    }
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return cache.emplace(k, std::move(out)).first->second;
}

SubspaceLattice::SubspaceLattice(const Subspace& b) : b_(b) {
  std::set<Subspace> seen{Subspace::zero(b.field(), b.ambient())};
  std::vector<Subspace> frontier(seen.begin(), seen.end());
  const auto vectors = b.elements();
  while (!frontier.empty()) {
    std::vector<Subspace> next;
    for (const auto& s : frontier) {
      for (const auto& v : vectors) {
        if (s.contains(v)) continue;
        auto t = sum(s, Subspace::span(b.field(), b.ambient(), {v}));
        if (seen.insert(t).second) next.push_back(std::move(t));
      }
    }
    frontier = std::move(next);
  }
  members_.assign(seen.begin(), seen.end());
  std::stable_sort(members_.begin(), members_.end(),
                   [](const Subspace& x, const Subspace& y) { return x.dim() < y.dim(); });
  for (std::size_t i = 0; i < members_.size(); ++i) ids_.emplace(members_[i], i);
  const std::size_t n = members_.size();
  leq_.assign(n * n, false);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) leq_[i * n + j] = members_[j].contains(members_[i]);
  }
}

std::size_t SubspaceLattice::id_of(const Subspace& s) const {
  const auto it = ids_.find(s);
  if (it == ids_.end()) throw InvariantViolation("subspace is not contained in the lattice top");
  return it->second;
}

std::size_t compact_length_cap(std::size_t dim_b, int k) {
  return (2 * dim_b + 1) * static_cast<std::size_t>(2 * k + 1);
}

std::uint64_t for_each_compact(const Subspace& b, int k, const std::function<void(const Trajectory&)>& visit,
                               const EnumerationBudget& budget) {
  if (k < 0) throw InputError("negative width bound");
  if (b.dim() > budget.max_dim || k > budget.max_k) {
    throw BudgetExceeded("U_k(B) enumeration limited to dim B <= " + std::to_string(budget.max_dim) +
                         " and k <= " + std::to_string(budget.max_k));
  }
  const SubspaceLattice lattice(b);
  const auto& seqs = compact_lambda_sequences(k);
  const std::size_t cap = compact_length_cap(b.dim(), k);
  const std::size_t n = lattice.size();
  std::uint64_t count = 0;

  // Chains of distinct (L, R) pairs; each pair carries one compact lambda block.
  std::vector<std::pair<std::size_t, std::size_t>> chain;
  std::vector<std::size_t> choice;
  auto emit = [&] {
    choice.assign(chain.size(), 0);
    while (true) {
      Trajectory t;
      for (std::size_t c = 0; c < chain.size(); ++c) {
        for (int lam : seqs[choice[c]]) t.push_back({lattice[chain[c].first], lattice[chain[c].second], lam});
      }
      if (t.size() > cap) throw InvariantViolation("compact trajectory exceeds the length cap");
      visit(t);
      ++count;
      std::size_t c = 0;
      for (; c < chain.size(); ++c) {
        if (++choice[c] < seqs.size()) break;
        choice[c] = 0;
      }
      if (c == chain.size()) return;
    }
  };
  std::function<void()> extend = [&] {
    const auto [l, r] = chain.back();
    if (chain.front().second == l) emit();
    for (std::size_t l2 = 0; l2 < n; ++l2) {
      if (!lattice.leq(l, l2)) continue;
      for (std::size_t r2 = 0; r2 < n; ++r2) {
        if (!lattice.leq(r2, r) || (l2 == l && r2 == r)) continue;
        chain.push_back({l2, r2});
        extend();
        chain.pop_back();
      }
    }
  };
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t r = 0; r < n; ++r) {
      chain.assign(1, {l, r});
      extend();
    }
  }
  return count;
}

std::uint64_t count_compact(const Subspace& b, int k, const EnumerationBudget& budget) {
  return for_each_compact(b, k, [](const Trajectory&) {}, budget);
}

std::vector<Trajectory> enumerate_compact(const Subspace& b, int k, const EnumerationBudget& budget) {
  std::vector<Trajectory> out;
  for_each_compact(
      b, k,
      [&](const Trajectory& t) {
        if (out.size() >= budget.max_members) throw BudgetExceeded("U_k(B) has too many members to materialize");
        out.push_back(t);
      },
      budget);
  std::sort(out.begin(), out.end());
  return out;
}

boost::multiprecision::cpp_int compact_count_bound(unsigned theta, unsigned k, unsigned q) {
  using boost::multiprecision::cpp_int;
  using boost::multiprecision::pow;
  return pow(cpp_int(2), 9 * theta + 2) * pow(cpp_int(q), theta == 0 ? 0 : theta * (theta - 1)) *
         pow(cpp_int(2), 2 * (2 * theta + 1) * k);
}

Trajectory map_trajectory(const LinearMap& phi, const Subspace& b1, const Trajectory& t) {
  if (phi.in_dim() != b1.ambient()) throw DimensionMismatch("map domain differs from the ambient of B");
  if (!phi.injective_on(b1)) throw InputError("map is not injective on B");
  Trajectory out;
  out.reserve(t.size());
  for (const auto& a : t) out.push_back({phi.image(a.L), phi.image(a.R), a.lambda});
  return out;
}

nlohmann::json to_json(const Subspace& s) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < s.dim(); ++i) {
    const auto r = s.basis_row(i);
    rows.push_back(std::vector<Scalar>(r.begin(), r.end()));
  }
  return rows;
}

nlohmann::json to_json(const Trajectory& t) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& a : t) out.push_back({{"L", to_json(a.L)}, {"R", to_json(a.R)}, {"lambda", a.lambda}});
  return out;
}

}  // namespace linwidth
