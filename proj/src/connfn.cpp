// SPDX-License-Identifier: Apache-2.0
#include "linwidth/connfn.hpp"

#include <algorithm>
#include <bit>
#include <boost/multiprecision/cpp_int.hpp>
#include <climits>
#include <thread>

#include "linwidth/errors.hpp"

namespace linwidth {

int popcount(Mask m) { return std::popcount(m); }

ConnectivityFunction::ConnectivityFunction(std::vector<std::string> labels, const Evaluator& f)
    : labels_(std::move(labels)) {
  if (labels_.size() > kMaxGround) throw BudgetExceeded("ground set too large to tabulate");
  const Mask count = Mask{1} << labels_.size();
  table_.resize(count);
  for (Mask x = 0; x < count; ++x) table_[x] = f(x);
}

ConnectivityFunction ConnectivityFunction::from_table(std::vector<std::string> labels,
                                                      std::vector<int> table) {
  if (labels.size() > kMaxGround) throw BudgetExceeded("ground set too large to tabulate");
  if (table.size() != (std::size_t{1} << labels.size())) {
    throw InputError("connectivity table size does not match ground set");
  }
  ConnectivityFunction f;
  f.labels_ = std::move(labels);
  f.table_ = std::move(table);
  return f;
}

bool ConnectivityFunction::is_symmetric() const {
  const Mask g = ground();
  for (Mask x = 0; x <= g; ++x) {
    if (table_[x] != table_[g & ~x]) return false;
    if (x == g) break;
  }
  return true;
}

bool ConnectivityFunction::is_submodular() const {
  const std::size_t count = table_.size();
  for (Mask x = 0; x < count; ++x) {
    for (Mask y = x + 1; y < count; ++y) {
      if (table_[x] + table_[y] < table_[x | y] + table_[x & y]) return false;
    }
  }
  return true;
}

void validate_layout(const Layout& layout, std::size_t n) {
  if (layout.size() != n) throw InputError("layout length does not match ground set size");
  std::vector<bool> seen(n, false);
  for (auto e : layout) {
    if (e >= n || seen[e]) throw InputError("layout is not a permutation of the ground set");
    seen[e] = true;
  }
}

CutProfile cut_profile(const ConnectivityFunction& f, const Layout& layout) {
  validate_layout(layout, f.size());
  CutProfile a;
  a.reserve(layout.size() + 1);
  Mask prefix = 0;
  a.push_back(f(prefix));
  for (auto e : layout) {
    prefix |= bit(e);
    a.push_back(f(prefix));
  }
  return a;
}

int width(const ConnectivityFunction& f, const Layout& layout) {
  const CutProfile a = cut_profile(f, layout);
  int w = 0;
  for (std::size_t i = 1; i + 1 < a.size(); ++i) w = std::max(w, a[i]);
  return w;
}

namespace {

// Lexicographic DFS over layouts beginning with `first`; keeps only strict
// improvements so the first optimum found is lexicographically least.
struct ExhaustiveSearch {
  const ConnectivityFunction& f;
  std::size_t n;
  int best = INT_MAX;
  Layout best_layout;
  Layout current;

  void run(std::size_t first) {
    current.assign(1, first);
    const int running = (n > 1) ? f(bit(first)) : 0;
    dfs(bit(first), running);
  }

  void dfs(Mask mask, int running) {
    if (running >= best) return;
    if (current.size() == n) {
      best = running;
      best_layout = current;
      return;
    }
    for (std::size_t e = 0; e < n; ++e) {
      if (mask & bit(e)) continue;
      const Mask next = mask | bit(e);
      const int r = (current.size() + 1 < n) ? std::max(running, f(next)) : running;
      current.push_back(e);
      dfs(next, r);
      current.pop_back();
    }
  }
};

PathWidthResult exhaustive(const ConnectivityFunction& f, unsigned workers) {
  const std::size_t n = f.size();
  std::vector<PathWidthResult> per_first(n);
  auto task = [&](std::size_t first) {
    ExhaustiveSearch s{f, n, INT_MAX, {}, {}};
    s.run(first);
    per_first[first] = {s.best, s.best_layout};
  };
  if (workers <= 1 || n < 2) {
    for (std::size_t e = 0; e < n; ++e) task(e);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t w = std::min<std::size_t>(workers, n);
    for (std::size_t t = 0; t < w; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t e = t; e < n; e += w) task(e);
      });
    }
  }
  PathWidthResult best{INT_MAX, {}};
  for (auto& r : per_first) {
    if (r.width < best.width) best = std::move(r);
  }
  return best;
}

// remaining[mask]: least achievable max of f over proper prefixes strictly
// after `mask` in a layout extending it.
std::vector<int> remaining_costs(const ConnectivityFunction& f) {
  const std::size_t n = f.size();
  const Mask full = f.ground();
  std::vector<int> rem(std::size_t{1} << n, INT_MAX);
  rem[full] = 0;
  for (Mask m = full; m-- > 0;) {
    int best = INT_MAX;
    for (std::size_t e = 0; e < n; ++e) {
      if (m & bit(e)) continue;
      const Mask next = m | bit(e);
      const int here = (next == full) ? 0 : f(next);
      best = std::min(best, std::max(here, rem[next]));
    }
    rem[m] = best;
  }
  return rem;
}

PathWidthResult subset_dp(const ConnectivityFunction& f) {
  const std::size_t n = f.size();
  const Mask full = f.ground();
  const auto rem = remaining_costs(f);
  PathWidthResult r{rem[0], {}};
  Mask mask = 0;
  while (mask != full) {
    for (std::size_t e = 0; e < n; ++e) {
      if (mask & bit(e)) continue;
      const Mask next = mask | bit(e);
      const int here = (next == full) ? 0 : f(next);
      if (std::max(here, rem[next]) <= r.width) {
        r.layout.push_back(e);
        mask = next;
        break;
      }
    }
  }
  return r;
}

}  // namespace

PathWidthResult path_width(const ConnectivityFunction& f, const SearchOptions& options) {
  const std::size_t n = f.size();
  if (n == 0) return {0, {}};
  if (n == 1) return {0, {0}};
  if (options.strategy == SearchOptions::Strategy::SubsetDp) return subset_dp(f);
  if (n > options.budget) {
    throw BudgetExceeded("path-width search over " + std::to_string(n) + " elements exceeds budget " +
                         std::to_string(options.budget));
  }
  return exhaustive(f, options.workers);
}

bool is_linked(const ConnectivityFunction& f, const Layout& layout) {
  const CutProfile a = cut_profile(f, layout);
  const std::size_t n = layout.size();
  std::vector<Mask> prefix(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] | bit(layout[i]);
  for (std::size_t i = 0; i < n; ++i) {
    int prefix_min = a[i];
    for (std::size_t j = i + 1; j <= n; ++j) {
      prefix_min = std::min(prefix_min, a[j]);
      const Mask free = prefix[j] & ~prefix[i];
      int set_min = INT_MAX;
      // Enumerate all submasks of `free`, including the empty one.
      for (Mask s = free;; s = (s - 1) & free) {
        set_min = std::min(set_min, f(prefix[i] | s));
        if (s == 0) break;
      }
      if (set_min != prefix_min) return false;
    }
  }
  return true;
}

namespace {

struct LinkedSearch {
  const ConnectivityFunction& f;
  std::size_t n;
  int target;
  Layout current;
  std::optional<Layout> found;

  void dfs(Mask mask) {
    if (found) return;
    if (current.size() == n) {
      if (is_linked(f, current)) found = current;
      return;
    }
    for (std::size_t e = 0; e < n && !found; ++e) {
      if (mask & bit(e)) continue;
      const Mask next = mask | bit(e);
      if (current.size() + 1 < n && f(next) > target) continue;
      current.push_back(e);
      dfs(next);
      current.pop_back();
    }
  }
};

}  // namespace

Layout find_linked_optimal(const ConnectivityFunction& f, const SearchOptions& options) {
  const auto pw = path_width(f, options);
  const std::size_t n = f.size();
  if (n <= 1) return pw.layout;
  LinkedSearch s{f, n, pw.width, {}, std::nullopt};
  s.dfs(0);
  if (!s.found) throw InvariantViolation("no linked layout of optimal width exists");
  return *s.found;
}

namespace {

std::optional<RepeatedCuts> repeated_in(const CutProfile& a, std::size_t lo, std::size_t hi,
                                        std::size_t ell) {
  const int base = a[lo];
  std::vector<std::size_t> level;
  for (std::size_t i = lo; i <= hi; ++i) {
    if (a[i] == base) level.push_back(i);
  }
  if (level.size() >= ell) {
    level.resize(ell);
    return RepeatedCuts{std::move(level), base};
  }
  // Maximal stretches strictly above the base level, longest first.
  struct Stretch {
    std::size_t p, q;
  };
  std::vector<Stretch> stretches;
  for (std::size_t i = lo; i <= hi;) {
    if (a[i] == base) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 <= hi && a[j + 1] > base) ++j;
    stretches.push_back({i, j});
    i = j + 1;
  }
  std::stable_sort(stretches.begin(), stretches.end(),
                   [](const Stretch& x, const Stretch& y) { return x.q - x.p > y.q - y.p; });
  for (const auto& s : stretches) {
    if (auto r = repeated_in(a, s.p, s.q, ell)) return r;
  }
  return std::nullopt;
}

}  // namespace

std::optional<RepeatedCuts> find_repeated_cuts(const CutProfile& a, std::size_t ell) {
  if (a.empty()) throw InputError("empty cut profile");
  if (ell == 0) throw InputError("ell must be positive");
  const std::size_t n = a.size() - 1;
  if (a[0] != a[n]) throw InputError("cut profile must start and end at the same value");
  for (std::size_t i = 0; i <= n; ++i) {
    if (a[i] < a[0]) throw InputError("cut profile dips below its endpoints");
    if (i < n && std::abs(a[i] - a[i + 1]) > 1) throw InputError("cut profile has a step larger than 1");
  }
  return repeated_in(a, 0, n, ell);
}

bool is_repeated_cuts_witness(const CutProfile& a, std::size_t ell, const RepeatedCuts& w) {
  if (w.indices.size() != ell || ell == 0) return false;
  for (std::size_t k = 0; k < ell; ++k) {
    if (w.indices[k] >= a.size() || a[w.indices[k]] != w.value) return false;
    if (k > 0 && w.indices[k] <= w.indices[k - 1]) return false;
  }
  for (std::size_t i = w.indices.front(); i <= w.indices.back(); ++i) {
    if (a[i] < w.value) return false;
  }
  return true;
}

bool meets_repeated_cuts_threshold(std::size_t n, std::size_t ell, int height) {
  using boost::multiprecision::cpp_int;
  if (ell < 4) throw InputError("the repeated-cuts threshold needs ell >= 4");
  if (height < 0) throw InputError("negative profile height");
  // Multiply through by (ell - 3) > 0.
  const cpp_int l = ell;
  cpp_int power = 1;
  for (int i = 0; i < height; ++i) power *= (l - 2);
  const cpp_int rhs = ((l - 1) * (l - 3) + 2 * (l - 2)) * power - 2 * (l - 2);
  return cpp_int(n) * (l - 3) >= rhs;
}

bool check_unit_step(const ConnectivityFunction& f) {
  const std::size_t n = f.size();
  const Mask count = Mask{1} << n;
  for (Mask x = 0; x < count; ++x) {
    for (std::size_t e = 0; e < n; ++e) {
      if (!(x & bit(e))) continue;
      if (std::abs(f(x) - f(x & ~bit(e))) > 1) return false;
    }
  }
  return true;
}

}  // namespace linwidth
