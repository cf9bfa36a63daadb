// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace linwidth {

/// Subset of a ground set of at most 24 indexed elements.
using Mask = std::uint32_t;

/// A linear layout: position -> ground-set index.
using Layout = std::vector<std::size_t>;

/// a_0, ..., a_n with a_i = f(first i elements of a layout).
using CutProfile = std::vector<int>;

inline Mask bit(std::size_t i) { return Mask{1} << i; }
inline Mask full_mask(std::size_t n) { return n == 0 ? 0 : (n >= 32 ? ~Mask{0} : (Mask{1} << n) - 1); }
int popcount(Mask m);

/// Set function on an indexed ground set, tabulated over all 2^n subsets at
/// construction. Immutable afterwards.
class ConnectivityFunction {
 public:
  static constexpr std::size_t kMaxGround = 24;
  using Evaluator = std::function<int(Mask)>;

  ConnectivityFunction() = default;
  ConnectivityFunction(std::vector<std::string> labels, const Evaluator& f);
  static ConnectivityFunction from_table(std::vector<std::string> labels, std::vector<int> table);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  Mask ground() const { return full_mask(size()); }
  int operator()(Mask x) const { return table_[x]; }
  const std::vector<int>& table() const { return table_; }

  bool is_normalized() const { return table_.empty() || table_[0] == 0; }
  bool is_symmetric() const;
  /// Exhaustive over all pairs; intended for |E| <= 10.
  bool is_submodular() const;

 private:
  std::vector<std::string> labels_;
  std::vector<int> table_;
};

struct SearchOptions {
  enum class Strategy { Exhaustive, SubsetDp };
  /// Largest ground set the exhaustive permutation search accepts.
  std::size_t budget = 9;
  Strategy strategy = Strategy::Exhaustive;
  unsigned workers = 1;
};

struct PathWidthResult {
  int width = 0;
  Layout layout;
};

/// Throws InputError unless `layout` is a permutation of 0..n-1.
void validate_layout(const Layout& layout, std::size_t n);

/// max over proper non-empty prefixes; 0 when |E| <= 1.
int width(const ConnectivityFunction& f, const Layout& layout);
CutProfile cut_profile(const ConnectivityFunction& f, const Layout& layout);

/// Minimum width with the lexicographically least optimal layout. The
/// exhaustive strategy throws BudgetExceeded above `options.budget`.
PathWidthResult path_width(const ConnectivityFunction& f, const SearchOptions& options = {});

/// For every window 0 <= i < j <= n, the minimum of f over sets squeezed
/// between the i-th and j-th prefix is attained by some prefix in between.
bool is_linked(const ConnectivityFunction& f, const Layout& layout);

/// Lexicographically least layout that is both optimal and linked.
/// Throws InvariantViolation if none exists (which would contradict the
/// existence theorem for linked optimal layouts).
Layout find_linked_optimal(const ConnectivityFunction& f, const SearchOptions& options = {});

struct RepeatedCuts {
  std::vector<std::size_t> indices;
  int value = 0;
};

/// Finds indices i_1 < ... < i_ell with a equal to w at each of them and
/// a >= w in between. Requires a_i >= a_0 = a_n and unit steps; otherwise
/// throws InputError. Always succeeds when the profile is long enough
/// (see meets_repeated_cuts_threshold) and reports every witness that exists.
std::optional<RepeatedCuts> find_repeated_cuts(const CutProfile& profile, std::size_t ell);

/// Definitional check of a candidate witness.
bool is_repeated_cuts_witness(const CutProfile& profile, std::size_t ell, const RepeatedCuts& w);

/// n >= (ell-1 + 2(ell-2)/(ell-3)) (ell-2)^height - 2(ell-2)/(ell-3), exactly.
/// Requires ell >= 4.
bool meets_repeated_cuts_threshold(std::size_t n, std::size_t ell, int height);

/// |f(X) - f(X - e)| <= 1 for every X and e in X.
bool check_unit_step(const ConnectivityFunction& f);

}  // namespace linwidth
