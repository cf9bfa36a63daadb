// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <json.hpp>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "linwidth/ffla.hpp"

namespace linwidth {

/// (L, R, lambda) with L, R subspaces of a fixed B.
struct Statistic {
  Subspace L;
  Subspace R;
  int lambda = 0;

  bool operator==(const Statistic&) const = default;
  std::strong_ordering operator<=>(const Statistic&) const = default;
};

/// a_0, ..., a_n over a common B; equality and ordering are by the canonical
/// bases of every L and R plus the lambda values.
using Trajectory = std::vector<Statistic>;

/// Chain conditions, L and R inside B, and R(a_0) = L(a_n).
bool validate(const Subspace& b, const Trajectory& t);
int width(const Trajectory& t);

/// Applies the two removal rules until neither applies, always taking the
/// leftmost applicable removal. Endpoints are kept.
Trajectory compactify(const Trajectory& t);
bool is_compact(const Trajectory& t);

bool stat_leq(const Statistic& a, const Statistic& b);
/// Whether extensions of t1 and t2 exist that are pointwise stat_leq;
/// dynamic programming over aligned position pairs.
bool traj_tle(const Trajectory& t1, const Trajectory& t2);

/// Every sequence of integers in [0, k] that no removal rule can shorten,
/// sorted. Each one has length at most 2k + 1.
const std::vector<std::vector<int>>& compact_lambda_sequences(int k);
/// Integer-sequence version of the relation used by traj_tle.
bool sequence_tle(const std::vector<int>& a, const std::vector<int>& b);

/// Every subspace of B, sorted by dimension then canonical basis; a small
/// index used to enumerate subspace chains.
class SubspaceLattice {
 public:
  explicit SubspaceLattice(const Subspace& b);

  const Subspace& top() const { return b_; }
  std::size_t size() const { return members_.size(); }
  const Subspace& operator[](std::size_t i) const { return members_[i]; }
  /// Throws InvariantViolation if s is not a subspace of B.
  std::size_t id_of(const Subspace& s) const;
  bool leq(std::size_t i, std::size_t j) const { return leq_[i * members_.size() + j]; }

 private:
  Subspace b_;
  std::vector<Subspace> members_;
  std::unordered_map<Subspace, std::size_t> ids_;
  std::vector<bool> leq_;
};

struct EnumerationBudget {
  std::size_t max_dim = 2;
  int max_k = 2;
  /// Cap on the number of trajectories enumerate_compact will materialize.
  std::size_t max_members = 200000;
};

/// Visits every compact B-trajectory of width at most k exactly once, in a
/// deterministic order. Returns the number visited.
std::uint64_t for_each_compact(const Subspace& b, int k, const std::function<void(const Trajectory&)>& visit,
                               const EnumerationBudget& budget = {});
/// |U_k(B)| without materializing the members.
std::uint64_t count_compact(const Subspace& b, int k, const EnumerationBudget& budget = {});
/// U_k(B), sorted.
std::vector<Trajectory> enumerate_compact(const Subspace& b, int k, const EnumerationBudget& budget = {});

/// 2^{9 theta + 2} q^{theta (theta - 1)} 2^{2 (2 theta + 1) k}.
boost::multiprecision::cpp_int compact_count_bound(unsigned theta, unsigned k, unsigned q);

/// Longest member of U_k(B) is at most (2 dim B + 1)(2k + 1).
std::size_t compact_length_cap(std::size_t dim_b, int k);

/// phi(t) for phi bijective from B1 onto its image; throws InputError when
/// phi is not injective on B1.
Trajectory map_trajectory(const LinearMap& phi, const Subspace& b1, const Trajectory& t);

nlohmann::json to_json(const Subspace& s);
nlohmann::json to_json(const Trajectory& t);

}  // namespace linwidth
