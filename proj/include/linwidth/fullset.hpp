// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "linwidth/connfn.hpp"
#include "linwidth/matroid.hpp"
#include "linwidth/trajectory.hpp"

namespace linwidth {

/// Labeled family of subspaces of a common GF(q)^n.
class SubspaceArrangement {
 public:
  SubspaceArrangement() = default;
  SubspaceArrangement(FieldPtr field, std::size_t ambient, std::vector<std::string> labels,
                      std::vector<Subspace> members);
  /// One span <v> per labeled vector (zero vectors give the zero subspace).
  static SubspaceArrangement from_configuration(const Configuration& a);

  const FieldPtr& field() const { return field_; }
  std::size_t ambient() const { return ambient_; }
  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const Subspace& member(std::size_t i) const { return members_[i]; }
  const std::vector<Subspace>& members() const { return members_; }
  Mask ground() const { return full_mask(size()); }

  /// Sum of the members indexed by m.
  Subspace span(Mask m) const;
  /// Sums of every sub-family, indexed by mask.
  std::vector<Subspace> span_table() const;

  SubspaceArrangement restrict(Mask keep) const;
  SubspaceArrangement map(const LinearMap& phi) const;
  /// Disjoint union; labels must not collide.
  SubspaceArrangement unite(const SubspaceArrangement& other) const;

 private:
  FieldPtr field_;
  std::size_t ambient_ = 0;
  std::vector<std::string> labels_;
  std::vector<Subspace> members_;
};

/// X -> dim(sum over X) ∩ (sum over E - X).
ConnectivityFunction connectivity(const SubspaceArrangement& v);
/// <X> ∩ <E - X> for the sums of the two sides.
Subspace boundary(const SubspaceArrangement& v, Mask x);

/// L_i = (sum of the first i) ∩ B, R_i = (sum of the rest) ∩ B, lambda_i the
/// cut dimension minus dim(L_i ∩ R_i), for i = 0..n.
Trajectory canonical_trajectory(const SubspaceArrangement& v, const Layout& layout, const Subspace& b);

struct FullSetOptions {
  /// Largest arrangement whose layouts are enumerated.
  std::size_t layout_budget = 9;
  std::size_t max_members = 500000;
  /// Filter U_k(B) literally instead of building blocks; bounded by `enumeration`.
  bool definitional = false;
  EnumerationBudget enumeration{};
};

struct FullSet {
  Subspace b;
  int k = 0;
  /// Sorted, no duplicates.
  std::vector<Trajectory> members;

  bool empty() const { return members.empty(); }
  bool operator==(const FullSet& o) const { return k == o.k && b == o.b && members == o.members; }
};

/// Compactified canonical trajectories of all layouts, sorted and distinct.
std::vector<Trajectory> realizable_compact(const SubspaceArrangement& v, const Subspace& b,
                                           const FullSetOptions& options = {});

/// Compact B-trajectories of width <= k lying above some realizable
/// trajectory. Built block by block from the realizable set: two compact
/// trajectories are comparable only with identical (L, R) block chains, and
/// then exactly when every block's lambda sequence is.
FullSet full_set(const SubspaceArrangement& v, const Subspace& b, int k, const FullSetOptions& options = {});
FullSet full_set(const Configuration& a, const Subspace& b, int k, const FullSetOptions& options = {});

/// Literal evaluation: filter U_k(B) by traj_tle against every canonical
/// trajectory of every layout. Small inputs only.
FullSet full_set_definitional(const SubspaceArrangement& v, const Subspace& b, int k,
                              const EnumerationBudget& budget = {});

/// phi(FS): phi must be injective on fs.b.
FullSet map_full_set(const LinearMap& phi, const FullSet& fs);

/// Outcome of checking one implication on one instance.
struct LemmaCheck {
  bool applicable = false;  ///< structural hypotheses hold
  bool premise = false;     ///< full-set premises hold
  bool holds = true;        ///< conclusion verified (true when vacuous)
  std::string detail;
  bool ok() const { return holds; }
};

/// FS(v, B) = FS(v', B) implies FS(v, {0}) = FS(v', {0}).
LemmaCheck check_shrink(const SubspaceArrangement& v, const SubspaceArrangement& v2, const Subspace& b, int k,
                        const FullSetOptions& options = {});

/// With (<v1> + B) ∩ (<v2> + B) = B and the primed analogue, equal full sets
/// of the parts give equal full sets of the unions.
LemmaCheck check_merge(const SubspaceArrangement& v1, const SubspaceArrangement& v1p, const SubspaceArrangement& v2,
                       const SubspaceArrangement& v2p, const Subspace& b, int k, const FullSetOptions& options = {});

/// Partitions (part, rest) of v and (part', rest') of v'; phi maps the ambient
/// of v to that of v' and must restrict to a bijection between the two
/// boundaries. When both mapped full-set equalities hold, verifies
/// pw(v) <= k iff pw(v') <= k.
LemmaCheck check_key(const SubspaceArrangement& v, Mask part, const SubspaceArrangement& vp, Mask part_p,
                     const LinearMap& phi, int k, const FullSetOptions& options = {});

nlohmann::json to_json(const FullSet& fs);

}  // namespace linwidth
