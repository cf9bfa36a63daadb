// SPDX-License-Identifier: Apache-2.0
#include "linwidth/fullset.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "compact_rules.hpp"
#include "linwidth/errors.hpp"

namespace linwidth {

SubspaceArrangement::SubspaceArrangement(FieldPtr field, std::size_t ambient, std::vector<std::string> labels,
                                         std::vector<Subspace> members)
    : field_(std::move(field)), ambient_(ambient), labels_(std::move(labels)), members_(std::move(members)) {
  if (labels_.size() != members_.size()) throw DimensionMismatch("one label per subspace required");
  if (labels_.size() > ConnectivityFunction::kMaxGround) throw BudgetExceeded("arrangement too large");
  std::set<std::string> seen;
  for (const auto& l : labels_) {
    if (!seen.insert(l).second) throw InputError("duplicate label '" + l + "'");
  }
  for (const auto& s : members_) {
    if (s.ambient() != ambient_ || !same_field(s.field(), field_)) {
      throw DimensionMismatch("arrangement members must share field and ambient space");
    }
  }
}

SubspaceArrangement SubspaceArrangement::from_configuration(const Configuration& a) {
  std::vector<Subspace> members;
  for (const auto& v : a.vectors()) members.push_back(Subspace::span(a.field(), a.ambient(), {v}));
  return SubspaceArrangement(a.field(), a.ambient(), a.labels(), std::move(members));
}

Subspace SubspaceArrangement::span(Mask m) const {
  Subspace s = Subspace::zero(field_, ambient_);
  for (std::size_t i = 0; i < size(); ++i) {
    if (m & bit(i)) s = sum(s, members_[i]);
  }
  return s;
}

std::vector<Subspace> SubspaceArrangement::span_table() const {
  std::vector<Subspace> t(std::size_t{1} << size());
  t[0] = Subspace::zero(field_, ambient_);
  for (Mask m = 1; m < t.size(); ++m) {
    const std::size_t top = 31 - static_cast<std::size_t>(__builtin_clz(m));
    t[m] = sum(t[m & ~bit(top)], members_[top]);
  }
  return t;
}

SubspaceArrangement SubspaceArrangement::restrict(Mask keep) const {
  std::vector<std::string> labels;
  std::vector<Subspace> members;
  for (std::size_t i = 0; i < size(); ++i) {
    if (keep & bit(i)) labels.push_back(labels_[i]), members.push_back(members_[i]);
  }
  return SubspaceArrangement(field_, ambient_, std::move(labels), std::move(members));
}

SubspaceArrangement SubspaceArrangement::map(const LinearMap& phi) const {
  if (phi.in_dim() != ambient_) throw DimensionMismatch("map domain differs from ambient dimension");
  std::vector<Subspace> members;
  for (const auto& s : members_) members.push_back(phi.image(s));
  return SubspaceArrangement(field_, phi.out_dim(), labels_, std::move(members));
}

SubspaceArrangement SubspaceArrangement::unite(const SubspaceArrangement& other) const {
  if (other.ambient_ != ambient_) throw DimensionMismatch("arrangements live in different spaces");
  auto labels = labels_;
  auto members = members_;
  labels.insert(labels.end(), other.labels_.begin(), other.labels_.end());
  members.insert(members.end(), other.members_.begin(), other.members_.end());
  return SubspaceArrangement(field_, ambient_, std::move(labels), std::move(members));
}

ConnectivityFunction connectivity(const SubspaceArrangement& v) {
  const auto spans = v.span_table();
  const Mask g = v.ground();
  std::vector<int> table(spans.size());
  for (Mask x = 0; x < spans.size(); ++x) {
    table[x] = static_cast<int>(intersect(spans[x], spans[g & ~x]).dim());
  }
  return ConnectivityFunction::from_table(v.labels(), std::move(table));
}

Subspace boundary(const SubspaceArrangement& v, Mask x) {
  if (x & ~v.ground()) throw InputError("index set outside the arrangement");
  return intersect(v.span(x), v.span(v.ground() & ~x));
}

namespace {

void check_b(const SubspaceArrangement& v, const Subspace& b) {
  if (b.ambient() != v.ambient() || !same_field(b.field(), v.field())) {
    throw DimensionMismatch("B must be a subspace of the arrangement's ambient space");
  }
}

Statistic prefix_statistic(const Subspace& left, const Subspace& right, const Subspace& b) {
  Statistic s{intersect(left, b), intersect(right, b), 0};
  s.lambda = static_cast<int>(intersect(left, right).dim()) - static_cast<int>(intersect(s.L, s.R).dim());
  return s;
}

/// Statistics of every prefix set, interned so trajectories become integer
/// triples (L id, R id, lambda).
struct PrefixTable {
  std::vector<Subspace> subspaces;
  std::vector<std::array<int, 3>> code;  // by mask

  PrefixTable(const SubspaceArrangement& v, const Subspace& b) {
    const auto spans = v.span_table();
    const Mask g = v.ground();
    std::map<Subspace, int> ids;
    auto intern = [&](const Subspace& s) {
      auto [it, fresh] = ids.emplace(s, static_cast<int>(subspaces.size()));
      if (fresh) subspaces.push_back(s);
      return it->second;
    };
    code.resize(spans.size());
    for (Mask m = 0; m < spans.size(); ++m) {
      const auto s = prefix_statistic(spans[m], spans[g & ~m], b);
      code[m] = {intern(s.L), intern(s.R), s.lambda};
    }
  }

  Trajectory decode(const std::vector<std::array<int, 3>>& c) const {
    Trajectory t;
    t.reserve(c.size());
    for (const auto& x : c) {
      t.push_back({subspaces[static_cast<std::size_t>(x[0])], subspaces[static_cast<std::size_t>(x[1])], x[2]});
    }
    return t;
  }
};

using Code = std::vector<std::array<int, 3>>;

Code compact_code(const Code& c) {
  const auto r = detail::rules([&c](std::size_t i, std::size_t j) { return c[i] == c[j]; },
                               [&c](std::size_t i, std::size_t j) { return c[i][0] == c[j][0] && c[i][1] == c[j][1]; },
                               [&c](std::size_t i) { return c[i][2]; });
  Code out;
  for (auto i : r.compact(c.size())) out.push_back(c[i]);
  return out;
}

/// Visits the mask chain of every layout (n! of them).
template <class Visit>
void for_each_layout_chain(std::size_t n, Visit&& visit) {
  std::vector<Mask> chain{0};
  std::function<void(Mask)> rec = [&](Mask used) {
    if (chain.size() == n + 1) {
      visit(chain);
      return;
    }
    for (std::size_t e = 0; e < n; ++e) {
      if (used & bit(e)) continue;
      chain.push_back(used | bit(e));
      rec(used | bit(e));
      chain.pop_back();
    }
  };
  rec(0);
}

std::set<Code> realizable_codes(const SubspaceArrangement& v, const PrefixTable& table, const FullSetOptions& options) {
  const std::size_t n = v.size();
  if (n > options.layout_budget) {
    throw BudgetExceeded("full-set computation enumerates layouts of at most " +
                         std::to_string(options.layout_budget) + " members");
  }
  std::set<Code> out;
  for_each_layout_chain(n, [&](const std::vector<Mask>& chain) {
    Code c;
    c.reserve(chain.size());
    for (Mask m : chain) c.push_back(table.code[m]);
    out.insert(compact_code(c));
  });
  return out;
}

}  // namespace

Trajectory canonical_trajectory(const SubspaceArrangement& v, const Layout& layout, const Subspace& b) {
  check_b(v, b);
  validate_layout(layout, v.size());
  Trajectory t;
  Mask prefix = 0;
  const Mask g = v.ground();
  for (std::size_t i = 0; i <= layout.size(); ++i) {
    if (i > 0) prefix |= bit(layout[i - 1]);
    t.push_back(prefix_statistic(v.span(prefix), v.span(g & ~prefix), b));
  }
  return t;
}

std::vector<Trajectory> realizable_compact(const SubspaceArrangement& v, const Subspace& b,
                                           const FullSetOptions& options) {
  check_b(v, b);
  const PrefixTable table(v, b);
  std::vector<Trajectory> out;
  for (const auto& c : realizable_codes(v, table, options)) out.push_back(table.decode(c));
  std::sort(out.begin(), out.end());
  return out;
}

FullSet full_set(const SubspaceArrangement& v, const Subspace& b, int k, const FullSetOptions& options) {
  check_b(v, b);
  if (k < 0) throw InputError("negative width bound");
  if (options.definitional) return full_set_definitional(v, b, k, options.enumeration);
  const PrefixTable table(v, b);
  const auto& seqs = compact_lambda_sequences(k);
  std::map<std::vector<int>, std::vector<std::size_t>> above;  // block lambdas -> dominating sequences
  auto dominating = [&](const std::vector<int>& s) -> const std::vector<std::size_t>& {
    auto it = above.find(s);
    if (it != above.end()) return it->second;
    std::vector<std::size_t> ids;
    for (std::size_t i = 0; i < seqs.size(); ++i) {
      if (sequence_tle(s, seqs[i])) ids.push_back(i);
    }
    return above.emplace(s, std::move(ids)).first->second;
  };

  std::set<Code> members;
  for (const auto& delta : realizable_codes(v, table, options)) {
    if (std::any_of(delta.begin(), delta.end(), [k](const auto& x) { return x[2] > k; })) continue;
    // Split into maximal runs of equal (L, R).
    std::vector<std::pair<std::array<int, 2>, std::vector<int>>> blocks;
    for (const auto& x : delta) {
      if (blocks.empty() || blocks.back().first != std::array<int, 2>{x[0], x[1]}) {
        blocks.push_back({{x[0], x[1]}, {}});
      }
      blocks.back().second.push_back(x[2]);
    }
    std::vector<const std::vector<std::size_t>*> options_per_block;
    for (const auto& blk : blocks) options_per_block.push_back(&dominating(blk.second));
    std::vector<std::size_t> choice(blocks.size(), 0);
    while (true) {
      Code gamma;
      for (std::size_t i = 0; i < blocks.size(); ++i) {
        for (int lam : seqs[(*options_per_block[i])[choice[i]]]) gamma.push_back({blocks[i].first[0], blocks[i].first[1], lam});
      }
      members.insert(std::move(gamma));
      if (members.size() > options.max_members) throw BudgetExceeded("full set exceeds the member budget");
      std::size_t i = 0;
      for (; i < blocks.size(); ++i) {
        if (++choice[i] < options_per_block[i]->size()) break;
        choice[i] = 0;
      }
      if (i == blocks.size()) break;
    }
  }
  FullSet fs{b, k, {}};
  fs.members.reserve(members.size());
  for (const auto& c : members) fs.members.push_back(table.decode(c));
  std::sort(fs.members.begin(), fs.members.end());
  return fs;
}

FullSet full_set(const Configuration& a, const Subspace& b, int k, const FullSetOptions& options) {
  return full_set(SubspaceArrangement::from_configuration(a), b, k, options);
}

FullSet full_set_definitional(const SubspaceArrangement& v, const Subspace& b, int k, const EnumerationBudget& budget) {
  check_b(v, b);
  std::set<Trajectory> canonical;
  Layout layout(v.size());
  std::iota(layout.begin(), layout.end(), 0);
  do {
    canonical.insert(canonical_trajectory(v, layout, b));
  } while (std::next_permutation(layout.begin(), layout.end()));
  FullSet fs{b, k, {}};
  for_each_compact(
      b, k,
      [&](const Trajectory& gamma) {
        for (const auto& delta : canonical) {
          if (traj_tle(delta, gamma)) {
            fs.members.push_back(gamma);
            return;
          }
        }
      },
      budget);
  std::sort(fs.members.begin(), fs.members.end());
  return fs;
}

FullSet map_full_set(const LinearMap& phi, const FullSet& fs) {
  FullSet out{phi.image(fs.b), fs.k, {}};
  if (out.b.dim() != fs.b.dim()) throw InputError("map is not injective on B");
  out.members.reserve(fs.members.size());
  for (const auto& t : fs.members) out.members.push_back(map_trajectory(phi, fs.b, t));
  std::sort(out.members.begin(), out.members.end());
  return out;
}

LemmaCheck check_shrink(const SubspaceArrangement& v, const SubspaceArrangement& v2, const Subspace& b, int k,
                        const FullSetOptions& options) {
  LemmaCheck r;
  if (v.ambient() != v2.ambient() || b.ambient() != v.ambient()) {
    r.detail = "arrangements or B live in different spaces";
    return r;
  }
  if (!sum(v.span(v.ground()), v2.span(v2.ground())).contains(b)) {
    r.detail = "B is not inside the span of both arrangements";
    return r;
  }
  r.applicable = true;
  r.premise = full_set(v, b, k, options) == full_set(v2, b, k, options);
  if (!r.premise) return r;
  const auto zero = Subspace::zero(v.field(), v.ambient());
  r.holds = full_set(v, zero, k, options) == full_set(v2, zero, k, options);
  if (!r.holds) r.detail = "FS(., {0}) differ although FS(., B) agree";
  return r;
}

LemmaCheck check_merge(const SubspaceArrangement& v1, const SubspaceArrangement& v1p, const SubspaceArrangement& v2,
                       const SubspaceArrangement& v2p, const Subspace& b, int k, const FullSetOptions& options) {
  LemmaCheck r;
  auto separated = [&](const SubspaceArrangement& x, const SubspaceArrangement& y) {
    return intersect(sum(x.span(x.ground()), b), sum(y.span(y.ground()), b)) == b;
  };
  const Subspace all = sum(sum(v1.span(v1.ground()), v2.span(v2.ground())), sum(v1p.span(v1p.ground()), v2p.span(v2p.ground())));
  if (!all.contains(b)) {
    r.detail = "B is not inside the span of the four arrangements";
    return r;
  }
  if (!separated(v1, v2) || !separated(v1p, v2p)) {
    r.detail = "(<V1> + B) ∩ (<V2> + B) differs from B";
    return r;
  }
  r.applicable = true;
  r.premise = full_set(v1, b, k, options) == full_set(v1p, b, k, options) &&
              full_set(v2, b, k, options) == full_set(v2p, b, k, options);
  if (!r.premise) return r;
  r.holds = full_set(v1.unite(v2), b, k, options) == full_set(v1p.unite(v2p), b, k, options);
  if (!r.holds) r.detail = "full sets of the unions differ";
  return r;
}

LemmaCheck check_key(const SubspaceArrangement& v, Mask part, const SubspaceArrangement& vp, Mask part_p,
                     const LinearMap& phi, int k, const FullSetOptions& options) {
  LemmaCheck r;
  if (phi.in_dim() != v.ambient() || phi.out_dim() != vp.ambient()) {
    r.detail = "map does not connect the two ambient spaces";
    return r;
  }
  const Subspace b = boundary(v, part);
  const Subspace bp = boundary(vp, part_p);
  if (!phi.injective_on(b) || !(phi.image(b) == bp)) {
    r.detail = "map is not a bijection between the boundaries";
    return r;
  }
  r.applicable = true;
  const auto v1 = v.restrict(part), v2 = v.restrict(v.ground() & ~part);
  const auto w1 = vp.restrict(part_p), w2 = vp.restrict(vp.ground() & ~part_p);
  r.premise = map_full_set(phi, full_set(v1, b, k, options)) == full_set(w1, bp, k, options) &&
              map_full_set(phi, full_set(v2, b, k, options)) == full_set(w2, bp, k, options);
  if (!r.premise) return r;
  SearchOptions search;
  search.budget = options.layout_budget;
  const bool left = path_width(connectivity(v), search).width <= k;
  const bool right = path_width(connectivity(vp), search).width <= k;
  r.holds = left == right;
  if (!r.holds) r.detail = "path-width comparison with k differs";
  return r;
}

nlohmann::json to_json(const FullSet& fs) {
  nlohmann::json members = nlohmann::json::array();
  for (const auto& t : fs.members) members.push_back(to_json(t));
  return {{"B", to_json(fs.b)}, {"k", fs.k}, {"members", members}};
}

}  // namespace linwidth
