// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <json.hpp>
#include <string>
#include <utility>
#include <vector>

#include "linwidth/connfn.hpp"
#include "linwidth/fullset.hpp"
#include "linwidth/linking.hpp"
#include "linwidth/matroid.hpp"

namespace linwidth {

/// Simple graph on vertices 0..n-1 (printed as 1..n), adjacency rows as
/// bitmasks.
class Graph {
 public:
  static constexpr std::size_t kMaxVertices = 24;

  Graph() = default;
  explicit Graph(std::size_t n);
  static Graph from_edges(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges);
  /// 0/1 rows; must be symmetric with zero diagonal.
  static Graph from_adjacency(const std::vector<std::vector<int>>& adj);

  std::size_t size() const { return rows_.size(); }
  Mask vertices() const { return full_mask(size()); }
  Mask neighbours(std::size_t v) const { return rows_[v]; }
  bool adjacent(std::size_t u, std::size_t v) const { return (rows_[u] >> v) & 1; }
  std::size_t degree(std::size_t v) const { return static_cast<std::size_t>(popcount(rows_[v])); }
  std::size_t edge_count() const;
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

  void set_edge(std::size_t u, std::size_t v, bool present);
  void flip(std::size_t u, std::size_t v) { set_edge(u, v, !adjacent(u, v)); }

  /// Induced subgraph on `keep`, vertices renumbered in increasing order.
  Graph induced(Mask keep) const;
  /// Vertex i of this graph becomes vertex perm[i].
  Graph relabel(const std::vector<std::size_t>& perm) const;
  /// Labels "1".."n".
  std::vector<std::string> labels() const;

  bool operator==(const Graph&) const = default;
  std::strong_ordering operator<=>(const Graph&) const = default;

 private:
  std::vector<Mask> rows_;
};

/// GF(2) rank of the X x (V - X) adjacency block.
int cut_rank(const Graph& g, Mask x);
ConnectivityFunction cut_rank_function(const Graph& g);

/// G ∧ uv: flip the three cross pairs among N(u)∩N(v), N(u)-N(v), N(v)-N(u)
/// (u and v excluded), then swap the labels of u and v.
Graph pivot(const Graph& g, std::size_t u, std::size_t v);

struct OrbitBudget {
  std::size_t max_vertices = 8;
  std::size_t max_members = 200000;
};

struct PivotOrbit {
  /// Distinct labeled graphs in BFS order; members[0] is the start.
  std::vector<Graph> members;
  /// parent[i] and the pivot edge taking members[parent[i]] to members[i].
  std::vector<std::size_t> parent;
  std::vector<std::pair<std::size_t, std::size_t>> via;

  /// Pivot edges leading from members[0] to members[i].
  std::vector<std::pair<std::size_t, std::size_t>> path_to(std::size_t i) const;
};

PivotOrbit pivot_orbit(const Graph& g, const OrbitBudget& budget = {});

/// Relabeling that minimises the upper-triangle adjacency string among
/// orderings compatible with colour refinement. Isomorphic graphs get equal
/// results. n <= 10.
Graph canonical_form(const Graph& g);
bool isomorphic(const Graph& a, const Graph& b);
/// Some induced subgraph of g is isomorphic to h.
bool has_induced(const Graph& g, const Graph& h);
/// h is isomorphic to an induced subgraph of a pivot of g; `proper`
/// additionally requires fewer vertices.
bool is_pivot_minor(const Graph& h, const Graph& g, bool proper = false, const OrbitBudget& budget = {});

PathWidthResult linear_rank_width(const Graph& g, const SearchOptions& options = {});

/// {<e_i, v_i>} over GF(2)^n with v_i the sum of e_j over neighbours j.
SubspaceArrangement arrangement_of(const Graph& g);
/// Columns of (I_n | A(G)), labelled I1..In, A1..An.
Configuration graph_matroid(const Graph& g);
/// I_X ∪ A_X as an element set of graph_matroid(g).
Mask matroid_side(const Graph& g, Mask x);

struct OumWitness {
  int k = 0;
  /// Index into the pivot orbit of g, and the pivots reaching it.
  std::size_t orbit_index = 0;
  std::vector<std::pair<std::size_t, std::size_t>> pivots;
  /// Induced subgraph of the pivoted graph on s ∪ t (renumbered), and s in
  /// its numbering.
  Graph h;
  Mask s_in_h = 0;
};

/// First orbit member (BFS order) whose restriction to s ∪ t has
/// rho_H(s) equal to the minimum cut-rank separating s from t.
OumWitness oum_linking_minor(const Graph& g, Mask s, Mask t, const OrbitBudget& budget = {});

/// Hypotheses: rho_{G[s ∪ t]}(s) equals the minimum k, s ⊆ z, z' ⊆ V - t with
/// rho(z) = rho(z') = k. Then checks (i)-(iv) in the arrangement of g with
/// C = V - (s ∪ t) and the spans of I_C.
LinkingChecks strong_linking_graph_check(const Graph& g, Mask s, Mask t, Mask z, Mask zp,
                                         const LinkingScope& scope = {8, 4096, 1});

Graph parse_graph6(const std::string& text);
std::string to_graph6(const Graph& g);
/// `graph n` followed by lines `u v1 v2 ...` (1-based, u adjacent to each v).
/// A single token is read as graph6.
Graph parse_graph(const std::string& text);
std::string format_graph(const Graph& g);

nlohmann::json to_json(const Graph& g);

}  // namespace linwidth
