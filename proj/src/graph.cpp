// SPDX-License-Identifier: Apache-2.0
#include "linwidth/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "linwidth/errors.hpp"
#include "linwidth/text.hpp"

namespace linwidth {

Graph::Graph(std::size_t n) {
  if (n > kMaxVertices) throw BudgetExceeded("graphs are limited to " + std::to_string(kMaxVertices) + " vertices");
  rows_.assign(n, 0);
}

Graph Graph::from_edges(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  Graph g(n);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) throw InputError("edge endpoint out of range");
    if (u == v) throw InputError("loops are not allowed");
    g.set_edge(u, v, true);
  }
  return g;
}

Graph Graph::from_adjacency(const std::vector<std::vector<int>>& adj) {
  Graph g(adj.size());
  for (std::size_t i = 0; i < adj.size(); ++i) {
    if (adj[i].size() != adj.size()) throw DimensionMismatch("adjacency matrix must be square");
    for (std::size_t j = 0; j < adj.size(); ++j) {
      if (adj[i][j] != adj[j][i] || (adj[i][j] != 0 && adj[i][j] != 1)) {
        throw InputError("adjacency matrix must be a symmetric 0/1 matrix");
      }
      if (i == j && adj[i][j]) throw InputError("loops are not allowed");
      if (adj[i][j]) g.rows_[i] |= bit(j);
    }
  }
  return g;
}

std::size_t Graph::edge_count() const {
  std::size_t twice = 0;
  for (Mask r : rows_) twice += static_cast<std::size_t>(popcount(r));
  return twice / 2;
}

std::vector<std::pair<std::size_t, std::size_t>> Graph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t u = 0; u < size(); ++u) {
    for (std::size_t v = u + 1; v < size(); ++v) {
      if (adjacent(u, v)) out.emplace_back(u, v);
    }
  }
  return out;
}

void Graph::set_edge(std::size_t u, std::size_t v, bool present) {
  if (u == v) throw InputError("loops are not allowed");
  if (present) {
    rows_[u] |= bit(v), rows_[v] |= bit(u);
  } else {
    rows_[u] &= ~bit(v), rows_[v] &= ~bit(u);
  }
}

Graph Graph::induced(Mask keep) const {
  std::vector<std::size_t> index(size(), 0);
  std::size_t m = 0;
  for (std::size_t v = 0; v < size(); ++v) {
    if (keep & bit(v)) index[v] = m++;
  }
  Graph h(m);
  for (std::size_t u = 0; u < size(); ++u) {
    if (!(keep & bit(u))) continue;
    for (std::size_t v = 0; v < size(); ++v) {
      if ((keep & bit(v)) && adjacent(u, v)) h.rows_[index[u]] |= bit(index[v]);
    }
  }
  return h;
}

Graph Graph::relabel(const std::vector<std::size_t>& perm) const {
  validate_layout(perm, size());
  Graph h(size());
  for (std::size_t u = 0; u < size(); ++u) {
    for (std::size_t v = 0; v < size(); ++v) {
      if (adjacent(u, v)) h.rows_[perm[u]] |= bit(perm[v]);
    }
  }
  return h;
}

std::vector<std::string> Graph::labels() const {
  std::vector<std::string> out;
  for (std::size_t v = 0; v < size(); ++v) out.push_back(std::to_string(v + 1));
  return out;
}

int cut_rank(const Graph& g, Mask x) {
  const Mask other = g.vertices() & ~x;
  std::vector<Mask> rows;
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (x & bit(v)) rows.push_back(g.neighbours(v) & other);
  }
  int r = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] == 0) continue;
    ++r;
    const Mask lead = rows[i] & (~rows[i] + 1);
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      if (rows[j] & lead) rows[j] ^= rows[i];
    }
  }
  return r;
}

ConnectivityFunction cut_rank_function(const Graph& g) {
  return ConnectivityFunction(g.labels(), [&g](Mask x) { return cut_rank(g, x); });
}

Graph pivot(const Graph& g, std::size_t u, std::size_t v) {
  if (u >= g.size() || v >= g.size() || !g.adjacent(u, v)) throw InputError("pivot needs an edge uv");
  const Mask ends = bit(u) | bit(v);
  const Mask nu = g.neighbours(u) & ~ends, nv = g.neighbours(v) & ~ends;
  const Mask both = nu & nv, only_u = nu & ~nv, only_v = nv & ~nu;
  Graph h = g;
  auto flip_all = [&h](Mask p, Mask q) {
    for (Mask a = p; a; a &= a - 1) {
      for (Mask b = q; b; b &= b - 1) {
        h.flip(static_cast<std::size_t>(__builtin_ctz(a)), static_cast<std::size_t>(__builtin_ctz(b)));
      }
    }
  };
  flip_all(both, only_u);
  flip_all(both, only_v);
  flip_all(only_u, only_v);
  std::vector<std::size_t> swap(g.size());
  std::iota(swap.begin(), swap.end(), 0);
  std::swap(swap[u], swap[v]);
  return h.relabel(swap);
}

std::vector<std::pair<std::size_t, std::size_t>> PivotOrbit::path_to(std::size_t i) const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (; i != 0; i = parent[i]) out.push_back(via[i]);
  std::reverse(out.begin(), out.end());
  return out;
}

PivotOrbit pivot_orbit(const Graph& g, const OrbitBudget& budget) {
  if (g.size() > budget.max_vertices) {
    throw BudgetExceeded("pivot orbits are limited to " + std::to_string(budget.max_vertices) + " vertices");
  }
  PivotOrbit orbit;
  std::set<Graph> seen{g};
  orbit.members.push_back(g);
  orbit.parent.push_back(0);
  orbit.via.emplace_back(0, 0);
  for (std::size_t head = 0; head < orbit.members.size(); ++head) {
    for (const auto& [u, v] : orbit.members[head].edges()) {
      Graph next = pivot(orbit.members[head], u, v);
      if (!seen.insert(next).second) continue;
      if (orbit.members.size() >= budget.max_members) throw BudgetExceeded("pivot orbit exceeds the member budget");
      orbit.members.push_back(std::move(next));
      orbit.parent.push_back(head);
      orbit.via.emplace_back(u, v);
    }
  }
  return orbit;
}

namespace {

/// Colour refinement with colours named by the sorted order of signatures.
std::vector<int> refine_colours(const Graph& g) {
  const std::size_t n = g.size();
  std::vector<int> colour(n, 0);
  std::size_t classes = 1;
  while (true) {
    std::vector<std::pair<int, std::vector<int>>> sig(n);
    for (std::size_t v = 0; v < n; ++v) {
      sig[v].first = colour[v];
      for (Mask m = g.neighbours(v); m; m &= m - 1) sig[v].second.push_back(colour[static_cast<std::size_t>(__builtin_ctz(m))]);
      std::sort(sig[v].second.begin(), sig[v].second.end());
    }
    std::vector<std::pair<int, std::vector<int>>> distinct = sig;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (std::size_t v = 0; v < n; ++v) {
      colour[v] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), sig[v]) - distinct.begin());
    }
    if (distinct.size() == classes) return colour;
    classes = distinct.size();
  }
}

struct CanonicalSearch {
  const Graph& g;
  std::vector<int> slot_colour;  // colour required at each position
  std::vector<int> colour;
  std::vector<std::size_t> order, best_order;
  std::uint64_t best = ~std::uint64_t{0};
  bool have_best = false;

  /// bits holds the columns 1..pos-1 of the upper triangle, first bit most
  /// significant; nbits of them so far.
  void rec(std::size_t pos, Mask used, std::uint64_t bits, std::size_t nbits, bool below) {
    const std::size_t n = g.size();
    if (pos == n) {
      if (!have_best || bits < best) best = bits, best_order = order, have_best = true;
      return;
    }
    const std::size_t total = n * (n - 1) / 2;
    for (std::size_t v = 0; v < n; ++v) {
      if ((used & bit(v)) || colour[v] != slot_colour[pos]) continue;
      std::uint64_t b = bits;
      for (std::size_t i = 0; i < pos; ++i) b = (b << 1) | (g.adjacent(order[i], v) ? 1 : 0);
      const std::size_t nb = nbits + pos;
      bool now_below = below;
      if (have_best && !below && nb > 0) {
        const std::uint64_t prefix = best >> (total - nb);
        if (b > prefix) continue;
        now_below = b < prefix;
      }
      order.push_back(v);
      rec(pos + 1, used | bit(v), b, nb, now_below);
      order.pop_back();
    }
  }
};

}  // namespace

Graph canonical_form(const Graph& g) {
  if (g.size() > 10) throw BudgetExceeded("canonical forms are limited to 10 vertices");
  CanonicalSearch cs{g, {}, refine_colours(g), {}, {}, 0, false};
  cs.slot_colour = cs.colour;
  std::sort(cs.slot_colour.begin(), cs.slot_colour.end());
  cs.rec(0, 0, 0, 0, false);
  std::vector<std::size_t> perm(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) perm[cs.best_order[i]] = i;
  return g.relabel(perm);
}

bool isomorphic(const Graph& a, const Graph& b) {
  if (a.size() != b.size() || a.edge_count() != b.edge_count()) return false;
  return canonical_form(a) == canonical_form(b);
}

bool has_induced(const Graph& g, const Graph& h) {
  const std::size_t m = h.size();
  if (m > g.size()) return false;
  const Graph target = canonical_form(h);
  const std::size_t edges = h.edge_count();
  const Mask all = g.vertices();
  for (Mask sub = 0;; ++sub) {
    if (static_cast<std::size_t>(popcount(sub)) == m) {
      const Graph piece = g.induced(sub);
      if (piece.edge_count() == edges && canonical_form(piece) == target) return true;
    }
    if (sub == all) break;
  }
  return false;
}

bool is_pivot_minor(const Graph& h, const Graph& g, bool proper, const OrbitBudget& budget) {
  if (h.size() > g.size() || (proper && h.size() == g.size())) return false;
  std::set<Graph> shapes;
  for (const auto& member : pivot_orbit(g, budget).members) shapes.insert(canonical_form(member));
  return std::any_of(shapes.begin(), shapes.end(), [&h](const Graph& s) { return has_induced(s, h); });
}

PathWidthResult linear_rank_width(const Graph& g, const SearchOptions& options) {
  return path_width(cut_rank_function(g), options);
}

SubspaceArrangement arrangement_of(const Graph& g) {
  const auto& f = Field::gf2();
  const std::size_t n = g.size();
  std::vector<Subspace> members;
  for (std::size_t i = 0; i < n; ++i) {
    Vector nb(n, 0);
    for (std::size_t j = 0; j < n; ++j) nb[j] = g.adjacent(i, j) ? 1 : 0;
    members.push_back(Subspace::span(f, n, {unit_vector(f, n, i), nb}));
  }
  return SubspaceArrangement(f, n, g.labels(), std::move(members));
}

Configuration graph_matroid(const Graph& g) {
  const auto& f = Field::gf2();
  const std::size_t n = g.size();
  std::vector<std::string> labels;
  std::vector<Vector> vectors;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("I" + std::to_string(i + 1)), vectors.push_back(unit_vector(f, n, i));
  for (std::size_t i = 0; i < n; ++i) {
    Vector nb(n, 0);
    for (std::size_t j = 0; j < n; ++j) nb[j] = g.adjacent(i, j) ? 1 : 0;
    labels.push_back("A" + std::to_string(i + 1));
    vectors.push_back(std::move(nb));
  }
  return Configuration(f, n, std::move(labels), std::move(vectors));
}

Mask matroid_side(const Graph& g, Mask x) { return x | (x << g.size()); }

namespace {

/// Positions of `sub` inside `keep` after renumbering.
Mask compress(Mask sub, Mask keep) {
  Mask out = 0;
  std::size_t idx = 0;
  for (Mask k = keep; k; k &= k - 1, ++idx) {
    if (sub & (k & (~k + 1))) out |= bit(idx);
  }
  return out;
}

Subspace unit_span(std::size_t n, Mask m) {
  const auto& f = Field::gf2();
  std::vector<Vector> gens;
  for (std::size_t i = 0; i < n; ++i) {
    if (m & bit(i)) gens.push_back(unit_vector(f, n, i));
  }
  return Subspace::span(f, n, gens);
}

void check_vertex_sets(const Graph& g, Mask s, Mask t) {
  if (s & t) throw InputError("S and T must be disjoint");
  if ((s | t) & ~g.vertices()) throw InputError("S or T contains vertices outside the graph");
}

}  // namespace

OumWitness oum_linking_minor(const Graph& g, Mask s, Mask t, const OrbitBudget& budget) {
  check_vertex_sets(g, s, t);
  const int k = min_connectivity(cut_rank_function(g), s, t).k;
  const Mask keep = s | t;
  const Mask s_in_h = compress(s, keep);
  const auto orbit = pivot_orbit(g, budget);
  for (std::size_t i = 0; i < orbit.members.size(); ++i) {
    Graph h = orbit.members[i].induced(keep);
    if (cut_rank(h, s_in_h) == k) return {k, i, orbit.path_to(i), std::move(h), s_in_h};
  }
  throw InvariantViolation("no pivot-minor on S ∪ T attains the minimum cut-rank");
}

LinkingChecks strong_linking_graph_check(const Graph& g, Mask s, Mask t, Mask z, Mask zp, const LinkingScope& scope) {
  LinkingChecks r;
  auto reject = [&r](const std::string& why) {
    r.detail = why;
    return r;
  };
  const Mask all = g.vertices();
  if ((s & t) || ((s | t | z | zp) & ~all)) return reject("S, T must be disjoint vertex sets");
  const auto f = cut_rank_function(g);
  const int k = min_connectivity(f, s, t).k;
  if (cut_rank(g.induced(s | t), compress(s, s | t)) != k) return reject("rho of S in G[S ∪ T] differs from the minimum");
  for (Mask x : {z, zp}) {
    if ((x & s) != s || (x & t)) return reject("Z and Z' must satisfy S ⊆ Z ⊆ V - T");
    if (f(x) != k) return reject("rho(Z) or rho(Z') differs from k");
  }
  const Mask c = all & ~(s | t);
  const std::size_t n = g.size();
  const auto v = arrangement_of(g);
  const LinkingSpans spans{v.span(z),
                           v.span(all & ~z),
                           unit_span(n, c),
                           unit_span(n, c & z),
                           unit_span(n, c & ~z),
                           unit_span(n, c & (z ^ zp)),
                           boundary(v, z),
                           boundary(v, zp)};
  return check_linking_spans(spans, scope);
}

Graph parse_graph6(const std::string& input) {
  std::string s = input;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t pos = 0;
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  s = s.substr(pos);
  const std::string header = ">>graph6<<";
  if (s.rfind(header, 0) == 0) s = s.substr(header.size());
  if (s.empty()) throw InputError("graph6: empty input");
  if (s[0] == ':' || s[0] == '&') throw InputError("graph6: sparse6 and digraph6 are not supported");
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 63 || s[i] > 126) throw InputError("graph6: column " + std::to_string(i + 1) + ": invalid character");
  }
  std::size_t n = 0, at = 0;
  if (s[0] == 126) {
    if (s.size() < 4 || s[1] == 126) throw InputError("graph6: vertex count too large or truncated");
    for (std::size_t i = 1; i <= 3; ++i) n = (n << 6) | static_cast<std::size_t>(s[i] - 63);
    at = 4;
  } else {
    n = static_cast<std::size_t>(s[0] - 63);
    at = 1;
  }
  if (n > Graph::kMaxVertices) throw BudgetExceeded("graph6: " + std::to_string(n) + " vertices exceed the limit");
  const std::size_t nbits = n * (n - (n > 0 ? 1 : 0)) / 2;
  const std::size_t nbytes = (nbits + 5) / 6;
  if (s.size() - at != nbytes) {
    throw InputError("graph6: expected " + std::to_string(nbytes) + " data bytes for " + std::to_string(n) +
                     " vertices, found " + std::to_string(s.size() - at));
  }
  Graph g(n);
  std::size_t k = 0;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i, ++k) {
      const int byte = s[at + k / 6] - 63;
      if ((byte >> (5 - k % 6)) & 1) g.set_edge(i, j, true);
    }
  }
  for (; k < nbytes * 6; ++k) {
    if (((s[at + k / 6] - 63) >> (5 - k % 6)) & 1) throw InputError("graph6: nonzero padding bits");
  }
  return g;
}

std::string to_graph6(const Graph& g) {
  const std::size_t n = g.size();
  std::string out(1, static_cast<char>(63 + n));
  int acc = 0, used = 0;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
      if (++used == 6) out.push_back(static_cast<char>(63 + acc)), acc = 0, used = 0;
    }
  }
  if (used > 0) out.push_back(static_cast<char>(63 + (acc << (6 - used))));
  return out;
}

Graph parse_graph(const std::string& input) {
  text::TokenStream ts(input);
  if (ts.done()) ts.fail_eof("expected 'graph n' or a graph6 string");
  if (ts.peek().value != "graph") {
    const auto tok = ts.next();
    if (!ts.done()) ts.fail(ts.peek(), "unexpected token after graph6 string");
    try {
      return parse_graph6(tok.value);
    } catch (const InputError& e) {
      ts.fail(tok, e.what());
    }
  }
  ts.next();
  const auto n = ts.next_uint("vertex count");
  if (n > Graph::kMaxVertices) throw BudgetExceeded("graphs are limited to " + std::to_string(Graph::kMaxVertices) + " vertices");
  Graph g(static_cast<std::size_t>(n));
  while (!ts.done()) {
    const std::size_t line = ts.line_of_next();
    const auto head = ts.peek();
    const auto u = ts.next_uint("vertex");
    if (u < 1 || u > n) ts.fail(head, "vertex " + std::to_string(u) + " out of range 1.." + std::to_string(n));
    while (!ts.done() && ts.line_of_next() == line) {
      const auto at = ts.peek();
      const auto v = ts.next_uint("neighbour");
      if (v < 1 || v > n) ts.fail(at, "vertex " + std::to_string(v) + " out of range 1.." + std::to_string(n));
      if (v == u) ts.fail(at, "loops are not allowed");
      g.set_edge(static_cast<std::size_t>(u - 1), static_cast<std::size_t>(v - 1), true);
    }
  }
  return g;
}

std::string format_graph(const Graph& g) {
  std::ostringstream os;
  os << "graph " << g.size() << "\n";
  for (std::size_t u = 0; u < g.size(); ++u) {
    bool any = false;
    for (std::size_t v = u + 1; v < g.size(); ++v) {
      if (!g.adjacent(u, v)) continue;
      if (!any) os << u + 1, any = true;
      os << " " << v + 1;
    }
    if (any) os << "\n";
  }
  return os.str();
}

nlohmann::json to_json(const Graph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({u + 1, v + 1});
  return {{"n", g.size()}, {"graph6", to_graph6(g)}, {"edges", edges}};
}

}  // namespace linwidth
