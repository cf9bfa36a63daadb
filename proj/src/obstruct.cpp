// SPDX-License-Identifier: Apache-2.0
#include "linwidth/obstruct.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "linwidth/digest.hpp"
#include "linwidth/errors.hpp"

namespace linwidth {

std::string to_string(ObstructionKind kind) { return kind == ObstructionKind::Graph ? "graph" : "matroid"; }

ObstructionKind parse_obstruction_kind(const std::string& text) {
  if (text == "graph") return ObstructionKind::Graph;
  if (text == "matroid") return ObstructionKind::Matroid;
  throw InputError("unknown obstruction kind '" + text + "' (expected graph or matroid)");
}

std::string ObstructionCertificate::id() const {
  return sha256_hex(to_string(kind) + "\n" + std::to_string(k) + "\n" + canonical);
}

namespace {

std::string transcript_of(const ConnectivityFunction& f, int width) {
  std::ostringstream os;
  os << "labels";
  for (const auto& l : f.labels()) os << ' ' << l;
  os << "\ntable";
  for (int v : f.table()) os << ' ' << v;
  os << "\nwidth " << width << '\n';
  return sha256_hex(os.str());
}

std::vector<std::string> layout_labels(const std::vector<std::string>& labels, const Layout& layout) {
  std::vector<std::string> out;
  for (auto i : layout) out.push_back(labels[i]);
  return out;
}

std::string graph_key(const Graph& g) { return to_graph6(canonical_form(g)); }

/// Columns as digit strings, for one-line summaries.
std::string compact_configuration(const Configuration& a) {
  std::string out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) out += ',';
    for (auto x : a.vector(i)) out += std::to_string(x);
  }
  return out.empty() ? "-" : out;
}

template <class Work>
void run_workers(unsigned workers, std::size_t count, Work&& work) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    try {
      for (std::size_t i = next++; i < count; i = next++) work(i);
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      next = count;
    }
  };
  if (workers == 1) {
    body();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace

std::optional<ObstructionCertificate> is_excluded_minor_pw(const Configuration& a, int k,
                                                           const SearchOptions& options) {
  const auto f = connectivity(a);
  const auto pw = path_width(f, options);
  if (pw.width <= k) return std::nullopt;
  ObstructionCertificate cert;
  cert.kind = ObstructionKind::Matroid;
  cert.k = k;
  cert.object = format_configuration(a);
  cert.canonical = canonical_fingerprint(a);
  cert.size = a.size();
  cert.width = pw.width;
  cert.layout = layout_labels(a.labels(), pw.layout);
  cert.transcript = transcript_of(f, pw.width);
  for (std::size_t e = 0; e < a.size(); ++e) {
    for (const bool contract : {false, true}) {
      const MinorSpec spec = contract ? MinorSpec{bit(e), 0} : MinorSpec{0, bit(e)};
      const Configuration child = minor(a, spec);
      const auto cw = path_width(connectivity(child), options);
      if (cw.width > k) return std::nullopt;
      cert.children.push_back({(contract ? "contract " : "delete ") + a.labels()[e], format_configuration(child),
                               cw.width, layout_labels(child.labels(), cw.layout)});
    }
  }
  return cert;
}

std::optional<ObstructionCertificate> is_excluded_pivotminor_lrw(const Graph& g, int k, const OrbitBudget& budget) {
  const std::size_t n = g.size();
  if (n > budget.max_vertices) {
    throw BudgetExceeded("pivot-minor test limited to " + std::to_string(budget.max_vertices) + " vertices");
  }
  const auto f = cut_rank_function(g);
  const auto lrw = path_width(f);
  if (lrw.width <= k) return std::nullopt;
  // Deletions from g itself are the cheapest necessary condition.
  for (std::size_t v = 0; v < n; ++v) {
    if (linear_rank_width(g.induced(g.vertices() & ~bit(v))).width > k) return std::nullopt;
  }
  ObstructionCertificate cert;
  cert.kind = ObstructionKind::Graph;
  cert.k = k;
  cert.object = to_graph6(g);
  cert.canonical = graph_key(g);
  cert.size = n;
  cert.width = lrw.width;
  cert.layout = layout_labels(g.labels(), lrw.layout);
  cert.transcript = transcript_of(f, lrw.width);

  const auto orbit = pivot_orbit(g, budget);
  cert.orbit_size = orbit.members.size();
  std::set<std::string> seen;
  for (std::size_t m = 0; m < orbit.members.size(); ++m) {
    const Graph& member = orbit.members[m];
    for (std::size_t v = 0; v < n; ++v) {
      const Graph h = member.induced(member.vertices() & ~bit(v));
      if (!seen.insert(graph_key(h)).second) continue;
      const auto w = linear_rank_width(h);
      if (w.width > k) return std::nullopt;
      std::string op;
      for (const auto& [a, b] : orbit.path_to(m)) {
        op += "pivot " + std::to_string(a + 1) + "-" + std::to_string(b + 1) + "; ";
      }
      op += "delete " + std::to_string(v + 1);
      cert.children.push_back({op, to_graph6(h), w.width, layout_labels(h.labels(), w.layout)});
    }
  }
  return cert;
}

std::vector<Graph> enumerate_graphs(std::size_t max_n, unsigned workers) {
  if (max_n > kMaxGraphSearch) {
    throw BudgetExceeded("graph enumeration is capped at " + std::to_string(kMaxGraphSearch) + " vertices");
  }
  std::vector<Graph> out;
  std::vector<Graph> level{Graph(0)};
  for (std::size_t n = 1; n <= max_n; ++n) {
    std::vector<std::set<Graph>> found(level.size());
    run_workers(workers, level.size(), [&](std::size_t idx) {
      const Graph& h = level[idx];
      for (Mask nb = 0; nb < bit(n - 1); ++nb) {
        Graph g(n);
        for (const auto& [a, b] : h.edges()) g.set_edge(a, b, true);
        for (std::size_t u = 0; u + 1 < n; ++u) {
          if (nb & bit(u)) g.set_edge(u, n - 1, true);
        }
        found[idx].insert(canonical_form(g));
      }
    });
    std::map<std::string, Graph> merged;
    for (auto& s : found) {
      for (const auto& g : s) merged.emplace(to_graph6(g), g);
    }
    level.clear();
    for (auto& [key, g] : merged) level.push_back(g);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

std::vector<Configuration> enumerate_binary_matroids(std::size_t max_n, std::size_t max_rank, unsigned workers) {
  if (max_n > kMaxMatroidSearch || max_rank > 4) {
    throw BudgetExceeded("matroid enumeration is capped at " + std::to_string(kMaxMatroidSearch) +
                         " elements and rank 4");
  }
  const auto& f = Field::gf2();
  std::vector<Vector> vectors;
  for (Mask m = 0; m < bit(max_rank); ++m) {
    Vector v(max_rank);
    for (std::size_t i = 0; i < max_rank; ++i) v[i] = (m >> i) & 1;
    vectors.push_back(v);
  }
  std::vector<Configuration> out;
  std::vector<Configuration> level{Configuration(f, max_rank, {}, {})};
  for (std::size_t n = 1; n <= max_n; ++n) {
    std::vector<std::string> labels;
    for (std::size_t i = 1; i <= n; ++i) labels.push_back("e" + std::to_string(i));
    std::vector<std::map<std::string, std::vector<Vector>>> found(level.size());
    run_workers(workers, level.size(), [&](std::size_t idx) {
      for (const auto& v : vectors) {
        auto vs = level[idx].vectors();
        vs.push_back(v);
        const Configuration c(f, max_rank, labels, vs);
        auto [it, fresh] = found[idx].emplace(canonical_fingerprint(c), vs);
        if (!fresh) it->second = std::min(it->second, vs);
      }
    });
    // Representatives are the least vector lists per fingerprint, so the
    // result does not depend on how the work was split.
    std::map<std::string, std::vector<Vector>> merged;
    for (auto& m : found) {
      for (auto& [key, vs] : m) {
        auto [it, fresh] = merged.emplace(key, vs);
        if (!fresh) it->second = std::min(it->second, vs);
      }
    }
    level.clear();
    for (auto& [key, vs] : merged) level.emplace_back(f, max_rank, labels, vs);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

std::vector<ObstructionCertificate> search_obstructions(const ObstructionSearch& search) {
  if (search.k < 0) throw InputError("k must be non-negative");
  if (search.max_size == 0) return {};
  std::size_t count = 0;
  std::vector<Graph> graphs;
  std::vector<Configuration> configs;
  if (search.kind == ObstructionKind::Graph) {
    graphs = enumerate_graphs(search.max_size, search.workers);
    count = graphs.size();
  } else {
    configs = enumerate_binary_matroids(search.max_size, search.max_rank, search.workers);
    count = configs.size();
  }
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(search.seed);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<std::optional<ObstructionCertificate>> slots(count);
  run_workers(search.workers, count, [&](std::size_t pos) {
    const std::size_t idx = order[pos];
    slots[idx] = search.kind == ObstructionKind::Graph ? is_excluded_pivotminor_lrw(graphs[idx], search.k)
                                                       : is_excluded_minor_pw(configs[idx], search.k);
  });
  std::vector<ObstructionCertificate> out;
  for (auto& s : slots) {
    if (s) out.push_back(std::move(*s));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::tie(a.size, a.canonical) < std::tie(b.size, b.canonical);
  });
  return out;
}

bool revalidate(const ObstructionCertificate& cert, std::string* detail) {
  auto fail = [&](const std::string& why) {
    if (detail) *detail = why;
    return false;
  };
  std::optional<ObstructionCertificate> again;
  if (cert.kind == ObstructionKind::Graph) {
    const Graph g = parse_graph6(cert.object);
    if (graph_key(g) != cert.canonical) return fail("canonical key mismatch");
    again = is_excluded_pivotminor_lrw(g, cert.k);
  } else {
    const Configuration a = parse_configuration(cert.object);
    if (canonical_fingerprint(a) != cert.canonical) return fail("canonical key mismatch");
    again = is_excluded_minor_pw(a, cert.k);
  }
  if (!again) return fail("predicate rejects the object");
  if (!(*again == cert)) return fail("recomputed certificate differs");
  return true;
}

bool has_proper_minor(const Configuration& big, const Configuration& small) {
  if (small.size() >= big.size()) return false;
  const std::string target = canonical_fingerprint(small);
  const int drop = static_cast<int>(big.size() - small.size());
  const Mask ground = big.ground();
  for (Mask r = 1; r <= ground; ++r) {
    if ((r & ~ground) || popcount(r) != drop) continue;
    for (Mask c = r;; c = (c - 1) & r) {
      if (canonical_fingerprint(minor(big, {c, r & ~c})) == target) return true;
      if (c == 0) break;
    }
  }
  return false;
}

nlohmann::json to_json(const ObstructionCertificate& cert) {
  nlohmann::json children = nlohmann::json::array();
  for (const auto& c : cert.children) {
    children.push_back({{"op", c.op}, {"object", c.object}, {"width", c.width}, {"layout", c.layout}});
  }
  nlohmann::json j{{"id", cert.id()},
                   {"kind", to_string(cert.kind)},
                   {"k", cert.k},
                   {"object", cert.object},
                   {"canonical", cert.canonical},
                   {"size", cert.size},
                   {"width", cert.width},
                   {"layout", cert.layout},
                   {"transcript_sha256", cert.transcript},
                   {"children", children}};
  if (cert.kind == ObstructionKind::Graph) j["orbit_size"] = cert.orbit_size;
  return j;
}

std::string certificates_digest_text(const std::vector<ObstructionCertificate>& certs) {
  std::string out;
  for (const auto& c : certs) out += to_json(c).dump() + "\n";
  return out;
}

std::vector<std::filesystem::path> write_certificate_db(const std::filesystem::path& dir,
                                                        const std::vector<ObstructionCertificate>& certs,
                                                        const nlohmann::json& manifest) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  std::ostringstream tsv;
  tsv << "id\tkind\tobject\tk\tsize\twidth\tchildren\n";
  for (const auto& c : certs) {
    auto j = to_json(c);
    j["manifest"] = manifest;
    const auto path = dir / (c.id() + ".json");
    std::ofstream(path) << j.dump(2) << "\n";
    written.push_back(path);
    const std::string object =
        c.kind == ObstructionKind::Graph ? c.object : compact_configuration(parse_configuration(c.object));
    tsv << c.id() << '\t' << to_string(c.kind) << '\t' << object << '\t' << c.k << '\t' << c.size << '\t' << c.width
        << '\t' << c.children.size() << '\n';
  }
  const auto summary = dir / "summary.tsv";
  std::ofstream(summary) << tsv.str();
  written.push_back(summary);
  std::sort(written.begin(), written.end());
  return written;
}

// ---------------------------------------------------------------------------
// Pipelines

std::string PipelineReport::summary() const {
  switch (outcome) {
    case Outcome::Vacuous:
      return "no repeats; pipeline vacuous";
    case Outcome::NoEqualPair:
      return "no pair of repeated cuts with equal mapped full sets";
    case Outcome::Completed:
      return "completed: width " + std::to_string(width) + ", reduced width " + std::to_string(reduced_width);
    case Outcome::Failed:
      break;
  }
  for (const auto& s : steps) {
    if (!s.ok) return "failed at " + s.name + ": " + s.detail;
  }
  return "failed";
}

namespace {

/// Records steps and stops the pipeline at the first failed assertion.
class StepLog {
 public:
  explicit StepLog(PipelineReport& r) : r_(r) {}
  bool operator()(const std::string& name, bool ok, const std::string& detail = {}) {
    r_.steps.push_back({name, ok, detail});
    if (!ok) r_.outcome = PipelineReport::Outcome::Failed;
    return ok;
  }

 private:
  PipelineReport& r_;
};

std::string pair_name(std::size_t a, std::size_t b) {
  return "(" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")";
}

/// First i < j with equal mapped full sets, or nullopt.
std::optional<std::pair<std::size_t, std::size_t>> equal_pair(const std::vector<FullSet>& mapped) {
  for (std::size_t j = 1; j < mapped.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (mapped[i] == mapped[j]) return std::pair{i, j};
    }
  }
  return std::nullopt;
}

/// Positions of `m` inside `keep`, renumbered as restrict() does.
Mask compress(Mask m, Mask keep) {
  Mask out = 0;
  std::size_t pos = 0;
  for (Mask r = keep; r; r &= r - 1, ++pos) {
    if (m & r & (~r + 1)) out |= bit(pos);
  }
  return out;
}

Subspace unit_span(std::size_t n, Mask m) {
  std::vector<Vector> vs;
  for (std::size_t i = 0; i < n; ++i) {
    if (m & bit(i)) vs.push_back(unit_vector(Field::gf2(), n, i));
  }
  return Subspace::span(Field::gf2(), n, vs);
}

/// Inputs shared by both pipelines from the quotient by <C> onwards:
/// the arrangement, the repeated prefix cuts, the expected boundary
/// dimension and the full-set width bound.
struct Tail {
  const SubspaceArrangement& v;
  const std::vector<Mask>& prefix;
  int boundary_dim;
  int fs_k;
  const PipelineOptions& options;
};

/// Quotient, pigeonhole, second quotient and key lemma. `span_of_free`
/// gives the subspace quotiented out for a set of free elements. On
/// success `phi_out` and `reduced` hold phi and phi(A_i ∪ (A - A_j)).
bool run_tail(const Tail& t, const Subspace& c_span, const std::function<Subspace(Mask)>& span_of_free,
              Mask c_mask, PipelineReport& r, StepLog& step, LinearMap& phi_out, SubspaceArrangement& reduced) {
  const auto& v = t.v;
  const std::size_t ell = t.prefix.size();
  std::vector<Subspace> bd;
  for (Mask p : t.prefix) bd.push_back(boundary(v, p));

  const LinearMap pi = quotient_map(v.ambient(), c_span);
  const Subspace b = pi.image(bd[0]);
  {
    bool same = true;
    for (const auto& x : bd) same = same && pi.image(x) == b;
    bool dims = true;
    for (const auto& x : bd) dims = dims && static_cast<int>(x.dim()) == t.boundary_dim;
    if (!step("quotient", static_cast<int>(b.dim()) == t.boundary_dim && same && dims,
              "dim B = " + std::to_string(b.dim()) + ", expected " + std::to_string(t.boundary_dim) +
                  (same ? "" : "; images of the boundaries differ") + (dims ? "" : "; boundary dimension off"))) {
      return false;
    }
  }

  std::vector<FullSet> fs, mapped;
  for (std::size_t m = 0; m < ell; ++m) {
    fs.push_back(full_set(v.restrict(t.prefix[m]), bd[m], t.fs_k, t.options.fullset));
    mapped.push_back(map_full_set(pi, fs[m]));
  }
  const auto pair = equal_pair(mapped);
  if (!pair) {
    step("pigeonhole", true, "no equal pair among " + std::to_string(ell) + " cuts");
    r.outcome = PipelineReport::Outcome::NoEqualPair;
    return false;
  }
  const auto [i, j] = *pair;
  r.i = i;
  r.j = j;
  step("pigeonhole", true, "pair " + pair_name(i, j) + ", |FS| = " + std::to_string(mapped[i].members.size()));

  const Mask between = t.prefix[j] & ~t.prefix[i];
  r.contract_prime = c_mask & between;
  r.remove_prime = between & ~c_mask;
  const LinearMap phi = quotient_map(v.ambient(), span_of_free(r.contract_prime));
  const Subspace bp = phi.image(bd[i]);
  const bool dim_ok = static_cast<int>(bp.dim()) == t.boundary_dim;
  const bool same_image = phi.image(bd[j]) == bp;
  const bool fs_equal = map_full_set(phi, fs[i]) == map_full_set(phi, fs[j]);
  if (!step("second quotient", dim_ok && same_image && fs_equal,
            std::string(dim_ok ? "" : "dim B' wrong; ") + (same_image ? "" : "phi(boundary j) != B'; ") +
                (fs_equal ? "" : "phi(FS_i) != phi(FS_j)"))) {
    return false;
  }
  const Mask ground = v.ground();
  const Mask keep = t.prefix[i] | (ground & ~t.prefix[j]);
  const bool inj_left = phi.injective_on(v.span(t.prefix[i]));
  const bool inj_right = phi.injective_on(v.span(ground & ~t.prefix[j]));
  if (!step("injectivity", inj_left && inj_right,
            std::string(inj_left ? "" : "not injective on the left part; ") +
                (inj_right ? "" : "not injective on the right part"))) {
    return false;
  }
  reduced = v.restrict(keep).map(phi);
  const Mask left = compress(t.prefix[i], keep);
  if (!step("reduced boundary", boundary(reduced, left) == bp, "B' differs from the boundary in the minor")) {
    return false;
  }
  phi_out = phi;
  const auto key = check_key(v, t.prefix[j], reduced, left, phi, t.fs_k, t.options.fullset);
  return step("key lemma", key.applicable && key.premise && key.holds,
              key.detail.empty() ? (key.premise ? "" : "premise fails") : key.detail);
}

Mask prefix_mask(const Layout& layout, std::size_t len) {
  Mask m = 0;
  for (std::size_t p = 0; p < len; ++p) m |= bit(layout[p]);
  return m;
}

/// Linked optimal layout and repeated cuts; false when the pipeline stops.
bool run_head(const ConnectivityFunction& f, int k, const PipelineOptions& options, PipelineReport& r,
              StepLog& step) {
  if (options.ell < 2) throw InputError("ell must be at least 2");
  if (k < 0) throw InputError("k must be non-negative");
  r.k = k;
  r.layout = find_linked_optimal(f);
  r.width = width(f, r.layout);
  r.profile = cut_profile(f, r.layout);
  if (!step("linked layout", is_linked(f, r.layout), "layout is not linked")) return false;
  const auto rc = find_repeated_cuts(r.profile, options.ell);
  if (!rc) {
    r.outcome = PipelineReport::Outcome::Vacuous;
    return false;
  }
  r.cuts = rc->indices;
  r.theta = rc->value;
  return step("repeated cuts", is_repeated_cuts_witness(r.profile, options.ell, *rc), "invalid witness");
}

}  // namespace

PipelineReport reenact_main_pipeline(const Configuration& a, int k, const PipelineOptions& options) {
  PipelineReport r;
  StepLog step(r);
  const auto f = connectivity(a);
  if (!run_head(f, k, options, r, step)) return r;

  std::vector<Mask> prefix;
  for (auto t : r.cuts) prefix.push_back(prefix_mask(r.layout, t));
  const Mask ground = a.ground();
  const Mask s = prefix.front(), t = ground & ~prefix.back();
  const auto w = linking_minor(a, s, t);
  r.contract = w.spec.contract;
  r.remove = w.spec.remove;
  if (!step("linking minor", w.k == r.theta, "minimum " + std::to_string(w.k) + " != theta")) return r;

  for (Mask z : prefix) {
    for (Mask zp : prefix) {
      const auto c = strong_linking_check(a, s, t, r.contract, r.remove, z, zp, options.scope);
      ++r.linking_checks;
      if (!c.applicable || !c.ok()) ++r.linking_failures;
    }
  }
  if (!step("strong linking", r.linking_failures == 0,
            std::to_string(r.linking_failures) + " of " + std::to_string(r.linking_checks) + " checks fail")) {
    return r;
  }

  const auto v = SubspaceArrangement::from_configuration(a);
  const Tail tail{v, prefix, r.theta, k, options};
  LinearMap phi;
  SubspaceArrangement reduced;
  if (!run_tail(tail, a.span(r.contract), [&](Mask m) { return a.span(m); }, r.contract, r, step, phi, reduced)) {
    return r;
  }
  const Configuration n = minor(a, {r.contract_prime, r.remove_prime});
  const Mask keep = prefix[r.i] | (ground & ~prefix[r.j]);
  if (!step("minor", n == a.restrict(keep).map(phi), "M / C' \\ D' differs from phi(A_i ∪ (A - A_j))")) return r;
  r.reduced_width = path_width(connectivity(n)).width;
  const bool agree = (r.width <= k) == (r.reduced_width <= k);
  if (step("width equivalence", agree, "pw(M) <= k and pw(N) <= k disagree")) {
    r.outcome = PipelineReport::Outcome::Completed;
  }
  return r;
}

PipelineReport reenact_graph_pipeline(const Graph& g, int k, const PipelineOptions& options) {
  PipelineReport r;
  StepLog step(r);
  const auto f0 = cut_rank_function(g);
  if (!run_head(f0, k, options, r, step)) return r;

  // Renumber so that the layout reads 1..n.
  const std::size_t n = g.size();
  std::vector<std::size_t> perm(n);
  for (std::size_t p = 0; p < n; ++p) perm[r.layout[p]] = p;
  const Graph g1 = g.relabel(perm);
  std::vector<Mask> prefix;
  for (auto t : r.cuts) prefix.push_back(full_mask(t));
  const Mask all = g1.vertices();
  const Mask s = prefix.front(), t = all & ~prefix.back();

  const auto w = oum_linking_minor(g1, s, t, options.orbit);
  Graph g2 = g1;
  for (const auto& [u, x] : w.pivots) g2 = pivot(g2, u, x);
  r.pivots = w.pivots;
  const Graph restricted = g2.induced(s | t);
  const int rho = cut_rank(restricted, full_mask(static_cast<std::size_t>(popcount(s))));
  if (!step("pivot linking", w.k == r.theta && rho == r.theta &&
                                 cut_rank_function(g2).table() == cut_rank_function(g1).table(),
            "rho of the pivot-minor is " + std::to_string(rho) + ", theta " + std::to_string(r.theta))) {
    return r;
  }
  r.contract = all & ~(s | t);

  LinkingScope scope = options.scope;
  scope.exhaustive_ambient = std::max<std::size_t>(scope.exhaustive_ambient, 8);
  for (Mask z : prefix) {
    for (Mask zp : prefix) {
      const auto c = strong_linking_graph_check(g2, s, t, z, zp, scope);
      ++r.linking_checks;
      if (!c.applicable || !c.ok()) ++r.linking_failures;
    }
  }
  if (!step("strong linking", r.linking_failures == 0,
            std::to_string(r.linking_failures) + " of " + std::to_string(r.linking_checks) + " checks fail")) {
    return r;
  }

  const auto v = arrangement_of(g2);
  const Tail tail{v, prefix, 2 * r.theta, 2 * k, options};
  LinearMap phi;
  SubspaceArrangement reduced;
  if (!run_tail(tail, unit_span(n, r.contract), [&](Mask m) { return unit_span(n, m); }, r.contract, r, step, phi,
                reduced)) {
    return r;
  }
  const Mask cp = prefix[r.j] & ~prefix[r.i];
  const Graph h = g2.induced(all & ~cp);
  if (!step("minor", arrangement_of(h).members() == reduced.members(),
            "phi(V_i ∪ V'_j) differs from the arrangement of G - C'")) {
    return r;
  }
  r.reduced_width = linear_rank_width(h).width;
  const bool agree = (r.width <= k) == (r.reduced_width <= k);
  if (step("width equivalence", agree, "lrw(G) <= k and lrw(H) <= k disagree")) {
    r.outcome = PipelineReport::Outcome::Completed;
  }
  return r;
}

nlohmann::json to_json(const PipelineReport& r) {
  static const char* names[] = {"vacuous", "no_equal_pair", "completed", "failed"};
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : r.steps) steps.push_back({{"name", s.name}, {"ok", s.ok}, {"detail", s.detail}});
  return {{"outcome", names[static_cast<int>(r.outcome)]},
          {"summary", r.summary()},
          {"k", r.k},
          {"width", r.width},
          {"layout", r.layout},
          {"profile", r.profile},
          {"theta", r.theta},
          {"cuts", r.cuts},
          {"pair", {r.i + 1, r.j + 1}},
          {"pivots", r.pivots},
          {"reduced_width", r.reduced_width},
          {"linking_checks", r.linking_checks},
          {"linking_failures", r.linking_failures},
          {"steps", steps}};
}

// ---------------------------------------------------------------------------
// Bounds

std::string TowerNumber::to_string() const {
  if (value) return value->str();
  return "2^" + exponent.str() + " + 1";
}

namespace {

TowerNumber tower(const BigInt& exponent) {
  TowerNumber t{exponent, std::nullopt};
  if (exponent <= kMaxExpandedExponent) t.value = (BigInt(1) << exponent.convert_to<unsigned>()) + 1;
  return t;
}

BigInt pow2(const BigInt& e) { return BigInt(1) << e.convert_to<unsigned>(); }

}  // namespace

BoundConstants bound_constants(unsigned k, unsigned q) {
  if (q < 2) throw InputError("q must be at least 2");
  BoundConstants b;
  b.k = k;
  b.q = q;
  for (unsigned theta = 0; theta <= k + 1; ++theta) b.compact_bounds.push_back(compact_count_bound(theta, k, q));
  const BigInt kk = k;
  const BigInt em = pow2(9 * kk + 11) * boost::multiprecision::pow(BigInt(q), k * (k + 1)) * pow2(2 * (2 * kk + 3) * kk);
  b.ell_matroid = tower(em);
  const BigInt eg = pow2(18 * (kk + 1) + 2 + (2 * kk + 2) * (2 * kk + 1) + 2 * (4 * kk + 3) * 2 * kk);
  b.ell_graph = tower(eg);
  return b;
}

boost::multiprecision::cpp_rational repeated_cuts_threshold(const BigInt& ell, unsigned h) {
  using boost::multiprecision::cpp_rational;
  if (ell < 4) throw InputError("the threshold formula needs ell >= 4");
  const cpp_rational r = cpp_rational(2 * (ell - 2)) / cpp_rational(ell - 3);
  return (cpp_rational(ell - 1) + r) * cpp_rational(boost::multiprecision::pow(BigInt(ell - 2), h)) - r;
}

nlohmann::json to_json(const BoundConstants& b) {
  nlohmann::json compact = nlohmann::json::array();
  for (std::size_t theta = 0; theta < b.compact_bounds.size(); ++theta) {
    compact.push_back({{"theta", theta}, {"bound", b.compact_bounds[theta].str()}});
  }
  auto tj = [](const TowerNumber& t) {
    return nlohmann::json{{"exponent", t.exponent.str()},
                          {"value", t.value ? nlohmann::json(t.value->str()) : nlohmann::json(nullptr)}};
  };
  return {{"k", b.k},
          {"q", b.q},
          {"compact_trajectory_bound", compact},
          {"ell_matroid", tj(b.ell_matroid)},
          {"ell_graph", tj(b.ell_graph)}};
}

}  // namespace linwidth
