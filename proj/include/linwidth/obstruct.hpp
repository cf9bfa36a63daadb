// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <filesystem>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "linwidth/fullset.hpp"
#include "linwidth/graph.hpp"
#include "linwidth/linking.hpp"
#include "linwidth/matroid.hpp"

namespace linwidth {

enum class ObstructionKind { Matroid, Graph };

std::string to_string(ObstructionKind kind);
/// "matroid" or "graph"; anything else is an InputError.
ObstructionKind parse_obstruction_kind(const std::string& text);

/// One single-step reduction of the certified object and its width.
struct ChildWitness {
  std::string op;
  std::string object;
  int width = 0;
  std::vector<std::string> layout;
  bool operator==(const ChildWitness&) const = default;
};

struct ObstructionCertificate {
  ObstructionKind kind = ObstructionKind::Graph;
  int k = 0;
  /// graph6 for graphs, the matrix text format for configurations.
  std::string object;
  /// Isomorphism-invariant key: graph6 of the canonical form, or the
  /// rank fingerprint.
  std::string canonical;
  std::size_t size = 0;
  /// Exact width with an optimal layout; every layout has width > k.
  int width = 0;
  std::vector<std::string> layout;
  /// SHA-256 over the tabulated connectivity function the exhaustive search
  /// ran on, followed by the width found.
  std::string transcript;
  /// Number of labeled graphs in the pivot orbit (graphs only).
  std::size_t orbit_size = 0;
  /// Distinct reductions, every one of width <= k.
  std::vector<ChildWitness> children;

  /// SHA-256 of kind, k and the canonical key; names the certificate file.
  std::string id() const;
  bool operator==(const ObstructionCertificate&) const = default;
};

/// Certificate iff pw(a) > k while M \ e and M / e have path-width <= k
/// for every element e.
std::optional<ObstructionCertificate> is_excluded_minor_pw(const Configuration& a, int k,
                                                           const SearchOptions& options = {});

/// Certificate iff lrw(g) > k while every one-vertex deletion of every
/// member of the pivot orbit of g has lrw <= k.
std::optional<ObstructionCertificate> is_excluded_pivotminor_lrw(const Graph& g, int k,
                                                                 const OrbitBudget& budget = {});

struct ObstructionSearch {
  ObstructionKind kind = ObstructionKind::Graph;
  int k = 0;
  /// Largest object size enumerated; 0 gives the empty list.
  std::size_t max_size = 0;
  /// Ambient dimension of the enumerated GF(2) configurations.
  std::size_t max_rank = 4;
  unsigned workers = 1;
  /// Seeds the order in which candidates are handed to workers.
  std::uint64_t seed = 1;
};

/// Graph caps: n <= 8. Matroid caps: n <= 7, rank <= 4. Larger caps throw
/// BudgetExceeded.
inline constexpr std::size_t kMaxGraphSearch = 8;
inline constexpr std::size_t kMaxMatroidSearch = 7;

/// Canonical representatives up to the size cap: graphs up to isomorphism,
/// binary configurations up to matroid isomorphism, ordered by size and
/// canonical key.
std::vector<Graph> enumerate_graphs(std::size_t max_n, unsigned workers = 1);
std::vector<Configuration> enumerate_binary_matroids(std::size_t max_n, std::size_t max_rank, unsigned workers = 1);

/// Certificates sorted by (size, canonical key); the result does not depend
/// on `workers` or `seed`.
std::vector<ObstructionCertificate> search_obstructions(const ObstructionSearch& search);

/// Rebuilds the object from `cert.object`, re-runs the predicate and
/// compares every field.
bool revalidate(const ObstructionCertificate& cert, std::string* detail = nullptr);

/// Some M \ D / C with C ∪ D non-empty is isomorphic to `small`.
bool has_proper_minor(const Configuration& big, const Configuration& small);

nlohmann::json to_json(const ObstructionCertificate& cert);
/// Serialised search results: one line per certificate, deterministic.
std::string certificates_digest_text(const std::vector<ObstructionCertificate>& certs);

/// Writes `<id>.json` per certificate (with `manifest` embedded) and
/// `summary.tsv`. Returns the written paths, sorted.
std::vector<std::filesystem::path> write_certificate_db(const std::filesystem::path& dir,
                                                        const std::vector<ObstructionCertificate>& certs,
                                                        const nlohmann::json& manifest);

// ---------------------------------------------------------------------------
// Proof pipelines

struct PipelineOptions {
  /// Number of equal prefix cuts requested; at least 2.
  std::size_t ell = 4;
  FullSetOptions fullset{};
  LinkingScope scope{5, 4096, 1};
  OrbitBudget orbit{};
};

struct PipelineStep {
  std::string name;
  bool ok = true;
  std::string detail;
};

struct PipelineReport {
  enum class Outcome { Vacuous, NoEqualPair, Completed, Failed };
  Outcome outcome = Outcome::Vacuous;
  int k = 0;
  int width = 0;
  Layout layout;
  CutProfile profile;
  int theta = 0;
  std::vector<std::size_t> cuts;
  /// Chosen pair, 0-based positions in `cuts`.
  std::size_t i = 0;
  std::size_t j = 0;
  /// Graphs: pivots applied after renumbering along the layout.
  std::vector<std::pair<std::size_t, std::size_t>> pivots;
  Mask contract = 0;
  Mask remove = 0;
  Mask contract_prime = 0;
  Mask remove_prime = 0;
  /// Width of the reduced object N (or H) and whether the width-k
  /// equivalence was confirmed.
  int reduced_width = 0;
  std::size_t linking_checks = 0;
  std::size_t linking_failures = 0;
  std::vector<PipelineStep> steps;

  bool ok() const { return outcome != Outcome::Failed; }
  std::string summary() const;
};

/// Runs the excluded-minor argument on `a` with width bound k and the
/// caller's ell: linked optimal layout, equal prefix cuts, linking minor,
/// quotient by <C>, pigeonhole on mapped full sets, the minor N and the
/// final full-set comparison. Failed assertions are recorded, not thrown.
PipelineReport reenact_main_pipeline(const Configuration& a, int k, const PipelineOptions& options = {});

/// The graph analogue on the arrangement V_G with width bound 2k, after
/// pivoting so that G[S ∪ T] realises the minimum cut-rank.
PipelineReport reenact_graph_pipeline(const Graph& g, int k, const PipelineOptions& options = {});

nlohmann::json to_json(const PipelineReport& report);

// ---------------------------------------------------------------------------
// Bound formulas

using BigInt = boost::multiprecision::cpp_int;

/// 2^exponent + 1, expanded only when the exponent is small.
struct TowerNumber {
  BigInt exponent;
  std::optional<BigInt> value;
  std::string to_string() const;
};

struct BoundConstants {
  unsigned k = 0;
  unsigned q = 2;
  /// 2^{9 theta + 2} q^{theta (theta - 1)} 2^{2 (2 theta + 1) k} for
  /// theta = 0..k+1.
  std::vector<BigInt> compact_bounds;
  TowerNumber ell_matroid;
  TowerNumber ell_graph;
};

/// Exponents above this many bits are kept symbolic.
inline constexpr unsigned kMaxExpandedExponent = 1u << 16;

BoundConstants bound_constants(unsigned k, unsigned q);

/// (ell - 1 + 2(ell-2)/(ell-3)) (ell-2)^h - 2(ell-2)/(ell-3) as an exact
/// rational; requires ell >= 4.
boost::multiprecision::cpp_rational repeated_cuts_threshold(const BigInt& ell, unsigned h);

nlohmann::json to_json(const BoundConstants& b);

}  // namespace linwidth
