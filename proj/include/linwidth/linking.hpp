// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <json.hpp>
#include <string>

#include "linwidth/connfn.hpp"
#include "linwidth/matroid.hpp"

namespace linwidth {

/// Order on index sets by their sorted index sequences; a proper prefix
/// comes first.
bool lex_less(Mask a, Mask b);

/// Visits the subsets of `universe` in lex_less order until `visit` returns
/// true; returns whether it did.
bool for_each_lex_subset(Mask universe, const std::function<bool(Mask)>& visit);

struct ConnectivityMinimum {
  int k = 0;
  /// lex_less-least minimizer X with s ⊆ X ⊆ E - t.
  Mask argmin = 0;
};

/// min f(X) over s ⊆ X ⊆ E - t. Throws InputError for overlapping s, t and
/// BudgetExceeded when more than `max_free` elements are unconstrained.
ConnectivityMinimum min_connectivity(const ConnectivityFunction& f, Mask s, Mask t, std::size_t max_free = 22);
ConnectivityMinimum min_connectivity(const Configuration& a, Mask s, Mask t, std::size_t max_free = 22);

/// lambda of s inside the minor M \ D / C (s is disjoint from C and D).
int minor_lambda(const Configuration& a, const MinorSpec& spec, Mask s);

struct LinkingWitness {
  MinorSpec spec;
  int k = 0;
};

/// Partition (C, D) of E - (s ∪ t) with D coindependent and
/// lambda_N(s) = min_connectivity; the lex_less-least C wins.
LinkingWitness linking_minor(const Configuration& a, Mask s, Mask t, std::size_t max_free = 16);

/// Scope of the span checks: every pair when the ambient dimension is at most
/// `exhaustive_ambient`, otherwise `samples` seeded random pairs per check.
struct LinkingScope {
  std::size_t exhaustive_ambient = 5;
  std::size_t samples = 4096;
  std::uint64_t seed = 1;
};

/// The finite-space data the four checks read. `c_sym` spans the part of C
/// inside Z △ Z'.
struct LinkingSpans {
  Subspace z_side, rest_side;
  Subspace c, c_in_z, c_out_z, c_sym;
  Subspace boundary_z, boundary_zp;
};

struct LinkingChecks {
  bool applicable = false;
  bool exhaustive = true;
  bool i = true, ii = true, iii = true, iv = true;
  std::string detail;
  bool ok() const { return i && ii && iii && iv; }
};

/// Evaluates (i)-(iv) on explicit spans. Hypotheses are the caller's job.
LinkingChecks check_linking_spans(const LinkingSpans& spans, const LinkingScope& scope = {});

/// Checks the hypotheses (C ∪ D = E - (s ∪ t), D coindependent, lambda_N(s)
/// equal to the minimum k, s ⊆ z, z' ⊆ E - t with lambda(z) = lambda(z') = k);
/// inapplicable if any fails, otherwise runs the four checks.
LinkingChecks strong_linking_check(const Configuration& a, Mask s, Mask t, Mask c, Mask d, Mask z, Mask zp,
                                   const LinkingScope& scope = {});

nlohmann::json to_json(const LinkingChecks& checks);
/// {k, argmin, C, D} with label lists.
nlohmann::json linking_certificate(const Configuration& a, const ConnectivityMinimum& m, const LinkingWitness& w);

}  // namespace linwidth
