// SPDX-License-Identifier: Apache-2.0
#include "linwidth/linking.hpp"

#include <random>

#include "linwidth/errors.hpp"

namespace linwidth {

bool lex_less(Mask a, Mask b) {
  const Mask diff = a ^ b;
  if (diff == 0) return false;
  const Mask low = diff & (~diff + 1);
  const Mask above = ~((low << 1) - 1);
  // The set holding the differing element continues with it; the other one
  // either ends (and is a prefix) or continues with something larger.
  if (a & low) return (b & above) != 0;
  return (a & above) == 0;
}

namespace {

bool lex_rec(Mask current, Mask remaining, const std::function<bool(Mask)>& visit) {
  if (visit(current)) return true;
  for (Mask r = remaining; r; r &= r - 1) {
    const Mask e = r & (~r + 1);
    const Mask later = remaining & ~((e << 1) - 1);
    if (lex_rec(current | e, later, visit)) return true;
  }
  return false;
}

void check_separated(Mask s, Mask t, Mask ground) {
  if (s & t) throw InputError("S and T must be disjoint");
  if ((s | t) & ~ground) throw InputError("S or T contains elements outside the ground set");
}

std::function<int(Mask)> rank_oracle(const Configuration& a) {
  if (a.size() <= 20) {
    auto table = std::make_shared<std::vector<int>>(rank_table(a));
    return [table](Mask m) { return (*table)[m]; };
  }
  return [&a](Mask m) { return rank_of(a, m); };
}

}  // namespace

bool for_each_lex_subset(Mask universe, const std::function<bool(Mask)>& visit) {
  return lex_rec(0, universe, visit);
}

ConnectivityMinimum min_connectivity(const ConnectivityFunction& f, Mask s, Mask t, std::size_t max_free) {
  check_separated(s, t, f.ground());
  const Mask free = f.ground() & ~(s | t);
  if (static_cast<std::size_t>(popcount(free)) > max_free) {
    throw BudgetExceeded("min_connectivity enumerates at most 2^" + std::to_string(max_free) + " sets");
  }
  ConnectivityMinimum best{f(s), s};
  for (Mask y = free;; y = (y - 1) & free) {
    const Mask x = s | y;
    const int v = f(x);
    if (v < best.k || (v == best.k && lex_less(x, best.argmin))) best = {v, x};
    if (y == 0) break;
  }
  return best;
}

ConnectivityMinimum min_connectivity(const Configuration& a, Mask s, Mask t, std::size_t max_free) {
  check_separated(s, t, a.ground());
  const auto r = rank_oracle(a);
  const Mask g = a.ground();
  const int total = r(g);
  const auto f = ConnectivityFunction(a.labels(), [&](Mask x) { return r(x) + r(g & ~x) - total; });
  return min_connectivity(f, s, t, max_free);
}

int minor_lambda(const Configuration& a, const MinorSpec& spec, Mask s) {
  const Configuration n = minor(a, spec);
  return lambda(n, n.mask_of(a.labels_of(s)));
}

LinkingWitness linking_minor(const Configuration& a, Mask s, Mask t, std::size_t max_free) {
  check_separated(s, t, a.ground());
  const Mask g = a.ground();
  const Mask free = g & ~(s | t);
  if (static_cast<std::size_t>(popcount(free)) > max_free) {
    throw BudgetExceeded("linking_minor enumerates at most 2^" + std::to_string(max_free) + " partitions");
  }
  const int k = min_connectivity(a, s, t).k;
  const auto r = rank_oracle(a);
  const int total = r(g);
  const Mask keep = s | t;
  LinkingWitness w;
  const bool found = for_each_lex_subset(free, [&](Mask c) {
    const Mask d = free & ~c;
    if (r(g & ~d) != total) return false;
    // Ranks in M / C restricted to s ∪ t.
    const int rc = r(c);
    const int lam = (r(s | c) - rc) + (r((keep & ~s) | c) - rc) - (r(keep | c) - rc);
    if (lam != k) return false;
    w = {{c, d}, k};
    return true;
  });
  if (!found) throw InvariantViolation("no linking minor found although one must exist");
  return w;
}

namespace {

Vector random_element(const Subspace& s, std::mt19937_64& g) {
  const auto& f = *s.field();
  Vector x(s.ambient(), 0);
  for (std::size_t i = 0; i < s.dim(); ++i) {
    const Scalar c = static_cast<Scalar>(g() % f.order());
    const auto row = s.basis_row(i);
    for (std::size_t j = 0; j < x.size(); ++j) x[j] = f.add(x[j], f.mul(c, row[j]));
  }
  return x;
}

/// Calls `visit(x, y)` for every pair of `a` x `b`, or for sampled pairs,
/// until it returns false.
template <class Visit>
bool all_pairs(const Subspace& a, const Subspace& b, bool exhaustive, const LinkingScope& scope,
               std::mt19937_64& g, Visit&& visit) {
  if (exhaustive) {
    const auto ea = a.elements(), eb = b.elements();
    for (const auto& x : ea) {
      for (const auto& y : eb) {
        if (!visit(x, y)) return false;
      }
    }
    return true;
  }
  for (std::size_t i = 0; i < scope.samples; ++i) {
    if (!visit(random_element(a, g), random_element(b, g))) return false;
  }
  return true;
}

}  // namespace

LinkingChecks check_linking_spans(const LinkingSpans& sp, const LinkingScope& scope) {
  LinkingChecks r;
  r.applicable = true;
  r.exhaustive = sp.z_side.ambient() <= scope.exhaustive_ambient;
  const auto& f = *sp.z_side.field();
  std::mt19937_64 g(scope.seed);
  auto diff = [&f](const Vector& x, const Vector& y) { return subtract(f, x, y); };

  r.i = all_pairs(sp.z_side, sp.z_side, r.exhaustive, scope, g, [&](const Vector& x, const Vector& y) {
    const auto d = diff(x, y);
    return sp.c.contains(d) == sp.c_in_z.contains(d);
  });
  if (!r.i) r.detail += "(i) fails; ";
  r.ii = all_pairs(sp.rest_side, sp.rest_side, r.exhaustive, scope, g, [&](const Vector& x, const Vector& y) {
    const auto d = diff(x, y);
    return sp.c.contains(d) == sp.c_out_z.contains(d);
  });
  if (!r.ii) r.detail += "(ii) fails; ";
  r.iii = all_pairs(sp.boundary_z, sp.boundary_z, r.exhaustive, scope, g, [&](const Vector& x, const Vector& y) {
    return sp.c.contains(diff(x, y)) == (x == y);
  });
  if (!r.iii) r.detail += "(iii) fails; ";

  // (iv): boundaries have at most q^dim elements, so pair them off fully.
  const auto ys = sp.boundary_z.elements();
  auto pairs_once = [&](const Vector& x) {
    int matches = 0;
    bool inside = true;
    for (const auto& y : ys) {
      const auto d = diff(x, y);
      if (sp.c.contains(d)) ++matches, inside = inside && sp.c_sym.contains(d);
    }
    return matches == 1 && inside;
  };
  if (r.exhaustive) {
    for (const auto& x : sp.boundary_zp.elements()) r.iv = r.iv && pairs_once(x);
  } else {
    for (std::size_t i = 0; i < scope.samples && r.iv; ++i) r.iv = pairs_once(random_element(sp.boundary_zp, g));
  }
  if (!r.iv) r.detail += "(iv) fails; ";
  return r;
}

LinkingChecks strong_linking_check(const Configuration& a, Mask s, Mask t, Mask c, Mask d, Mask z, Mask zp,
                                   const LinkingScope& scope) {
  LinkingChecks r;
  const Mask g = a.ground();
  auto reject = [&r](const std::string& why) {
    r.detail = why;
    return r;
  };
  if ((s & t) || ((s | t | c | d | z | zp) & ~g)) return reject("S, T must be disjoint subsets of E");
  if ((c & d) || (c | d) != (g & ~(s | t))) return reject("C, D must partition E - (S ∪ T)");
  if (!is_coindependent(a, d)) return reject("D is not coindependent");
  const int k = min_connectivity(a, s, t).k;
  if (minor_lambda(a, {c, d}, s) != k) return reject("lambda_N(S) differs from the minimum");
  for (Mask x : {z, zp}) {
    if ((x & s) != s || (x & t)) return reject("Z and Z' must satisfy S ⊆ Z ⊆ E - T");
    if (lambda(a, x) != k) return reject("lambda(Z) or lambda(Z') differs from k");
  }
  const LinkingSpans spans{a.span(z),
                           a.span(g & ~z),
                           a.span(c),
                           a.span(c & z),
                           a.span(c & ~z),
                           a.span(c & (z ^ zp)),
                           boundary(a, z),
                           boundary(a, zp)};
  return check_linking_spans(spans, scope);
}

nlohmann::json to_json(const LinkingChecks& c) {
  return {{"applicable", c.applicable}, {"exhaustive", c.exhaustive}, {"i", c.i},     {"ii", c.ii},
          {"iii", c.iii},               {"iv", c.iv},                 {"ok", c.ok()}, {"detail", c.detail}};
}

nlohmann::json linking_certificate(const Configuration& a, const ConnectivityMinimum& m, const LinkingWitness& w) {
  return {{"k", m.k},
          {"argmin", a.labels_of(m.argmin)},
          {"C", a.labels_of(w.spec.contract)},
          {"D", a.labels_of(w.spec.remove)}};
}

}  // namespace linwidth
