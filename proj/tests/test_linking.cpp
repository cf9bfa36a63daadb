// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <set>

#include "linwidth/errors.hpp"
#include "linwidth/linking.hpp"
#include "support.hpp"

using namespace linwidth;
namespace lt = linwidth::testing;

namespace {

std::vector<std::size_t> indices(Mask m) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < 32; ++i) {
    if (m >> i & 1) out.push_back(i);
  }
  return out;
}

Configuration u24() {
  return Configuration(Field::make(3), 2, {"a", "b", "c", "d"}, {{1, 0}, {0, 1}, {1, 1}, {1, 2}});
}

Configuration random_config(std::mt19937_64& g, const FieldPtr& f, std::size_t n, std::size_t dim) {
  std::vector<Vector> vs;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) vs.push_back(lt::random_vector(g, *f, dim)), labels.push_back("e" + std::to_string(i));
  return Configuration(f, dim, labels, vs);
}

std::vector<Vector> pick(const Configuration& a, Mask m) {
  std::vector<Vector> out;
  for (auto i : indices(m)) out.push_back(a.vector(i));
  return out;
}

int brute_r(const Configuration& a, Mask m) { return lt::brute_rank(*a.field(), a.ambient(), pick(a, m)); }

/// lambda of s in M / C restricted to s ∪ t, by explicit span sizes.
int brute_minor_lambda(const Configuration& a, Mask s, Mask t, Mask c) {
  const int rc = brute_r(a, c);
  return (brute_r(a, s | c) - rc) + (brute_r(a, t | c) - rc) - (brute_r(a, s | t | c) - rc);
}

/// Random disjoint s, t inside the ground set.
std::pair<Mask, Mask> random_st(std::mt19937_64& g, std::size_t n) {
  Mask s = 0, t = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = g() % 4;
    if (r == 0) s |= bit(i);
    if (r == 1) t |= bit(i);
  }
  return {s, t};
}

}  // namespace

TEST_CASE("lexicographic order of index sets") {
  std::vector<Mask> all;
  for (Mask m = 0; m < 64; ++m) all.push_back(m);
  auto by_sequence = [](Mask a, Mask b) { return indices(a) < indices(b); };
  for (Mask a : all) {
    for (Mask b : all) CHECK(lex_less(a, b) == by_sequence(a, b));
  }
  std::vector<Mask> visited;
  for_each_lex_subset(0b101101, [&](Mask m) {
    visited.push_back(m);
    return false;
  });
  CHECK(visited.size() == 16);
  CHECK(std::is_sorted(visited.begin(), visited.end(), by_sequence));
  int stops = 0;
  CHECK(for_each_lex_subset(0b111, [&](Mask m) { return ++stops, m == 0b011; }));
  CHECK(stops == 3);  // {}, {0}, {0,1}
}

TEST_CASE("minimum connectivity between separated sets") {
  const auto a = u24();
  auto m = min_connectivity(a, 0, 0);
  CHECK(m.k == 0);
  CHECK(m.argmin == 0);
  m = min_connectivity(a, a.mask_of({"a"}), a.mask_of({"d"}));
  CHECK(m.k == 1);
  CHECK(a.labels_of(m.argmin) == std::vector<std::string>{"a"});
  m = min_connectivity(a, a.mask_of({"a", "b"}), a.mask_of({"c", "d"}));
  CHECK(m.k == 2);
  CHECK(m.argmin == a.mask_of({"a", "b"}));
  CHECK_THROWS_AS(min_connectivity(a, 1, 1), InputError);
  CHECK_THROWS_AS(min_connectivity(a, 0, 0, 2), BudgetExceeded);

  auto g = lt::rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const auto c = random_config(g, Field::gf2(), 1 + g() % 7, 1 + g() % 4);
    const auto [s, t] = random_st(g, c.size());
    const auto table = lt::brute_lambda_table(*c.field(), c.ambient(), c.vectors());
    int best = 1 << 20;
    Mask arg = 0;
    for (Mask x = 0; x < table.size(); ++x) {
      if ((x & s) != s || (x & t)) continue;
      if (table[x] < best || (table[x] == best && indices(x) < indices(arg))) best = table[x], arg = x;
    }
    const auto got = min_connectivity(c, s, t);
    CHECK(got.k == best);
    CHECK(got.argmin == arg);
  }
}

TEST_CASE("linking minors realise the minimum") {
  const auto a = u24();
  const Mask s = a.mask_of({"a"}), t = a.mask_of({"d"});
  const auto w = linking_minor(a, s, t);
  CHECK(w.k == 1);
  CHECK((w.spec.contract | w.spec.remove) == a.mask_of({"b", "c"}));
  CHECK(is_coindependent(a, w.spec.remove));
  CHECK(minor_lambda(a, w.spec, s) == 1);

  const auto whole = linking_minor(a, a.mask_of({"a", "b"}), a.mask_of({"c", "d"}));
  CHECK(whole.spec.contract == 0);
  CHECK(whole.spec.remove == 0);

  auto g = lt::rng(19);
  for (int trial = 0; trial < 300; ++trial) {
    const auto f = trial % 3 == 0 ? Field::make(3) : Field::gf2();
    const auto c = random_config(g, f, 1 + g() % 7, 1 + g() % 4);
    const auto [s, t] = random_st(g, c.size());
    const auto w2 = linking_minor(c, s, t);
    const Mask free = c.ground() & ~(s | t);
    CHECK((w2.spec.contract | w2.spec.remove) == free);
    CHECK((w2.spec.contract & w2.spec.remove) == 0);
    CHECK(brute_r(c, c.ground() & ~w2.spec.remove) == brute_r(c, c.ground()));
    CHECK(brute_minor_lambda(c, s, t, w2.spec.contract) == w2.k);
    CHECK(w2.k == min_connectivity(c, s, t).k);
    // No lex-smaller contraction set works.
    for (Mask cc = free;; cc = (cc - 1) & free) {
      if (lex_less(cc, w2.spec.contract)) {
        const Mask d = free & ~cc;
        const bool coind = brute_r(c, c.ground() & ~d) == brute_r(c, c.ground());
        CHECK_FALSE((coind && brute_minor_lambda(c, s, t, cc) == w2.k));
      }
      if (cc == 0) break;
    }
  }
}

TEST_CASE("strong linking checks on generated instances") {
  auto g = lt::rng(41);
  int applicable = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const auto f = trial % 4 == 0 ? Field::make(3) : Field::gf2();
    const auto c = random_config(g, f, 2 + g() % 5, 2 + g() % 3);
    const auto [s, t] = random_st(g, c.size());
    const auto w = linking_minor(c, s, t);
    const Mask free = c.ground() & ~(s | t);
    std::vector<Mask> zs;
    for (Mask y = free;; y = (y - 1) & free) {
      if (lambda(c, s | y) == w.k) zs.push_back(s | y);
      if (y == 0) break;
    }
    for (Mask z : zs) {
      for (Mask zp : zs) {
        const auto r = strong_linking_check(c, s, t, w.spec.contract, w.spec.remove, z, zp);
        REQUIRE(r.applicable);
        CHECK(r.exhaustive);
        CHECK_MESSAGE(r.ok(), r.detail);
        ++applicable;
      }
    }
  }
  CHECK(applicable > 150);

  // Trivial instance: E = S ∪ T.
  const auto a = u24();
  const Mask s = a.mask_of({"a", "b"}), t = a.mask_of({"c", "d"});
  CHECK(strong_linking_check(a, s, t, 0, 0, s, s).ok());

  // Hypothesis violations are reported, not checked.
  const Mask sa = a.mask_of({"a"}), td = a.mask_of({"d"});
  const auto w = linking_minor(a, sa, td);
  CHECK_FALSE(strong_linking_check(a, sa, td, 0, 0, sa, sa).applicable);
  CHECK_FALSE(strong_linking_check(a, sa, td, w.spec.contract, w.spec.remove, td, sa).applicable);
}

TEST_CASE("U24 pairing of boundaries by brute force") {
  const auto a = u24();
  const auto& f = *a.field();
  const Mask s = a.mask_of({"a"}), t = a.mask_of({"d"});
  const auto w = linking_minor(a, s, t);
  const Mask z = s, zp = a.mask_of({"a", "b", "c"});
  REQUIRE(lambda(a, z) == 1);
  REQUIRE(lambda(a, zp) == 1);
  const auto r = strong_linking_check(a, s, t, w.spec.contract, w.spec.remove, z, zp);
  REQUIRE(r.applicable);
  CHECK(r.ok());

  // Explicit sets: boundary elements and the span of C.
  auto set_of = [&](Mask m) { return lt::brute_span(f, 2, pick(a, m)); };
  auto inter = [](const std::set<Vector>& x, const std::set<Vector>& y) {
    std::set<Vector> out;
    for (const auto& v : x) {
      if (y.count(v)) out.insert(v);
    }
    return out;
  };
  const auto bz = inter(set_of(z), set_of(a.ground() & ~z));
  const auto bzp = inter(set_of(zp), set_of(a.ground() & ~zp));
  const auto cs = set_of(w.spec.contract);
  for (const auto& x : bzp) {
    int count = 0;
    for (const auto& y : bz) count += cs.count(subtract(f, x, y)) > 0;
    CHECK(count == 1);
  }
}

TEST_CASE("linking certificates") {
  const auto a = u24();
  const Mask s = a.mask_of({"a"}), t = a.mask_of({"d"});
  const auto m = min_connectivity(a, s, t);
  const auto w = linking_minor(a, s, t);
  const auto j = linking_certificate(a, m, w);
  CHECK(j["k"] == 1);
  CHECK(j["argmin"] == nlohmann::json::array({"a"}));
  const auto checks = to_json(strong_linking_check(a, s, t, w.spec.contract, w.spec.remove, s, s));
  CHECK(checks["ok"] == true);
  CHECK(checks.contains("iv"));
}
