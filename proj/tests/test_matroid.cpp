// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "linwidth/errors.hpp"
#include "linwidth/matroid.hpp"
#include "support.hpp"

using namespace linwidth;
namespace lt = linwidth::testing;

namespace {

Configuration u24() {
  return Configuration(Field::make(3), 2, {"a", "b", "c", "d"}, {{1, 0}, {0, 1}, {1, 1}, {1, 2}});
}

Configuration random_config(std::mt19937_64& g, const FieldPtr& f, std::size_t n, std::size_t dim) {
  std::vector<std::string> labels;
  std::vector<Vector> vs;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back("x" + std::to_string(i));
    vs.push_back(lt::random_vector(g, *f, dim));
  }
  return Configuration(f, dim, labels, vs);
}

/// Least independence string over all n! orderings, no pruning.
std::string brute_fingerprint(const Configuration& a) {
  const std::size_t n = a.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::string best;
  do {
    std::string cur;
    for (Mask pm = 0; pm < (Mask{1} << n); ++pm) {
      std::vector<Vector> vs;
      for (std::size_t p = 0; p < n; ++p) {
        if (pm & bit(p)) vs.push_back(a.vector(order[p]));
      }
      cur += lt::brute_rank(*a.field(), a.ambient(), vs) == static_cast<int>(vs.size()) ? '1' : '0';
    }
    if (best.empty() || cur < best) best = cur;
  } while (std::next_permutation(order.begin(), order.end()));
  return std::to_string(n) + ":" + best;
}

}  // namespace

TEST_CASE("rank and lambda of U24") {
  const auto a = u24();
  CHECK(rank_of(a, 0) == 0);
  for (Mask x = 0; x < 16; ++x) {
    if (popcount(x) == 2) CHECK(rank_of(a, x) == 2);
    if (popcount(x) == 2) CHECK(lambda(a, x) == 2);
    if (popcount(x) == 1) CHECK(lambda(a, x) == 1);
  }
  CHECK(rank_of(a, a.ground()) == 2);
  CHECK(lambda(a, 0) == 0);
  CHECK_THROWS_AS(a.mask_of({"z"}), InputError);
  CHECK_THROWS_AS(rank_of(a, bit(5)), InputError);
}

TEST_CASE("boundary") {
  const auto a = u24();
  CHECK(boundary(a, 0).is_zero());
  CHECK(boundary(a, a.mask_of({"a", "b"})) == Subspace::full(a.field(), 2));
  const Configuration ind(Field::gf2(), 2, {"p", "q"}, {{1, 0}, {0, 1}});
  CHECK(boundary(ind, ind.mask_of({"p"})).is_zero());
}

TEST_CASE("rank table, lambda and boundary agree with span-size oracles") {
  auto g = lt::rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const auto f = Field::make(trial % 3 == 0 ? 3 : 2);
    const auto a = random_config(g, f, 1 + g() % 8, 1 + g() % 4);
    const auto expect = lt::brute_lambda_table(*f, a.ambient(), a.vectors());
    const auto conn = connectivity(a);
    const auto ranks = rank_table(a);
    CHECK(conn.is_symmetric());
    CHECK(conn.is_submodular());
    for (Mask x = 0; x <= a.ground(); ++x) {
      CHECK(conn(x) == expect[x]);
      CHECK(ranks[x] == lt::brute_rank(*f, a.ambient(), a.vectors_of(x)));
      CHECK(static_cast<int>(boundary(a, x).dim()) == expect[x]);
    }
  }
}

TEST_CASE("minors") {
  const auto a = u24();
  SUBCASE("empty minor keeps every rank") {
    const auto n = minor(a, {});
    CHECK(rank_table(n) == rank_table(a));
    CHECK(n.labels() == a.labels());
  }
  SUBCASE("contracting one element of U24 gives U13") {
    const auto n = minor(a, {a.mask_of({"a"}), 0});
    CHECK(n.labels() == std::vector<std::string>{"b", "c", "d"});
    const auto r = rank_table(n);
    for (Mask y = 0; y < 8; ++y) {
      // r_{M/X}(Y) = r_M(Y ∪ X) - r_M(X), with Y re-indexed into {b, c, d}.
      const Mask lifted = static_cast<Mask>(y << 1) | bit(0);
      CHECK(r[y] == rank_of(a, lifted) - 1);
      CHECK(r[y] == std::min(popcount(y), 1));
    }
  }
  SUBCASE("deleting one element of U24 gives U23") {
    const auto n = minor(a, {0, a.mask_of({"d"})});
    const auto r = rank_table(n);
    for (Mask y = 0; y < 8; ++y) CHECK(r[y] == std::min(popcount(y), 2));
  }
  CHECK_THROWS_AS(minor(a, {1, 1}), InputError);

  auto g = lt::rng(8);
  for (int trial = 0; trial < 60; ++trial) {
    const auto f = Field::make(2);
    const auto b = random_config(g, f, 2 + g() % 5, 1 + g() % 4);
    const Mask c = static_cast<Mask>(g()) & b.ground();
    const Mask d = static_cast<Mask>(g()) & b.ground() & ~c;
    const auto n = minor(b, {c, d});
    const auto r = rank_table(n);
    const Mask keep = b.ground() & ~(c | d);
    for (Mask y = 0; y <= n.ground(); ++y) {
      Mask lifted = 0;
      for (const auto& l : n.labels_of(y)) lifted |= bit(b.index_of(l));
      CHECK((lifted & ~keep) == 0);
      CHECK(r[y] == rank_of(b, lifted | c) - rank_of(b, c));
    }
  }
}

TEST_CASE("coindependence") {
  const auto a = u24();
  CHECK(is_coindependent(a, 0));
  for (Mask d = 0; d < 16; ++d) {
    if (popcount(d) == 2) CHECK(is_coindependent(a, d));
    if (popcount(d) == 3) CHECK_FALSE(is_coindependent(a, d));
  }
}

TEST_CASE("lambda in a minor and its equality criterion") {
  const auto a = u24();
  const auto trivial = connminor_check(a, a.mask_of({"a"}), 0, 0);
  CHECK(trivial.leq);
  CHECK(trivial.equality);
  CHECK(trivial.predicted_equality);
  const auto r = connminor_check(a, a.mask_of({"a"}), a.mask_of({"b"}), 0);
  CHECK(r.consistent());
  CHECK_THROWS_AS(connminor_check(a, 1, 1, 0), InputError);

  auto g = lt::rng(12);
  int equal = 0, strict = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const auto b = random_config(g, Field::gf2(), 1 + g() % 6, 1 + g() % 4);
    std::vector<Mask> part(3, 0);
    for (std::size_t e = 0; e < b.size(); ++e) {
      const auto which = g() % 4;
      if (which < 3) part[which] |= bit(e);
    }
    const auto rep = connminor_check(b, part[0], part[1], part[2]);
    CHECK(rep.consistent());
    (rep.equality ? equal : strict)++;
  }
  CHECK(equal > 0);
  CHECK(strict > 0);
}

TEST_CASE("canonical fingerprint") {
  auto g = lt::rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = random_config(g, Field::gf2(), 1 + g() % 6, 1 + g() % 4);
    const auto fp = canonical_fingerprint(a);
    CHECK(fp == brute_fingerprint(a));
    // Reorder elements and change basis: same matroid.
    std::vector<std::size_t> perm(a.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), g);
    std::vector<Vector> vs;
    std::vector<std::string> labels;
    for (auto i : perm) vs.push_back(a.vector(i)), labels.push_back(a.labels()[i]);
    Matrix change;
    do {
      std::vector<Scalar> entries(a.ambient() * a.ambient());
      for (auto& x : entries) x = g() % 2;
      change = Matrix(Field::gf2(), a.ambient(), a.ambient(), entries);
    } while (change.rank() != a.ambient());
    const auto b = Configuration(Field::gf2(), a.ambient(), labels, vs).map(LinearMap(change));
    CHECK(canonical_fingerprint(b) == fp);
  }
  const Configuration u23_loop(Field::make(3), 2, {"a", "b", "c", "d"}, {{1, 0}, {0, 1}, {1, 1}, {0, 0}});
  CHECK(canonical_fingerprint(u23_loop) != canonical_fingerprint(u24()));
}

TEST_CASE("configuration text format") {
  const auto a = parse_configuration("field 3 1\n2 4\n1 0 1 1\n0 1 1 2\nlabels a b c d\n");
  CHECK(a == u24());
  CHECK(parse_configuration(format_configuration(a)) == a);
  const auto unlabeled = parse_configuration("field 2 1\n1 2\n1 1\n");
  CHECK(unlabeled.labels() == std::vector<std::string>{"e1", "e2"});

  auto message = [](const std::string& text) {
    try {
      parse_configuration(text);
    } catch (const InputError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message("field 2 1\n1 2\n1 1\nlabels a\n") == "line 4, column 1: expected 2 labels, found 1");
  CHECK(message("field 2 1\n1 2\n1 1\nnames a b\n") == "line 4, column 1: expected 'labels', found 'names'");
  CHECK(message("field 2 1\n1 2\n1 1\nlabels a a\n") == "labels: duplicate label 'a'");
}
