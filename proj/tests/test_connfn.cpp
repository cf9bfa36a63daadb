// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <climits>
#include <numeric>

#include "linwidth/connfn.hpp"
#include "linwidth/errors.hpp"
#include "support.hpp"

using namespace linwidth;
namespace lt = linwidth::testing;

namespace {

std::vector<std::string> names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
  return out;
}

ConnectivityFunction u24() {
  auto f3 = Field::make(3);
  const std::vector<Vector> cols{{1, 0}, {0, 1}, {1, 1}, {1, 2}};
  return ConnectivityFunction::from_table(names(4), lt::brute_lambda_table(*f3, 2, cols));
}

ConnectivityFunction cut_rank(const std::vector<std::vector<int>>& adj) {
  return ConnectivityFunction::from_table(names(adj.size()), lt::brute_cut_rank_table(adj));
}

std::vector<std::vector<int>> path_graph(std::size_t n) {
  std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i + 1 < n; ++i) a[i][i + 1] = a[i + 1][i] = 1;
  return a;
}

std::vector<std::vector<int>> cycle_graph(std::size_t n) {
  auto a = path_graph(n);
  a[0][n - 1] = a[n - 1][0] = 1;
  return a;
}

ConnectivityFunction random_gf2_config(std::mt19937_64& g, std::size_t n, std::size_t dim) {
  std::vector<Vector> cols;
  for (std::size_t i = 0; i < n; ++i) cols.push_back(lt::random_vector(g, *Field::gf2(), dim));
  return ConnectivityFunction::from_table(names(n), lt::brute_lambda_table(*Field::gf2(), dim, cols));
}

/// Minimum width over all n! layouts, first optimum in lexicographic order.
PathWidthResult brute_path_width(const ConnectivityFunction& f) {
  Layout p(f.size());
  std::iota(p.begin(), p.end(), 0);
  PathWidthResult best{INT_MAX, {}};
  do {
    int w = 0;
    Mask m = 0;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
      m |= bit(p[i]);
      w = std::max(w, f(m));
    }
    if (w < best.width) best = {w, p};
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

/// Linkedness straight from the definition: scan every subset X of E.
bool brute_linked(const ConnectivityFunction& f, const Layout& s) {
  const std::size_t n = s.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) {
      Mask lo = 0, hi = 0;
      for (std::size_t t = 0; t < j; ++t) (t < i ? lo : hi) |= bit(s[t]);
      hi |= lo;
      int best_set = INT_MAX;
      for (Mask x = 0; x <= f.ground(); ++x) {
        if ((x & lo) == lo && (x & ~hi) == 0) best_set = std::min(best_set, f(x));
      }
      int best_prefix = INT_MAX;
      Mask m = 0;
      for (std::size_t t = 0; t <= j; ++t) {
        if (t >= i) best_prefix = std::min(best_prefix, f(m));
        if (t < n) m |= bit(s[t]);
      }
      if (best_set != best_prefix) return false;
    }
  }
  return true;
}

/// Witness existence by scanning all index ell-tuples.
bool brute_repeated(const CutProfile& a, std::size_t ell, std::vector<std::size_t>& chosen, std::size_t from) {
  if (chosen.size() == ell) {
    const int w = a[chosen[0]];
    for (auto i : chosen) {
      if (a[i] != w) return false;
    }
    for (std::size_t i = chosen.front(); i <= chosen.back(); ++i) {
      if (a[i] < w) return false;
    }
    return true;
  }
  for (std::size_t i = from; i < a.size(); ++i) {
    chosen.push_back(i);
    if (brute_repeated(a, ell, chosen, i + 1)) return true;
    chosen.pop_back();
  }
  return false;
}

/// Random walk on [0, height] returning to 0, unit steps.
CutProfile random_profile(std::mt19937_64& g, std::size_t n, int height) {
  CutProfile a{0};
  for (std::size_t i = 1; i <= n; ++i) {
    const int left = static_cast<int>(n - i);
    std::vector<int> options;
    for (int d : {-1, 0, 1}) {
      const int v = a.back() + d;
      if (v >= 0 && v <= height && v <= left) options.push_back(v);
    }
    a.push_back(options[g() % options.size()]);
  }
  return a;
}

}  // namespace

TEST_CASE("width of small layouts") {
  const auto f = u24();
  CHECK(width(f, {0, 1, 2, 3}) == 2);
  CHECK(width(cut_rank(path_graph(3)), {0, 1, 2}) == 1);
  const auto single = ConnectivityFunction::from_table({"x"}, {0, 0});
  CHECK(width(single, {0}) == 0);
  CHECK_THROWS_AS(width(f, {0, 1, 1, 3}), InputError);
  CHECK_THROWS_AS(width(f, {0, 1, 2}), InputError);
}

TEST_CASE("path-width examples") {
  const auto single = ConnectivityFunction::from_table({"x"}, {0, 0});
  CHECK(path_width(single).width == 0);
  CHECK(path_width(single).layout == Layout{0});
  CHECK(path_width(u24()).width == 2);
  CHECK(path_width(u24()).layout == Layout{0, 1, 2, 3});
  CHECK(path_width(cut_rank(path_graph(4))).width == 1);
  CHECK(path_width(cut_rank(cycle_graph(5))).width == 2);

  const auto big = ConnectivityFunction::from_table(names(10), std::vector<int>(1024, 0));
  CHECK_THROWS_AS(path_width(big), BudgetExceeded);
  SearchOptions dp;
  dp.strategy = SearchOptions::Strategy::SubsetDp;
  CHECK(path_width(big, dp).width == 0);
}

TEST_CASE("path-width agrees with permutation brute force on random inputs") {
  auto g = lt::rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + g() % 6;
    const auto f = (trial % 2) ? random_gf2_config(g, n, 1 + g() % 4) : cut_rank(lt::random_adjacency(g, n));
    CAPTURE(trial);
    CHECK(f.is_symmetric());
    CHECK(f.is_submodular());
    CHECK(f.is_normalized());
    const auto expect = brute_path_width(f);
    const auto got = path_width(f);
    CHECK(got.width == expect.width);
    CHECK(got.layout == expect.layout);
    CHECK(width(f, got.layout) == got.width);

    SearchOptions dp;
    dp.strategy = SearchOptions::Strategy::SubsetDp;
    const auto via_dp = path_width(f, dp);
    CHECK(via_dp.width == expect.width);
    CHECK(via_dp.layout == expect.layout);

    SearchOptions par;
    par.workers = 4;
    const auto via_par = path_width(f, par);
    CHECK(via_par.layout == expect.layout);
  }
}

TEST_CASE("linkedness") {
  const auto single = ConnectivityFunction::from_table({"x"}, {0, 0});
  CHECK(is_linked(single, {0}));
  CHECK(is_linked(u24(), {0, 1, 2, 3}));

  // 6-cycle laid out 0,3,1,4,2,5 alternates antipodal vertices.
  const auto c6 = cut_rank(cycle_graph(6));
  const Layout interleaved{0, 3, 1, 4, 2, 5};
  CHECK(is_linked(c6, interleaved) == brute_linked(c6, interleaved));
  CHECK(is_linked(c6, interleaved));  // every layout of C6 turns out to be linked

  // Two disjoint edges 0-3 and 1-2 laid out 0,1,3,2: the window between the
  // first and third prefix contains {0,3} with cut-rank 0 below every prefix.
  std::vector<std::vector<int>> matching(4, std::vector<int>(4, 0));
  matching[0][3] = matching[3][0] = matching[1][2] = matching[2][1] = 1;
  const auto m2 = cut_rank(matching);
  CHECK_FALSE(is_linked(m2, {0, 1, 3, 2}));
  CHECK_FALSE(brute_linked(m2, {0, 1, 3, 2}));
  CHECK(is_linked(m2, {0, 3, 1, 2}));
  CHECK(is_linked(c6, {0, 1, 2, 3, 4, 5}) == brute_linked(c6, {0, 1, 2, 3, 4, 5}));

  auto g = lt::rng(5);
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t n = 1 + g() % 6;
    const auto f = cut_rank(lt::random_adjacency(g, n));
    Layout s(n);
    std::iota(s.begin(), s.end(), 0);
    std::shuffle(s.begin(), s.end(), g);
    CHECK(is_linked(f, s) == brute_linked(f, s));
  }
}

TEST_CASE("a linked optimal layout always exists") {
  const auto single = ConnectivityFunction::from_table({"x"}, {0, 0});
  CHECK(find_linked_optimal(single) == Layout{0});
  const auto l = find_linked_optimal(u24());
  CHECK(width(u24(), l) == 2);
  CHECK(is_linked(u24(), l));

  auto g = lt::rng(99);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t n = 1 + g() % 6;
    const auto f = (trial % 2) ? random_gf2_config(g, n, 1 + g() % 4) : cut_rank(lt::random_adjacency(g, n));
    const auto layout = find_linked_optimal(f);
    CHECK(brute_linked(f, layout));
    CHECK(width(f, layout) == brute_path_width(f).width);
  }
}

TEST_CASE("repeated cuts examples") {
  const auto r = find_repeated_cuts({0, 1, 1, 1, 0}, 3);
  REQUIRE(r);
  CHECK(r->indices == std::vector<std::size_t>{1, 2, 3});
  CHECK(r->value == 1);

  const auto z = find_repeated_cuts(CutProfile(7, 0), 4);
  REQUIRE(z);
  CHECK(z->indices == std::vector<std::size_t>{0, 1, 2, 3});
  CHECK(z->value == 0);

  CHECK_FALSE(find_repeated_cuts({0, 1, 0}, 4));
  CHECK_THROWS_AS(find_repeated_cuts({0, 2, 0}, 4), InputError);
  CHECK_THROWS_AS(find_repeated_cuts({1, 0, 1}, 4), InputError);
  CHECK_THROWS_AS(find_repeated_cuts({0, 1}, 4), InputError);
}

TEST_CASE("repeated cuts threshold") {
  CHECK(meets_repeated_cuts_threshold(3, 4, 0));
  CHECK_FALSE(meets_repeated_cuts_threshold(2, 4, 0));
  CHECK(meets_repeated_cuts_threshold(10, 4, 1));
  CHECK_FALSE(meets_repeated_cuts_threshold(9, 4, 1));
  CHECK(meets_repeated_cuts_threshold(24, 4, 2));
  CHECK_FALSE(meets_repeated_cuts_threshold(23, 4, 2));
  CHECK(meets_repeated_cuts_threshold(4, 5, 0));   // 7*3^0 - 3
  CHECK(meets_repeated_cuts_threshold(18, 5, 1));  // 7*3 - 3
  CHECK_FALSE(meets_repeated_cuts_threshold(17, 5, 1));
  CHECK_THROWS_AS(meets_repeated_cuts_threshold(5, 3, 0), InputError);
}

TEST_CASE("repeated cuts agree with tuple brute force") {
  auto g = lt::rng(4);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t ell = 4 + g() % 2;
    const std::size_t n = 1 + g() % 20;
    const auto a = random_profile(g, n, 1 + static_cast<int>(g() % 3));
    std::vector<std::size_t> chosen;
    const bool exists = brute_repeated(a, ell, chosen, 0);
    const auto got = find_repeated_cuts(a, ell);
    CAPTURE(trial);
    CHECK(got.has_value() == exists);
    if (got) CHECK(is_repeated_cuts_witness(a, ell, *got));
    const int h = *std::max_element(a.begin(), a.end());
    if (meets_repeated_cuts_threshold(n, ell, h)) CHECK(got.has_value());
  }
}

TEST_CASE("witness checker rejects malformed witnesses") {
  const CutProfile a{0, 1, 0, 1, 0};
  CHECK(is_repeated_cuts_witness(a, 3, {{0, 2, 4}, 0}));
  CHECK_FALSE(is_repeated_cuts_witness(a, 2, {{1, 3}, 1}));  // dips to 0 between
  CHECK_FALSE(is_repeated_cuts_witness(a, 3, {{0, 4, 2}, 0}));
  CHECK_FALSE(is_repeated_cuts_witness(a, 3, {{0, 2}, 0}));
}

TEST_CASE("unit step for matroid connectivity") {
  CHECK(check_unit_step(u24()));
  const auto free3 = ConnectivityFunction::from_table(names(3), std::vector<int>(8, 0));
  CHECK(check_unit_step(free3));

  // M_G of the 4-cycle: columns of (I_4 | A).
  const auto c4 = cycle_graph(4);
  std::vector<Vector> cols;
  for (std::size_t i = 0; i < 4; ++i) cols.push_back(unit_vector(Field::gf2(), 4, i));
  for (std::size_t i = 0; i < 4; ++i) {
    Vector v(4);
    for (std::size_t j = 0; j < 4; ++j) v[j] = static_cast<Scalar>(c4[j][i]);
    cols.push_back(v);
  }
  const auto mg = ConnectivityFunction::from_table(names(8), lt::brute_lambda_table(*Field::gf2(), 4, cols));
  CHECK(check_unit_step(mg));

  const auto jumpy = ConnectivityFunction::from_table(names(2), {0, 2, 2, 0});
  CHECK_FALSE(check_unit_step(jumpy));
}
