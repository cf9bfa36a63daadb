// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>

#include "linwidth/errors.hpp"
#include "linwidth/ffla.hpp"
#include "support.hpp"

using namespace linwidth;
using linwidth::testing::all_vectors;
using linwidth::testing::brute_span;

namespace {

Vector e(std::size_t n, std::size_t i) { return unit_vector(Field::gf2(), n, i); }

}  // namespace

TEST_CASE("field axioms hold exhaustively for every q <= 9") {
  for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
    unsigned p = 2, m = 1;
    for (unsigned cand : {2u, 3u, 5u, 7u}) {
      unsigned x = q, k = 0;
      while (x % cand == 0) x /= cand, ++k;
      if (x == 1) p = cand, m = k;
    }
    auto F = Field::make(p, m);
    const Field& f = *F;
    CAPTURE(q);
    REQUIRE(f.order() == q);
    for (Scalar a = 0; a < q; ++a) {
      CHECK(f.add(a, 0) == a);
      CHECK(f.mul(a, 1) == a);
      CHECK(f.add(a, f.neg(a)) == 0);
      if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
      for (Scalar b = 0; b < q; ++b) {
        CHECK(f.add(a, b) == f.add(b, a));
        CHECK(f.mul(a, b) == f.mul(b, a));
        for (Scalar c = 0; c < q; ++c) {
          CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
          CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
          CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        }
      }
    }
  }
}

TEST_CASE("field construction rejects bad specs") {
  CHECK_THROWS_AS(Field::make(4, 1), InputError);
  CHECK_THROWS_AS(Field::make(FieldSpec{2, 2, {1, 0, 1}}), InputError);  // x^2+1 = (x+1)^2
  CHECK_THROWS_AS(Field::make(2, 17), InputError);
  CHECK_NOTHROW(Field::make(FieldSpec{2, 2, {1, 1, 1}}));
  CHECK(Field::make(2, 16)->order() == 65536);
  CHECK(is_irreducible(3, {1, 0, 1}));   // x^2+1 over GF(3)
  CHECK(!is_irreducible(5, {1, 0, 1}));  // 2^2 = -1 mod 5
}

TEST_CASE("rank") {
  auto f2 = Field::gf2();
  CHECK(Matrix::identity(f2, 3).rank() == 3);
  CHECK(Matrix(f2, 2, 2, {1, 1, 1, 1}).rank() == 1);
  CHECK(Matrix(Field::make(3), 4, 2).rank() == 0);
  CHECK(Matrix(Field::make(3), 3, 3, {1, 2, 0, 2, 1, 0, 0, 0, 1}).rank() == 2);
}

TEST_CASE("span") {
  auto f2 = Field::gf2();
  auto s = Subspace::span(f2, 3, {e(3, 0), e(3, 0)});
  CHECK(s.dim() == 1);
  CHECK(s == Subspace::span(f2, 3, {e(3, 0)}));
  CHECK(Subspace::span(f2, 3, {}).dim() == 0);
  CHECK(Subspace::span(f2, 3, {}) == Subspace::zero(f2, 3));
  CHECK(Subspace::span(f2, 2, {e(2, 0), Vector{1, 1}}) == Subspace::full(f2, 2));
  CHECK_THROWS_AS(Subspace::span(f2, 3, {e(3, 0), e(2, 0)}), DimensionMismatch);
}

TEST_CASE("intersection and sum") {
  auto f2 = Field::gf2();
  const auto u = Subspace::span(f2, 2, {e(2, 0)});
  const auto v = Subspace::span(f2, 2, {e(2, 1)});
  CHECK(intersect(u, v).is_zero());
  CHECK(intersect(u, u) == u);
  CHECK(sum(u, v) == Subspace::full(f2, 2));

  // <e1,e2> ∩ <e2,e3> against explicit enumeration of GF(2)^3.
  const std::vector<Vector> g1{e(3, 0), e(3, 1)}, g2{e(3, 1), e(3, 2)};
  const auto s1 = brute_span(*f2, 3, g1), s2 = brute_span(*f2, 3, g2);
  std::vector<Vector> common;
  for (const auto& x : all_vectors(*f2, 3)) {
    if (s1.count(x) && s2.count(x)) common.push_back(x);
  }
  REQUIRE(common.size() == 2);
  const auto got = intersect(Subspace::span(f2, 3, g1), Subspace::span(f2, 3, g2));
  CHECK(got == Subspace::span(f2, 3, common));
  CHECK(got == Subspace::span(f2, 3, {e(3, 1)}));

  CHECK_THROWS_AS(intersect(u, Subspace::zero(f2, 3)), DimensionMismatch);
  CHECK_THROWS_AS(sum(u, Subspace::zero(Field::make(3), 2)), DimensionMismatch);
}

TEST_CASE("canonical form and modularity on random subspaces") {
  auto g = linwidth::testing::rng(7);
  for (unsigned p : {2u, 3u}) {
    auto F = Field::make(p);
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t n = 1 + g() % 5;
      std::vector<Vector> a, b;
      for (std::size_t i = 0, c = g() % 4; i < c; ++i) a.push_back(linwidth::testing::random_vector(g, *F, n));
      for (std::size_t i = 0, c = g() % 4; i < c; ++i) b.push_back(linwidth::testing::random_vector(g, *F, n));
      const auto u = Subspace::span(F, n, a);
      const auto v = Subspace::span(F, n, b);
      CHECK(u.dim() + v.dim() == sum(u, v).dim() + intersect(u, v).dim());

      // Same span from a shuffled, redundant generating set.
      std::vector<Vector> a2 = a;
      if (a.size() >= 2) a2.push_back(add(*F, a[0], a[1]));
      std::shuffle(a2.begin(), a2.end(), g);
      CHECK(Subspace::span(F, n, a2) == u);

      // Membership agrees with the explicit span.
      const auto explicit_u = brute_span(*F, n, a);
      CHECK(explicit_u.size() == u.elements().size());
      for (const auto& x : u.elements()) CHECK(explicit_u.count(x) == 1);
    }
  }
}

TEST_CASE("quotient map has kernel exactly c") {
  auto f2 = Field::gf2();
  SUBCASE("c = {0} is injective") {
    auto q = quotient_map(3, Subspace::zero(f2, 3));
    CHECK(q.out_dim() == 3);
    CHECK(q.kernel().is_zero());
  }
  SUBCASE("c = full maps to the zero space") {
    auto q = quotient_map(3, Subspace::full(f2, 3));
    CHECK(q.out_dim() == 0);
  }
  SUBCASE("c = <e2> in GF(2)^3") {
    auto c = Subspace::span(f2, 3, {e(3, 1)});
    auto q = quotient_map(3, c);
    CHECK(q.out_dim() == 2);
    CHECK(q(e(3, 0)) != q(e(3, 2)));
    CHECK(is_zero(q(e(3, 1))));
    const auto cset = brute_span(*f2, 3, {e(3, 1)});
    for (const auto& x : all_vectors(*f2, 3)) {
      CHECK(is_zero(q(x)) == (cset.count(x) == 1));
    }
  }
  SUBCASE("exhaustive over ambient <= 4, GF(2) and GF(3)") {
    auto g = linwidth::testing::rng(11);
    for (unsigned p : {2u, 3u}) {
      auto F = Field::make(p);
      for (std::size_t n = 1; n <= (p == 2 ? 4u : 3u); ++n) {
        const auto all = all_vectors(*F, n);
        for (int trial = 0; trial < 6; ++trial) {
          std::vector<Vector> gens;
          for (std::size_t i = 0, cnt = g() % (n + 1); i < cnt; ++i) gens.push_back(all[g() % all.size()]);
          const auto c = Subspace::span(F, n, gens);
          const auto cset = brute_span(*F, n, gens);
          const auto q = quotient_map(n, c);
          CHECK(q.out_dim() == n - c.dim());
          CHECK(q.matrix().rank() == n - c.dim());
          std::vector<Vector> images;
          for (const auto& x : all) images.push_back(q(x));
          for (std::size_t i = 0; i < all.size(); ++i) {
            for (std::size_t j = 0; j < all.size(); ++j) {
              const bool same = images[i] == images[j];
              CHECK(same == (cset.count(subtract(*F, all[i], all[j])) == 1));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("matrix text format") {
  const auto m = parse_matrix("# U24 over GF(3)\nfield 3 1\n2 4\n1 0 1 1\n0 1 1 2\n");
  CHECK(m.rows() == 2);
  CHECK(m.cols() == 4);
  CHECK(m(1, 3) == 2);
  CHECK(parse_matrix(format_matrix(m)) == m);

  const auto gf4 = parse_matrix("field 2 2 1 1 1\n1 2\n3 2\n");
  CHECK(gf4.field()->order() == 4);

  auto message = [](const std::string& text) {
    try {
      parse_matrix(text);
    } catch (const InputError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message("field 3 1\n2 2\n1 0\n0 x\n") == "line 4, column 3: expected non-negative integer for matrix entry, found 'x'");
  CHECK(message("field 3 1\n1 2\n1 7\n") == "line 3, column 3: entry 7 outside GF(3)");
  CHECK(message("field 3 1\n2 2\n1 0\n") == "line 4, column 1: matrix has fewer entries than rows*cols");
  CHECK(message("feld 3 1\n") == "line 1, column 1: expected 'field', found 'feld'");
}
