// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace linwidth {

/// Field elements are integers in [0, q); the base-p digits of an element are
/// the coefficients of its polynomial representative (low degree first).
using Scalar = std::uint32_t;

/// Description of GF(p^m): characteristic, degree and a monic reduction
/// polynomial given as m+1 coefficients, constant term first.
struct FieldSpec {
  unsigned p = 2;
  unsigned m = 1;
  std::vector<unsigned> modulus;

  bool operator==(const FieldSpec&) const = default;
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// GF(p^m) with q <= 2^16, multiplication through log/exp tables.
class Field {
 public:
  static constexpr unsigned kMaxOrder = 1u << 16;

  /// Validates the spec (prime p, monic irreducible modulus, q within range).
  /// An empty modulus selects the lexicographically least monic irreducible
  /// polynomial of degree m.
  static FieldPtr make(FieldSpec spec);
  static FieldPtr make(unsigned p, unsigned m = 1) { return make(FieldSpec{p, m, {}}); }
  /// Cached GF(2).
  static const FieldPtr& gf2();

  const FieldSpec& spec() const { return spec_; }
  unsigned characteristic() const { return spec_.p; }
  unsigned degree() const { return spec_.m; }
  unsigned order() const { return q_; }
  std::string name() const;

  bool contains(std::uint64_t x) const { return x < q_; }

  Scalar add(Scalar a, Scalar b) const {
    if (spec_.p == 2) return a ^ b;
    if (!add_table_.empty()) return add_table_[a * q_ + b];
    return add_slow(a, b);
  }
  Scalar neg(Scalar a) const { return neg_table_[a]; }
  Scalar sub(Scalar a, Scalar b) const { return add(a, neg_table_[b]); }
  Scalar mul(Scalar a, Scalar b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  /// Multiplicative inverse; a must be non-zero.
  Scalar inv(Scalar a) const;
  Scalar div(Scalar a, Scalar b) const { return mul(a, inv(b)); }

  bool operator==(const Field& other) const { return spec_ == other.spec_; }

 private:
  explicit Field(FieldSpec spec);
  Scalar add_slow(Scalar a, Scalar b) const;
  Scalar mul_poly(Scalar a, Scalar b) const;

  FieldSpec spec_;
  unsigned q_ = 0;
  std::vector<Scalar> add_table_;
  std::vector<Scalar> neg_table_;
  std::vector<Scalar> exp_;
  std::vector<std::uint32_t> log_;
};

inline bool same_field(const FieldPtr& a, const FieldPtr& b) {
  return a == b || (a && b && *a == *b);
}

bool is_prime(unsigned p);

/// True iff the monic polynomial (constant term first) has no proper factor
/// over GF(p). Brute force over monic divisors of degree <= m/2.
bool is_irreducible(unsigned p, const std::vector<unsigned>& poly);

}  // namespace linwidth
