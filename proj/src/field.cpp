// SPDX-License-Identifier: Apache-2.0
#include "linwidth/field.hpp"

#include <sstream>

#include "linwidth/errors.hpp"

namespace linwidth {

namespace {

// Remainder of a modulo b over GF(p); both monic-agnostic, b non-zero
// leading coefficient. Coefficient vectors are constant term first.
std::vector<unsigned> poly_mod(std::vector<unsigned> a, const std::vector<unsigned>& b, unsigned p) {
  const std::size_t db = b.size() - 1;
  unsigned lead_inv = 1;
  while ((lead_inv * b[db]) % p != 1) ++lead_inv;
  for (std::size_t i = a.size(); i-- > db;) {
    const auto c = static_cast<unsigned>((std::uint64_t{a[i]} * lead_inv) % p);
    if (c == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) {
      const std::uint64_t sub = (std::uint64_t{c} * b[j]) % p;
      a[i - db + j] = static_cast<unsigned>((a[i - db + j] + p - sub) % p);
    }
  }
  a.resize(db);
  return a;
}

bool is_zero_poly(const std::vector<unsigned>& a) {
  for (unsigned c : a) {
    if (c != 0) return false;
  }
  return true;
}

}  // namespace

bool is_prime(unsigned p) {
  if (p < 2) return false;
  for (unsigned d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

bool is_irreducible(unsigned p, const std::vector<unsigned>& poly) {
  if (poly.size() < 2) return false;
  const std::size_t m = poly.size() - 1;
  if (poly[m] % p == 0) return false;
  if (m == 1) return true;
  for (std::size_t d = 1; d <= m / 2; ++d) {
    // Enumerate monic divisors of degree d.
    std::size_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::size_t code = 0; code < count; ++code) {
      std::vector<unsigned> div(d + 1, 0);
      std::size_t c = code;
      for (std::size_t i = 0; i < d; ++i) {
        div[i] = static_cast<unsigned>(c % p);
        c /= p;
      }
      div[d] = 1;
      if (is_zero_poly(poly_mod(poly, div, p))) return false;
    }
  }
  return true;
}

FieldPtr Field::make(FieldSpec spec) {
  if (!is_prime(spec.p)) {
    throw InputError("field characteristic " + std::to_string(spec.p) + " is not prime");
  }
  if (spec.m == 0) throw InputError("field degree must be at least 1");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < spec.m; ++i) {
    q *= spec.p;
    if (q > kMaxOrder) throw InputError("field order exceeds 2^16");
  }
  if (spec.modulus.empty()) {
    if (spec.m == 1) {
      spec.modulus = {0, 1};
    } else {
      // Lexicographically least monic irreducible of degree m.
      for (std::uint64_t code = 0; code < q; ++code) {
        std::vector<unsigned> poly(spec.m + 1, 0);
        std::uint64_t c = code;
        for (unsigned i = 0; i < spec.m; ++i) {
          poly[i] = static_cast<unsigned>(c % spec.p);
          c /= spec.p;
        }
        poly[spec.m] = 1;
        if (is_irreducible(spec.p, poly)) {
          spec.modulus = poly;
          break;
        }
      }
    }
  }
  if (spec.modulus.size() != spec.m + 1) {
    throw InputError("reduction polynomial must have m+1 coefficients");
  }
  for (unsigned c : spec.modulus) {
    if (c >= spec.p) throw InputError("reduction polynomial coefficient out of range");
  }
  if (spec.modulus[spec.m] != 1) throw InputError("reduction polynomial must be monic");
  if (!is_irreducible(spec.p, spec.modulus)) {
    throw InputError("reduction polynomial is reducible over GF(" + std::to_string(spec.p) + ")");
  }
  return FieldPtr(new Field(std::move(spec)));
}

const FieldPtr& Field::gf2() {
  static const FieldPtr f = make(2, 1);
  return f;
}

Field::Field(FieldSpec spec) : spec_(std::move(spec)) {
  q_ = 1;
  for (unsigned i = 0; i < spec_.m; ++i) q_ *= spec_.p;

  neg_table_.resize(q_);
  for (Scalar a = 0; a < q_; ++a) {
    Scalar r = 0;
    Scalar x = a;
    Scalar place = 1;
    for (unsigned i = 0; i < spec_.m; ++i) {
      const Scalar d = x % spec_.p;
      x /= spec_.p;
      r += ((spec_.p - d) % spec_.p) * place;
      place *= spec_.p;
    }
    neg_table_[a] = r;
  }
  if (spec_.p != 2 && q_ <= 256) {
    add_table_.resize(std::size_t{q_} * q_);
    for (Scalar a = 0; a < q_; ++a) {
      for (Scalar b = 0; b < q_; ++b) add_table_[a * q_ + b] = add_slow(a, b);
    }
  }

  // Find a primitive element and build log/exp tables.
  log_.assign(q_, 0);
  exp_.assign(2 * std::size_t{q_}, 0);
  if (q_ == 2) {
    exp_[0] = exp_[1] = 1;
    log_[1] = 0;
    return;
  }
  for (Scalar gen = 2; gen < q_; ++gen) {
    Scalar x = 1;
    std::uint32_t order = 0;
    do {
      x = mul_poly(x, gen);
      ++order;
    } while (x != 1 && order < q_);
    if (order != q_ - 1) continue;
    x = 1;
    for (std::uint32_t i = 0; i < q_ - 1; ++i) {
      exp_[i] = x;
      exp_[i + q_ - 1] = x;
      log_[x] = i;
      x = mul_poly(x, gen);
    }
    return;
  }
  throw InvariantViolation("no primitive element found in " + name());
}

Scalar Field::add_slow(Scalar a, Scalar b) const {
  Scalar r = 0;
  Scalar place = 1;
  for (unsigned i = 0; i < spec_.m; ++i) {
    r += ((a % spec_.p + b % spec_.p) % spec_.p) * place;
    a /= spec_.p;
    b /= spec_.p;
    place *= spec_.p;
  }
  return r;
}

Scalar Field::mul_poly(Scalar a, Scalar b) const {
  const unsigned p = spec_.p;
  const unsigned m = spec_.m;
  std::vector<unsigned> da(m), db(m);
  for (unsigned i = 0; i < m; ++i) {
    da[i] = a % p;
    a /= p;
    db[i] = b % p;
    b /= p;
  }
  std::vector<unsigned> prod(2 * m - 1, 0);
  for (unsigned i = 0; i < m; ++i) {
    for (unsigned j = 0; j < m; ++j) {
      prod[i + j] = static_cast<unsigned>((prod[i + j] + std::uint64_t{da[i]} * db[j]) % p);
    }
  }
  if (m > 1) prod = poly_mod(prod, spec_.modulus, p);
  Scalar r = 0;
  for (unsigned i = m; i-- > 0;) r = r * p + prod[i];
  return r;
}

Scalar Field::inv(Scalar a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  if (q_ == 2) return 1;
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

std::string Field::name() const {
  std::ostringstream os;
  os << "GF(" << spec_.p;
  if (spec_.m > 1) os << "^" << spec_.m;
  os << ")";
  return os.str();
}

}  // namespace linwidth
