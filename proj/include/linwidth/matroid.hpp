// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "linwidth/connfn.hpp"
#include "linwidth/ffla.hpp"

namespace linwidth {

/// Finite labeled family of vectors in GF(q)^n; represents the vector
/// matroid whose elements are the labels. Vectors may repeat, labels may not.
class Configuration {
 public:
  Configuration() = default;
  Configuration(FieldPtr field, std::size_t ambient, std::vector<std::string> labels,
                std::vector<Vector> vectors);
  /// Columns of `m` become the elements.
  static Configuration from_matrix(const Matrix& m, std::vector<std::string> labels);

  const FieldPtr& field() const { return field_; }
  std::size_t ambient() const { return ambient_; }
  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<Vector>& vectors() const { return vectors_; }
  const Vector& vector(std::size_t i) const { return vectors_[i]; }
  Mask ground() const { return full_mask(size()); }

  /// Throws InputError for labels that are not present.
  std::size_t index_of(const std::string& label) const;
  Mask mask_of(const std::vector<std::string>& labels) const;
  std::vector<std::string> labels_of(Mask m) const;

  Subspace span(Mask m) const;
  std::vector<Vector> vectors_of(Mask m) const;

  /// Elements in `keep`, in their original order.
  Configuration restrict(Mask keep) const;
  /// phi(A): same labels, every vector mapped.
  Configuration map(const LinearMap& phi) const;
  Matrix matrix() const;

  bool operator==(const Configuration& o) const {
    return same_field(field_, o.field_) && ambient_ == o.ambient_ && labels_ == o.labels_ && vectors_ == o.vectors_;
  }

 private:
  FieldPtr field_;
  std::size_t ambient_ = 0;
  std::vector<std::string> labels_;
  std::vector<Vector> vectors_;
};

int rank_of(const Configuration& a, Mask x);
/// r(X) + r(E - X) - r(E).
int lambda(const Configuration& a, Mask x);
/// <X> ∩ <E - X>.
Subspace boundary(const Configuration& a, Mask x);

/// Ranks of all 2^n subsets, built incrementally.
std::vector<int> rank_table(const Configuration& a);
ConnectivityFunction connectivity(const Configuration& a);

struct MinorSpec {
  Mask contract = 0;
  Mask remove = 0;
};

/// M \ D / C as a configuration: drop D, then push the remaining vectors
/// through the quotient map by <C>. Labels are kept.
Configuration minor(const Configuration& a, const MinorSpec& spec);

/// r(E - D) = r(E).
bool is_coindependent(const Configuration& a, Mask d);

struct ConnMinorReport {
  int lambda_minor = 0;
  int lambda_full = 0;
  bool leq = true;
  bool equality = true;
  bool predicted_equality = true;
  bool consistent() const { return leq && equality == predicted_equality; }
};

/// Compares lambda of X in M \ D / C with lambda in M and evaluates the
/// rank criterion for equality. X, C, D must be pairwise disjoint.
ConnMinorReport connminor_check(const Configuration& a, Mask x, Mask c, Mask d);

/// Isomorphism-invariant fingerprint: the lexicographically least
/// independence bit-string over element orderings (2^n characters '0'/'1').
/// Orderings are restricted to those compatible with an invariant-based
/// element partition. Requires size() <= 8.
std::string canonical_fingerprint(const Configuration& a);

/// Matrix format followed by an optional line `labels l1 ... ln`; default
/// labels are e1..en.
Configuration parse_configuration(const std::string& text);
std::string format_configuration(const Configuration& a);

}  // namespace linwidth
