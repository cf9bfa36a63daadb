// SPDX-License-Identifier: Apache-2.0
#include "linwidth/matroid.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "linwidth/errors.hpp"

namespace linwidth {

Configuration::Configuration(FieldPtr field, std::size_t ambient, std::vector<std::string> labels,
                             std::vector<Vector> vectors)
    : field_(std::move(field)), ambient_(ambient), labels_(std::move(labels)), vectors_(std::move(vectors)) {
  if (labels_.size() != vectors_.size()) throw DimensionMismatch("one label per vector required");
  if (labels_.size() > ConnectivityFunction::kMaxGround) throw BudgetExceeded("configuration too large");
  std::set<std::string> seen;
  for (const auto& l : labels_) {
    if (l.empty()) throw InputError("empty label");
    if (!seen.insert(l).second) throw InputError("duplicate label '" + l + "'");
  }
  for (const auto& v : vectors_) {
    if (v.size() != ambient_) throw DimensionMismatch("vector length differs from ambient dimension");
    for (auto x : v) {
      if (!field_->contains(x)) throw InputError("vector entry outside " + field_->name());
    }
  }
}

Configuration Configuration::from_matrix(const Matrix& m, std::vector<std::string> labels) {
  std::vector<Vector> cols;
  for (std::size_t c = 0; c < m.cols(); ++c) cols.push_back(m.column(c));
  return Configuration(m.field(), m.rows(), std::move(labels), std::move(cols));
}

std::size_t Configuration::index_of(const std::string& label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw InputError("unknown label '" + label + "'");
  return static_cast<std::size_t>(it - labels_.begin());
}

Mask Configuration::mask_of(const std::vector<std::string>& labels) const {
  Mask m = 0;
  for (const auto& l : labels) m |= bit(index_of(l));
  return m;
}

std::vector<std::string> Configuration::labels_of(Mask m) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < size(); ++i) {
    if (m & bit(i)) out.push_back(labels_[i]);
  }
  return out;
}

std::vector<Vector> Configuration::vectors_of(Mask m) const {
  std::vector<Vector> out;
  for (std::size_t i = 0; i < size(); ++i) {
    if (m & bit(i)) out.push_back(vectors_[i]);
  }
  return out;
}

Subspace Configuration::span(Mask m) const { return Subspace::span(field_, ambient_, vectors_of(m)); }

Configuration Configuration::restrict(Mask keep) const {
  return Configuration(field_, ambient_, labels_of(keep), vectors_of(keep));
}

Configuration Configuration::map(const LinearMap& phi) const {
  if (phi.in_dim() != ambient_) throw DimensionMismatch("map domain differs from ambient dimension");
  std::vector<Vector> out;
  for (const auto& v : vectors_) out.push_back(phi(v));
  return Configuration(field_, phi.out_dim(), labels_, std::move(out));
}

Matrix Configuration::matrix() const { return Matrix::from_columns(field_, ambient_, vectors_); }

int rank_of(const Configuration& a, Mask x) {
  if (x & ~a.ground()) throw InputError("label set outside the configuration");
  return static_cast<int>(a.span(x).dim());
}

int lambda(const Configuration& a, Mask x) {
  const Mask g = a.ground();
  return rank_of(a, x) + rank_of(a, g & ~x) - rank_of(a, g);
}

Subspace boundary(const Configuration& a, Mask x) {
  if (x & ~a.ground()) throw InputError("label set outside the configuration");
  return intersect(a.span(x), a.span(a.ground() & ~x));
}

std::vector<int> rank_table(const Configuration& a) {
  const std::size_t n = a.size();
  std::vector<Subspace> spans(std::size_t{1} << n);
  std::vector<int> out(spans.size(), 0);
  spans[0] = Subspace::zero(a.field(), a.ambient());
  for (Mask m = 1; m < spans.size(); ++m) {
    const std::size_t top = 31 - static_cast<std::size_t>(__builtin_clz(m));
    const Subspace& prev = spans[m & ~bit(top)];
    if (prev.contains(a.vector(top))) {
      spans[m] = prev;
    } else {
      spans[m] = sum(prev, Subspace::span(a.field(), a.ambient(), {a.vector(top)}));
    }
    out[m] = static_cast<int>(spans[m].dim());
  }
  return out;
}

ConnectivityFunction connectivity(const Configuration& a) {
  const auto r = rank_table(a);
  const Mask g = a.ground();
  std::vector<int> table(r.size());
  for (Mask x = 0; x < r.size(); ++x) table[x] = r[x] + r[g & ~x] - r[g];
  return ConnectivityFunction::from_table(a.labels(), std::move(table));
}

Configuration minor(const Configuration& a, const MinorSpec& spec) {
  if (spec.contract & spec.remove) throw InputError("contract and delete sets overlap");
  if ((spec.contract | spec.remove) & ~a.ground()) throw InputError("minor sets outside the configuration");
  const Mask keep = a.ground() & ~(spec.contract | spec.remove);
  const auto q = quotient_map(a.span(spec.contract));
  return a.restrict(keep).map(q);
}

bool is_coindependent(const Configuration& a, Mask d) {
  const Mask g = a.ground();
  return rank_of(a, g & ~d) == rank_of(a, g);
}

ConnMinorReport connminor_check(const Configuration& a, Mask x, Mask c, Mask d) {
  if ((x & c) || (x & d) || (c & d)) throw InputError("X, C and D must be pairwise disjoint");
  const Mask g = a.ground();
  if ((x | c | d) & ~g) throw InputError("label set outside the configuration");
  const Configuration n = minor(a, {c, d});
  ConnMinorReport r;
  r.lambda_full = lambda(a, x);
  r.lambda_minor = lambda(n, n.mask_of(a.labels_of(x)));
  r.leq = r.lambda_minor <= r.lambda_full;
  r.equality = r.lambda_minor == r.lambda_full;
  auto rk = [&](Mask m) { return rank_of(a, m); };
  r.predicted_equality = rk(x | c) == rk(x) + rk(c) && rk(g & ~x) + rk(g & ~d) == rk(g) + rk(g & ~(x | d));
  return r;
}

std::string canonical_fingerprint(const Configuration& a) {
  const std::size_t n = a.size();
  if (n > 8) throw BudgetExceeded("canonical fingerprint limited to 8 elements");
  const auto r = rank_table(a);
  const std::size_t count = r.size();
  auto independent = [&](Mask m) { return r[m] == popcount(m); };

  // Per-element invariant: number of independent sets of each size through e.
  std::vector<std::pair<std::vector<int>, std::size_t>> inv(n);
  for (std::size_t e = 0; e < n; ++e) {
    std::vector<int> counts(n + 1, 0);
    for (Mask m = 0; m < count; ++m) {
      if ((m & bit(e)) && independent(m)) ++counts[static_cast<std::size_t>(popcount(m))];
    }
    inv[e] = {counts, e};
  }
  std::sort(inv.begin(), inv.end());
  // order[pos] = element; permutations only inside runs of equal invariant.
  std::vector<std::size_t> order(n), run_start(n);
  for (std::size_t i = 0; i < n; ++i) {
    order[i] = inv[i].second;
    run_start[i] = (i > 0 && inv[i].first == inv[i - 1].first) ? run_start[i - 1] : i;
  }
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  for (std::size_t i = 0; i < n; ++i) {
    if (run_start[i] == i) runs.push_back({i, i + 1});
    else runs.back().second = i + 1;
  }
  for (auto [b, e] : runs) std::sort(order.begin() + b, order.begin() + e);

  std::string best;
  std::string cur(count, '0');
  while (true) {
    for (Mask pm = 0; pm < count; ++pm) {
      Mask m = 0;
      for (std::size_t p = 0; p < n; ++p) {
        if (pm & bit(p)) m |= bit(order[p]);
      }
      cur[pm] = independent(m) ? '1' : '0';
    }
    if (best.empty() || cur < best) best = cur;
    // Advance the mixed-radix odometer of per-run permutations.
    std::size_t k = 0;
    for (; k < runs.size(); ++k) {
      auto [b, e] = runs[k];
      if (std::next_permutation(order.begin() + b, order.begin() + e)) break;
    }
    if (k == runs.size()) break;
  }
  return std::to_string(n) + ":" + best;
}

Configuration parse_configuration(const std::string& text) {
  text::TokenStream ts(text);
  const Matrix m = parse_matrix(ts);
  std::vector<std::string> labels;
  if (!ts.done()) {
    const text::Token head = ts.peek();
    if (head.value != "labels") ts.fail(head, "expected 'labels', found '" + head.value + "'");
    ts.next();
    const auto line = head.line;
    while (!ts.done() && ts.peek().line == line) labels.push_back(ts.next().value);
    if (labels.size() != m.cols()) {
      ts.fail(head, "expected " + std::to_string(m.cols()) + " labels, found " + std::to_string(labels.size()));
    }
    if (!ts.done()) ts.fail(ts.peek(), "unexpected trailing token '" + ts.peek().value + "'");
  } else {
    for (std::size_t i = 0; i < m.cols(); ++i) labels.push_back("e" + std::to_string(i + 1));
  }
  try {
    return Configuration::from_matrix(m, std::move(labels));
  } catch (const InputError& e) {
    throw InputError(std::string("labels: ") + e.what());
  }
}

std::string format_configuration(const Configuration& a) {
  std::ostringstream os;
  os << format_matrix(a.matrix()) << "labels";
  for (const auto& l : a.labels()) os << " " << l;
  os << "\n";
  return os.str();
}

}  // namespace linwidth
