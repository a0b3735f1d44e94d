#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace blocklat {

/// A finite poset on indices 0..N-1 carrying its full ⊑ matrix.
class Poset {
public:
  Poset() = default;

  /// Validates reflexivity, antisymmetry and transitivity of `leq`.
  Poset(std::vector<std::string> labels, std::vector<std::vector<bool>> leq)
      : labels_(std::move(labels)), leq_(std::move(leq)) {
    const std::size_t n = leq_.size();
    if (labels_.size() != n) throw InvalidArgument("poset label count does not match relation size");
    for (const auto& row : leq_)
      if (row.size() != n) throw InvalidArgument("poset relation is not square");
    for (std::size_t i = 0; i < n; ++i) {
      if (!leq_[i][i]) throw InvalidArgument("poset relation is not reflexive");
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j && leq_[i][j] && leq_[j][i]) throw InvalidArgument("poset relation is not antisymmetric");
        for (std::size_t k = 0; k < n; ++k)
          if (leq_[i][j] && leq_[j][k] && !leq_[i][k]) throw InvalidArgument("poset relation is not transitive");
      }
    }
  }

  /// Reflexive-transitive closure of cover pairs (lower, upper). Throws on a cycle.
  static Poset from_covers(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& covers,
                           std::vector<std::string> labels = {}) {
    if (labels.empty())
      for (std::size_t i = 0; i < n; ++i) labels.push_back("m" + std::to_string(i + 1));
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) leq[i][i] = true;
    for (auto [a, b] : covers) {
      if (a >= n || b >= n) throw InvalidArgument("cover refers to an unknown element");
      if (a == b) throw InvalidArgument("cycle detected in cover relation");
      leq[a][b] = true;
    }
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        if (leq[i][k])
          for (std::size_t j = 0; j < n; ++j)
            if (leq[k][j]) leq[i][j] = true;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (leq[i][j] && leq[j][i]) throw InvalidArgument("cycle detected in cover relation");
    return Poset(std::move(labels), std::move(leq));
  }

  static Poset antichain(std::size_t n) { return from_covers(n, {}); }

  /// m1 ⊏ m2 ⊏ ... ⊏ mn.
  static Poset chain(std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> c;
    for (std::size_t i = 0; i + 1 < n; ++i) c.emplace_back(i, i + 1);
    return from_covers(n, c);
  }

  std::size_t size() const noexcept { return leq_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  bool leq(std::size_t i, std::size_t j) const { return leq_[i][j]; }
  bool less(std::size_t i, std::size_t j) const { return i != j && leq_[i][j]; }
  bool comparable(std::size_t i, std::size_t j) const { return leq_[i][j] || leq_[j][i]; }
  const std::vector<std::vector<bool>>& matrix() const noexcept { return leq_; }

  std::size_t index_of(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw InvalidArgument("unknown poset element '" + label + "'");
    return static_cast<std::size_t>(it - labels_.begin());
  }

  /// A(i) = { j : m_i ⊏ m_j }.
  std::vector<std::size_t> ancestors(std::size_t i) const { return collect([&](std::size_t j) { return less(i, j); }); }
  /// A[i] = A(i) ∪ {i}.
  std::vector<std::size_t> ancestors_weak(std::size_t i) const {
    return collect([&](std::size_t j) { return leq(i, j); });
  }
  /// D(i) = { j : m_j ⊏ m_i }.
  std::vector<std::size_t> descendants(std::size_t i) const {
    return collect([&](std::size_t j) { return less(j, i); });
  }
  /// D[i] = D(i) ∪ {i}.
  std::vector<std::size_t> descendants_weak(std::size_t i) const {
    return collect([&](std::size_t j) { return leq(j, i); });
  }

  bool is_minimal(std::size_t i) const { return descendants(i).empty(); }

  /// Covering pairs (i, j): i ⊏ j with nothing strictly between.
  std::vector<std::pair<std::size_t, std::size_t>> covers() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j) {
        if (!less(i, j)) continue;
        bool cover = true;
        for (std::size_t k = 0; k < size() && cover; ++k)
          if (less(i, k) && less(k, j)) cover = false;
        if (cover) out.emplace_back(i, j);
      }
    return out;
  }

  bool is_downset(const std::vector<std::size_t>& set) const {
    std::vector<bool> in(size(), false);
    for (auto i : set) in[i] = true;
    for (auto i : set)
      for (std::size_t j = 0; j < size(); ++j)
        if (leq(j, i) && !in[j]) return false;
    return true;
  }

  /// Induced subposet on `keep` (in the given order).
  Poset restrict_to(const std::vector<std::size_t>& keep) const {
    std::vector<std::string> labels;
    std::vector<std::vector<bool>> leq(keep.size(), std::vector<bool>(keep.size()));
    for (std::size_t a = 0; a < keep.size(); ++a) {
      labels.push_back(labels_[keep[a]]);
      for (std::size_t b = 0; b < keep.size(); ++b) leq[a][b] = leq_[keep[a]][keep[b]];
    }
    return Poset(std::move(labels), std::move(leq));
  }

  friend bool operator==(const Poset& a, const Poset& b) { return a.leq_ == b.leq_; }

private:
  template <class F>
  std::vector<std::size_t> collect(F f) const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < size(); ++j)
      if (f(j)) out.push_back(j);
    return out;
  }

  std::vector<std::string> labels_;
  std::vector<std::vector<bool>> leq_;
};

/// All down-sets, ordered by size then lexicographically. Includes ∅ and the whole set.
inline std::vector<std::vector<std::size_t>> downsets(const Poset& p, std::size_t cap = Limits{}.poset_size) {
  const std::size_t n = p.size();
  if (n > cap) throw CapExceeded("poset size for down-set enumeration", cap);
  std::vector<std::uint32_t> below(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (p.leq(j, i)) below[i] |= 1u << j;
  std::vector<std::vector<std::size_t>> out;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      if (((mask >> i) & 1u) && (below[i] & ~mask)) ok = false;
    if (!ok) continue;
    std::vector<std::size_t> d;
    for (std::size_t i = 0; i < n; ++i)
      if ((mask >> i) & 1u) d.push_back(i);
    out.push_back(std::move(d));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

/// All total orders extending the poset, each listed bottom to top.
inline std::vector<std::vector<std::size_t>> linear_extensions(const Poset& p,
                                                               std::size_t cap = Limits{}.linear_extensions) {
  const std::size_t n = p.size();
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> order;
  std::vector<bool> placed(n, false);
  auto rec = [&](auto& self) -> void {
    if (order.size() == n) {
      if (out.size() >= cap) throw CapExceeded("linear extension count", cap);
      out.push_back(order);
      return;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (placed[i]) continue;
      bool minimal = true;
      for (std::size_t j = 0; j < n && minimal; ++j)
        if (!placed[j] && p.less(j, i)) minimal = false;
      if (!minimal) continue;
      placed[i] = true;
      order.push_back(i);
      self(self);
      order.pop_back();
      placed[i] = false;
    }
  };
  rec(rec);
  return out;
}

/// The poset whose ⊑ is the given total order (bottom to top).
inline Poset total_order(const std::vector<std::string>& labels, const std::vector<std::size_t>& order) {
  const std::size_t n = order.size();
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) leq[order[a]][order[b]] = true;
  return Poset(labels, std::move(leq));
}

/// Intersection of two partial orders on the same ground set.
inline Poset intersect(const Poset& a, const Poset& b) {
  if (a.size() != b.size()) throw InvalidArgument("posets have different ground sets");
  std::vector<std::vector<bool>> leq(a.size(), std::vector<bool>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) leq[i][j] = a.leq(i, j) && b.leq(i, j);
  return Poset(a.labels(), std::move(leq));
}

/// Whether ⊑_a ⊆ ⊑_b as sets of pairs.
inline bool included_in(const Poset& a, const Poset& b) {
  if (a.size() != b.size()) throw InvalidArgument("posets have different ground sets");
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (a.leq(i, j) && !b.leq(i, j)) return false;
  return true;
}

/// Whether the two posets are isomorphic (brute force over bijections; small N only).
inline bool isomorphic(const Poset& a, const Poset& b) {
  if (a.size() != b.size()) return false;
  std::vector<std::size_t> perm(a.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  do {
    bool ok = true;
    for (std::size_t i = 0; i < a.size() && ok; ++i)
      for (std::size_t j = 0; j < a.size() && ok; ++j)
        if (a.leq(i, j) != b.leq(perm[i], perm[j])) ok = false;
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace blocklat
