#pragma once

// Subgroup enumeration for small groups, by explicit multiplication table.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <unordered_set>
#include <vector>

#include "error.hpp"
#include "perm.hpp"

namespace blocklat {

/// Fixed-width bit set over the elements of a group table.
class ElementSet {
public:
  ElementSet() = default;
  explicit ElementSet(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  std::size_t universe() const noexcept { return n_; }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool subset_of(const ElementSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }
  ElementSet operator&(const ElementSet& o) const {
    ElementSet r = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= o.words_[i];
    return r;
  }
  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n_; ++i)
      if (test(i)) out.push_back(i);
    return out;
  }
  friend bool operator==(const ElementSet&, const ElementSet&) = default;

  std::size_t hash() const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (auto w : words_) h = (h ^ w) * 0x100000001b3ull;
    return h;
  }

private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

struct ElementSetHash {
  std::size_t operator()(const ElementSet& s) const noexcept { return s.hash(); }
};

/// Multiplication table of a permutation group, indexed by position in its element store.
class GroupTable {
public:
  explicit GroupTable(const PermGroup& g, std::size_t cap = Limits{}.subgroup_order) : group_(g) {
    const auto& els = g.elements();
    n_ = els.size();
    if (n_ > cap) throw CapExceeded("group order for subgroup enumeration", cap);
    mul_.resize(n_ * n_);
    inv_.resize(n_);
    std::vector<Point> prod(g.degree());
    for (std::size_t a = 0; a < n_; ++a) {
      const auto pa = els.raw(a);
      for (std::size_t b = 0; b < n_; ++b) {
        const auto pb = els.raw(b);
        for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = pb[pa[i]];
        mul_[a * n_ + b] = static_cast<std::uint32_t>(*els.find(std::span<const Point>(prod)));
      }
    }
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < n_; ++b)
        if (mul_[a * n_ + b] == identity()) inv_[a] = static_cast<std::uint32_t>(b);
  }

  std::size_t order() const noexcept { return n_; }
  std::size_t identity() const { return 0; }  // BFS enumeration stores the identity first
  std::size_t mul(std::size_t a, std::size_t b) const { return mul_[a * n_ + b]; }
  std::size_t inverse(std::size_t a) const { return inv_[a]; }
  const PermGroup& group() const noexcept { return group_; }
  Permutation element(std::size_t i) const { return group_.elements().element(i); }
  std::size_t index_of(const Permutation& p) const {
    auto i = group_.elements().find(p);
    if (!i) throw InvalidArgument("permutation is not a group element");
    return *i;
  }

  /// Subgroup generated by a set of element indices.
  ElementSet generated(const std::vector<std::size_t>& gens) const {
    ElementSet s(n_);
    std::vector<std::size_t> queue{identity()};
    s.set(identity());
    for (std::size_t q = 0; q < queue.size(); ++q)
      for (auto g : gens) {
        const auto x = mul(queue[q], g);
        if (!s.test(x)) {
          s.set(x);
          queue.push_back(x);
        }
      }
    return s;
  }

  /// The product set HK.
  ElementSet product(const ElementSet& h, const ElementSet& k) const {
    ElementSet s(n_);
    const auto hm = h.members(), km = k.members();
    for (auto a : hm)
      for (auto b : km) s.set(mul(a, b));
    return s;
  }

  bool permute(const ElementSet& h, const ElementSet& k) const { return product(h, k) == product(k, h); }

private:
  PermGroup group_;
  std::size_t n_ = 0;
  std::vector<std::uint32_t> mul_;
  std::vector<std::uint32_t> inv_;
};

/// Every subgroup, as element sets sorted by order. Each subgroup is reached as a
/// join of cyclic subgroups, grown one cyclic subgroup at a time.
inline std::vector<ElementSet> all_subgroups(const GroupTable& t, std::size_t cap = Limits{}.lattice) {
  std::vector<ElementSet> cyclic;
  std::vector<std::size_t> cyclic_gen;
  std::unordered_set<ElementSet, ElementSetHash> seen;
  for (std::size_t g = 0; g < t.order(); ++g) {
    auto c = t.generated({g});
    if (seen.insert(c).second) {
      cyclic.push_back(c);
      cyclic_gen.push_back(g);
    }
  }
  std::vector<ElementSet> all = cyclic;
  std::vector<std::vector<std::size_t>> gens_of;
  for (auto g : cyclic_gen) gens_of.push_back({g});
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t c = 0; c < cyclic.size(); ++c) {
      if (cyclic[c].subset_of(all[i])) continue;
      auto gens = gens_of[i];
      gens.push_back(cyclic_gen[c]);
      auto j = t.generated(gens);
      if (seen.insert(j).second) {
        all.push_back(std::move(j));
        gens_of.push_back(std::move(gens));
        if (all.size() > cap) throw CapExceeded("subgroup count", cap);
      }
    }
  }
  std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.count() < b.count(); });
  return all;
}

/// First pair of subgroups with HK ≠ KH, scanning smaller subgroups first.
inline std::optional<std::pair<std::size_t, std::size_t>> first_non_permuting_pair(const GroupTable& t,
                                                                                   const std::vector<ElementSet>& subs) {
  for (std::size_t a = 0; a < subs.size(); ++a)
    for (std::size_t b = a + 1; b < subs.size(); ++b) {
      if (subs[a].subset_of(subs[b]) || subs[b].subset_of(subs[a])) continue;
      if (!t.permute(subs[a], subs[b])) return std::pair{a, b};
    }
  return std::nullopt;
}

/// Whether all subgroups pairwise permute (HK = KH).
inline bool is_quasihamiltonian(const PermGroup& g, std::size_t cap = Limits{}.subgroup_order) {
  const GroupTable t(g, cap);
  return !first_non_permuting_pair(t, all_subgroups(t));
}

}  // namespace blocklat
