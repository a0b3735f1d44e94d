#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "error.hpp"

namespace blocklat {

using Point = std::uint32_t;

/// A partition of {0..n-1}, doubling as the equivalence relation "same block".
///
/// Blocks are numbered 0..k-1 in order of their least element, so two equal
/// partitions always have identical `block_of` arrays.
class Partition {
public:
  Partition() = default;

  /// Builds a partition from arbitrary per-point labels.
  explicit Partition(std::span<const std::uint32_t> labels) : block_of_(labels.size()) {
    std::unordered_map<std::uint32_t, std::uint32_t> renumber;
    renumber.reserve(labels.size());
    for (std::size_t p = 0; p < labels.size(); ++p) {
      auto [it, fresh] = renumber.try_emplace(labels[p], static_cast<std::uint32_t>(renumber.size()));
      block_of_[p] = it->second;
    }
    build_blocks(renumber.size());
  }

  explicit Partition(const std::vector<std::uint32_t>& labels)
      : Partition(std::span<const std::uint32_t>(labels)) {}

  static Partition discrete(std::size_t n) {
    std::vector<std::uint32_t> l(n);
    std::iota(l.begin(), l.end(), 0u);
    return Partition(l);
  }

  static Partition universal(std::size_t n) { return Partition(std::vector<std::uint32_t>(n, 0u)); }

  /// Throws InvalidArgument unless `blocks` are disjoint, nonempty and cover {0..n-1}.
  static Partition from_blocks(std::size_t n, const std::vector<std::vector<Point>>& blocks) {
    constexpr auto unset = static_cast<std::uint32_t>(-1);
    std::vector<std::uint32_t> l(n, unset);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      if (blocks[b].empty()) throw InvalidArgument("partition has an empty block");
      for (Point p : blocks[b]) {
        if (p >= n) throw InvalidArgument("point " + std::to_string(p) + " out of range");
        if (l[p] != unset) throw InvalidArgument("point " + std::to_string(p) + " in two blocks");
        l[p] = static_cast<std::uint32_t>(b);
      }
    }
    for (std::size_t p = 0; p < n; ++p)
      if (l[p] == unset) throw InvalidArgument("point " + std::to_string(p) + " not covered");
    return Partition(l);
  }

  std::size_t degree() const noexcept { return block_of_.size(); }
  std::size_t block_count() const noexcept { return blocks_.size(); }
  std::uint32_t block_of(Point p) const { return block_of_[p]; }
  const std::vector<std::uint32_t>& labels() const noexcept { return block_of_; }
  const std::vector<std::vector<Point>>& blocks() const noexcept { return blocks_; }
  const std::vector<Point>& block(std::size_t i) const { return blocks_[i]; }
  const std::vector<Point>& block_containing(Point p) const { return blocks_[block_of_[p]]; }

  bool same_block(Point a, Point b) const { return block_of_[a] == block_of_[b]; }
  bool is_discrete() const noexcept { return blocks_.size() == block_of_.size(); }
  bool is_universal() const noexcept { return blocks_.size() <= 1; }

  /// All blocks have the same size.
  bool is_uniform() const {
    return std::all_of(blocks_.begin(), blocks_.end(),
                       [&](const auto& b) { return b.size() == blocks_.front().size(); });
  }

  friend bool operator==(const Partition& a, const Partition& b) { return a.block_of_ == b.block_of_; }

  /// Canonical order: finer partitions (more blocks) first, then by labels.
  friend bool operator<(const Partition& a, const Partition& b) {
    if (a.blocks_.size() != b.blocks_.size()) return a.blocks_.size() > b.blocks_.size();
    return a.block_of_ < b.block_of_;
  }

  std::size_t hash() const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto v : block_of_) h = (h ^ v) * 1099511628211ull;
    return h;
  }

  /// Block sizes rendered compactly, e.g. "5x3" for five blocks of size three.
  std::string shape() const {
    if (blocks_.empty()) return "0";
    if (is_uniform()) return std::to_string(blocks_.size()) + "x" + std::to_string(blocks_.front().size());
    std::string s;
    for (const auto& b : blocks_) {
      if (!s.empty()) s += ",";
      s += std::to_string(b.size());
    }
    return s;
  }

private:
  void build_blocks(std::size_t k) {
    blocks_.assign(k, {});
    for (std::size_t p = 0; p < block_of_.size(); ++p) blocks_[block_of_[p]].push_back(static_cast<Point>(p));
  }

  std::vector<std::uint32_t> block_of_;
  std::vector<std::vector<Point>> blocks_;
};

struct PartitionHash {
  std::size_t operator()(const Partition& p) const noexcept { return p.hash(); }
};

namespace detail {

inline void require_same_degree(const Partition& a, const Partition& b) {
  if (a.degree() != b.degree()) throw DegreeMismatch(a.degree(), b.degree());
}

class UnionFind {
public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0u); }

  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  /// Returns false if already joined.
  bool unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

  std::vector<std::uint32_t> labels() {
    std::vector<std::uint32_t> l(parent_.size());
    for (std::uint32_t i = 0; i < parent_.size(); ++i) l[i] = find(i);
    return l;
  }

private:
  std::vector<std::uint32_t> parent_;
};

}  // namespace detail

/// Coarsest common refinement: non-empty intersections of blocks.
inline Partition meet(const Partition& a, const Partition& b) {
  detail::require_same_degree(a, b);
  std::vector<std::uint32_t> l(a.degree());
  const auto kb = static_cast<std::uint64_t>(b.block_count());
  std::unordered_map<std::uint64_t, std::uint32_t> pairs;
  pairs.reserve(a.degree());
  for (Point p = 0; p < a.degree(); ++p) {
    const std::uint64_t key = a.block_of(p) * kb + b.block_of(p);
    l[p] = pairs.try_emplace(key, static_cast<std::uint32_t>(pairs.size())).first->second;
  }
  return Partition(l);
}

/// Finest common coarsening.
inline Partition join(const Partition& a, const Partition& b) {
  detail::require_same_degree(a, b);
  detail::UnionFind uf(a.degree());
  for (const auto* part : {&a, &b})
    for (const auto& blk : part->blocks())
      for (std::size_t i = 1; i < blk.size(); ++i) uf.unite(blk[0], blk[i]);
  return Partition(uf.labels());
}

/// a ≼ b: every block of a lies inside a block of b.
inline bool refines(const Partition& a, const Partition& b) {
  detail::require_same_degree(a, b);
  for (const auto& blk : a.blocks())
    for (std::size_t i = 1; i < blk.size(); ++i)
      if (!b.same_block(blk[0], blk[i])) return false;
  return true;
}

/// Dense n×n boolean matrix.
class BinaryRelation {
public:
  static constexpr std::size_t max_degree = 4096;

  explicit BinaryRelation(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {
    if (n > max_degree) throw CapExceeded("relation degree", max_degree);
  }

  static BinaryRelation of(const Partition& p) {
    BinaryRelation r(p.degree());
    for (const auto& blk : p.blocks())
      for (Point x : blk)
        for (Point y : blk) r.set(x, y);
    return r;
  }

  std::size_t degree() const noexcept { return n_; }
  bool test(std::size_t i, std::size_t j) const { return (bits_[i * words_ + j / 64] >> (j % 64)) & 1u; }
  void set(std::size_t i, std::size_t j) { bits_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : bits_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  }

  /// Relational composition: (i,k) iff some j has (i,j) in *this and (j,k) in other.
  BinaryRelation then(const BinaryRelation& other) const {
    if (n_ != other.n_) throw DegreeMismatch(n_, other.n_);
    BinaryRelation r(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        if (test(i, j))
          for (std::size_t w = 0; w < words_; ++w) r.bits_[i * words_ + w] |= other.bits_[j * words_ + w];
    return r;
  }

  friend bool operator==(const BinaryRelation&, const BinaryRelation&) = default;

private:
  std::size_t n_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

/// The composite relation R_a ∘ R_b.
inline BinaryRelation compose_relations(const Partition& a, const Partition& b) {
  detail::require_same_degree(a, b);
  return BinaryRelation::of(a).then(BinaryRelation::of(b));
}

/// True iff R_a ∘ R_b = R_b ∘ R_a. Uses the block-intersection criterion: inside
/// each block of a ∨ b, every block of a meets every block of b.
inline bool commutes(const Partition& a, const Partition& b) {
  detail::require_same_degree(a, b);
  const Partition j = join(a, b);
  const auto kb = static_cast<std::uint64_t>(b.block_count());
  std::vector<std::size_t> a_blocks(j.block_count(), 0), b_blocks(j.block_count(), 0), hits(j.block_count(), 0);
  for (std::size_t i = 0; i < a.block_count(); ++i) ++a_blocks[j.block_of(a.block(i).front())];
  for (std::size_t i = 0; i < b.block_count(); ++i) ++b_blocks[j.block_of(b.block(i).front())];
  std::vector<std::uint64_t> seen;
  seen.reserve(a.degree());
  for (Point p = 0; p < a.degree(); ++p) seen.push_back(a.block_of(p) * kb + b.block_of(p));
  std::sort(seen.begin(), seen.end());
  seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
  for (auto key : seen) ++hits[j.block_of(a.block(key / kb).front())];
  for (std::size_t i = 0; i < j.block_count(); ++i)
    if (hits[i] != a_blocks[i] * b_blocks[i]) return false;
  return true;
}

}  // namespace blocklat

template <>
struct std::hash<blocklat::Partition> {
  std::size_t operator()(const blocklat::Partition& p) const noexcept { return p.hash(); }
};
