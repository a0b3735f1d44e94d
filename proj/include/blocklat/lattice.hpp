#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "error.hpp"
#include "partition.hpp"
#include "poset.hpp"

namespace blocklat {

/// A finite lattice given by its meet and join tables. Element order is arbitrary;
/// `bottom()` and `top()` are located from the tables.
class AbstractLattice {
public:
  AbstractLattice() = default;

  AbstractLattice(std::size_t k, std::vector<std::uint32_t> meet, std::vector<std::uint32_t> join)
      : k_(k), meet_(std::move(meet)), join_(std::move(join)) {
    if (meet_.size() != k * k || join_.size() != k * k) throw InvalidArgument("lattice tables have the wrong size");
    for (std::size_t i = 0; i < k_; ++i) {
      bool is_bottom = true, is_top = true;
      for (std::size_t j = 0; j < k_; ++j) {
        is_bottom = is_bottom && meet_[i * k_ + j] == i;
        is_top = is_top && join_[i * k_ + j] == i;
      }
      if (is_bottom) bottom_ = i;
      if (is_top) top_ = i;
    }
  }

  /// Builds the tables from a ≤ predicate, which must define a lattice.
  template <class Leq>
  static AbstractLattice from_order(std::size_t k, Leq leq) {
    std::vector<std::uint32_t> meet(k * k), join(k * k);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) {
        std::optional<std::size_t> glb, lub;
        for (std::size_t c = 0; c < k; ++c) {
          if (leq(c, a) && leq(c, b) && (!glb || leq(*glb, c))) glb = c;
          if (leq(a, c) && leq(b, c) && (!lub || leq(c, *lub))) lub = c;
        }
        if (!glb || !lub) throw InvalidArgument("order is not a lattice");
        meet[a * k + b] = static_cast<std::uint32_t>(*glb);
        join[a * k + b] = static_cast<std::uint32_t>(*lub);
      }
    return AbstractLattice(k, std::move(meet), std::move(join));
  }

  /// 0 < a < c < 1 and 0 < b < 1 with b incomparable to a and c. Elements: 0,a,b,c,1.
  static AbstractLattice pentagon() {
    static constexpr bool le[5][5] = {{1, 1, 1, 1, 1}, {0, 1, 0, 1, 1}, {0, 0, 1, 0, 1}, {0, 0, 0, 1, 1}, {0, 0, 0, 0, 1}};
    return from_order(5, [](std::size_t i, std::size_t j) { return le[i][j]; });
  }

  /// Three pairwise incomparable atoms. Elements: 0,x,y,z,1.
  static AbstractLattice diamond() {
    return from_order(5, [](std::size_t i, std::size_t j) { return i == j || i == 0 || j == 4; });
  }

  static AbstractLattice chain(std::size_t k) {
    return from_order(k, [](std::size_t i, std::size_t j) { return i <= j; });
  }

  /// Subsets of an n-set ordered by inclusion; element index is the bitmask.
  static AbstractLattice boolean(std::size_t n) {
    return from_order(std::size_t{1} << n, [](std::size_t i, std::size_t j) { return (i & ~j) == 0; });
  }

  std::size_t size() const noexcept { return k_; }
  std::size_t meet(std::size_t a, std::size_t b) const { return meet_[a * k_ + b]; }
  std::size_t join(std::size_t a, std::size_t b) const { return join_[a * k_ + b]; }
  bool leq(std::size_t a, std::size_t b) const { return meet(a, b) == a; }
  std::size_t bottom() const noexcept { return bottom_; }
  std::size_t top() const noexcept { return top_; }

  /// Checks the lattice axioms on all pairs and triples.
  bool is_valid() const {
    for (std::size_t a = 0; a < k_; ++a) {
      if (meet(a, a) != a || join(a, a) != a) return false;
      for (std::size_t b = 0; b < k_; ++b) {
        if (meet(a, b) != meet(b, a) || join(a, b) != join(b, a)) return false;
        if (meet(a, join(a, b)) != a || join(a, meet(a, b)) != a) return false;
        for (std::size_t c = 0; c < k_; ++c)
          if (meet(meet(a, b), c) != meet(a, meet(b, c)) || join(join(a, b), c) != join(a, join(b, c)))
            return false;
      }
    }
    return true;
  }

  /// (lower, upper) covering pairs.
  std::vector<std::pair<std::size_t, std::size_t>> covers() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t a = 0; a < k_; ++a)
      for (std::size_t b = 0; b < k_; ++b) {
        if (a == b || !leq(a, b)) continue;
        bool cover = true;
        for (std::size_t c = 0; c < k_ && cover; ++c)
          if (c != a && c != b && leq(a, c) && leq(c, b)) cover = false;
        if (cover) out.emplace_back(a, b);
      }
    return out;
  }

private:
  std::size_t k_ = 0;
  std::vector<std::uint32_t> meet_, join_;
  std::size_t bottom_ = 0, top_ = 0;
};

/// a ≤ c implies a ∨ (b ∧ c) = (a ∨ b) ∧ c, checked on all triples.
inline bool is_modular(const AbstractLattice& l) {
  const std::size_t k = l.size();
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t c = 0; c < k; ++c) {
      if (!l.leq(a, c)) continue;
      for (std::size_t b = 0; b < k; ++b)
        if (l.join(a, l.meet(b, c)) != l.meet(l.join(a, b), c)) return false;
    }
  return true;
}

/// a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c), checked on all triples.
inline bool is_distributive(const AbstractLattice& l) {
  const std::size_t k = l.size();
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      for (std::size_t c = b + 1; c < k; ++c)
        if (l.meet(a, l.join(b, c)) != l.join(l.meet(a, b), l.meet(a, c))) return false;
  return true;
}

enum class ForbiddenKind { pentagon, diamond };

/// Five lattice elements forming a P5 or N3 sublattice.
/// Pentagon: {bottom, a, b, c, top} with a < c. Diamond: {bottom, x, y, z, top}.
struct ForbiddenSublattice {
  ForbiddenKind kind;
  std::array<std::size_t, 5> elements;
};

/// Searches for a P5 sublattice first, then N3. Returns nothing iff the lattice is distributive.
inline std::optional<ForbiddenSublattice> find_forbidden_sublattice(const AbstractLattice& l,
                                                                    std::size_t cap = Limits{}.sublattice_search) {
  const std::size_t k = l.size();
  if (k > cap) throw CapExceeded("lattice size for sublattice search", cap);
  auto incomparable = [&](std::size_t x, std::size_t y) { return !l.leq(x, y) && !l.leq(y, x); };
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t c = 0; c < k; ++c) {
      if (a == c || !l.leq(a, c)) continue;
      for (std::size_t b = 0; b < k; ++b) {
        if (!incomparable(a, b) || !incomparable(c, b)) continue;
        if (l.meet(a, b) == l.meet(c, b) && l.join(a, b) == l.join(c, b))
          return ForbiddenSublattice{ForbiddenKind::pentagon, {l.meet(a, b), a, b, c, l.join(a, b)}};
      }
    }
  for (std::size_t x = 0; x < k; ++x)
    for (std::size_t y = x + 1; y < k; ++y) {
      if (!incomparable(x, y)) continue;
      for (std::size_t z = y + 1; z < k; ++z) {
        if (!incomparable(x, z) || !incomparable(y, z)) continue;
        const auto m = l.meet(x, y), j = l.join(x, y);
        if (l.meet(x, z) == m && l.meet(y, z) == m && l.join(x, z) == j && l.join(y, z) == j)
          return ForbiddenSublattice{ForbiddenKind::diamond, {m, x, y, z, j}};
      }
    }
  return std::nullopt;
}

/// A join-indecomposable element with its unique lower cover.
struct JoinIrreducible {
  std::size_t element;
  std::size_t predecessor;
};

/// The unique maximal element strictly below m. Throws if m has several lower covers.
inline std::size_t predecessor(const AbstractLattice& l, std::size_t m) {
  std::optional<std::size_t> found;
  for (auto [lo, hi] : l.covers()) {
    if (hi != m) continue;
    if (found) throw InvalidArgument("element " + std::to_string(m) + " has no unique predecessor");
    found = lo;
  }
  if (!found) throw InvalidArgument("element " + std::to_string(m) + " is the bottom");
  return *found;
}

/// Non-bottom elements with exactly one lower cover, in element order.
inline std::vector<JoinIrreducible> join_indecomposables(const AbstractLattice& l) {
  std::vector<std::vector<std::size_t>> lower(l.size());
  for (auto [lo, hi] : l.covers()) lower[hi].push_back(lo);
  std::vector<JoinIrreducible> out;
  for (std::size_t m = 0; m < l.size(); ++m)
    if (lower[m].size() == 1) out.push_back({m, lower[m].front()});
  return out;
}

/// Poset of join-indecomposables under the lattice order; labels are "j<element>".
inline Poset ji_poset(const AbstractLattice& l, const std::vector<JoinIrreducible>& jis) {
  std::vector<std::string> labels;
  std::vector<std::vector<bool>> leq(jis.size(), std::vector<bool>(jis.size()));
  for (std::size_t a = 0; a < jis.size(); ++a) {
    labels.push_back("j" + std::to_string(jis[a].element));
    for (std::size_t b = 0; b < jis.size(); ++b) leq[a][b] = l.leq(jis[a].element, jis[b].element);
  }
  return Poset(std::move(labels), std::move(leq));
}

inline Poset ji_poset(const AbstractLattice& l) { return ji_poset(l, join_indecomposables(l)); }

struct BirkhoffReport {
  bool ok = false;
  std::string violation;
  /// For each lattice element, the indices (into the JI list) of join-indecomposables below it.
  std::vector<std::vector<std::size_t>> downset_of;
};

/// Verifies that a ↦ {JI m : m ≤ a} is an isomorphism onto the down-sets of the JI poset.
inline BirkhoffReport birkhoff_check(const AbstractLattice& l) {
  BirkhoffReport r;
  if (!is_distributive(l)) {
    r.violation = "lattice is not distributive";
    return r;
  }
  const auto jis = join_indecomposables(l);
  const Poset p = ji_poset(l, jis);
  if (jis.size() > 63) {
    r.violation = "too many join-indecomposables";
    return r;
  }
  std::vector<std::uint64_t> mask(l.size(), 0);
  for (std::size_t a = 0; a < l.size(); ++a) {
    std::vector<std::size_t> below;
    for (std::size_t j = 0; j < jis.size(); ++j)
      if (l.leq(jis[j].element, a)) {
        mask[a] |= std::uint64_t{1} << j;
        below.push_back(j);
      }
    if (!p.is_downset(below)) {
      r.violation = "image of element " + std::to_string(a) + " is not a down-set";
      return r;
    }
    r.downset_of.push_back(std::move(below));
  }
  std::vector<std::uint64_t> sorted = mask;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    r.violation = "map to down-sets is not injective";
    return r;
  }
  if (jis.size() <= Limits{}.poset_size && downsets(p).size() != l.size()) {
    r.violation = "map to down-sets is not surjective";
    return r;
  }
  for (std::size_t a = 0; a < l.size(); ++a)
    for (std::size_t b = 0; b < l.size(); ++b) {
      if (mask[l.meet(a, b)] != (mask[a] & mask[b])) {
        r.violation = "meet is not sent to intersection";
        return r;
      }
      if (mask[l.join(a, b)] != (mask[a] | mask[b])) {
        r.violation = "join is not sent to union";
        return r;
      }
    }
  r.ok = true;
  return r;
}

/// The lattice of down-sets of a poset, ordered as `downsets` lists them.
inline AbstractLattice downset_lattice(const Poset& p) {
  const auto ds = downsets(p);
  auto subset = [&](std::size_t a, std::size_t b) {
    return std::includes(ds[b].begin(), ds[b].end(), ds[a].begin(), ds[a].end());
  };
  return AbstractLattice::from_order(ds.size(), subset);
}

/// A finite family of partitions of one set, closed under meet and join and containing E and U.
///
/// Elements are stored in canonical partition order, so E is element 0 and U is the last.
/// The order matrix and the meet/join tables are filled on first use.
class PartitionLattice {
public:
  PartitionLattice() = default;

  /// Wraps a family already known to be closed; duplicates are removed and E, U added.
  static PartitionLattice from_closed(std::size_t degree, std::vector<Partition> elements) {
    PartitionLattice l;
    l.degree_ = degree;
    elements.push_back(Partition::discrete(degree));
    elements.push_back(Partition::universal(degree));
    for (const auto& e : elements)
      if (e.degree() != degree) throw DegreeMismatch(degree, e.degree());
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    l.elements_ = std::move(elements);
    l.index_.reserve(l.elements_.size());
    for (std::size_t i = 0; i < l.elements_.size(); ++i) l.index_.emplace(l.elements_[i], i);
    l.cache_ = std::make_shared<Cache>();
    return l;
  }

  std::size_t degree() const noexcept { return degree_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const Partition& operator[](std::size_t i) const { return elements_[i]; }
  const std::vector<Partition>& elements() const noexcept { return elements_; }
  std::size_t bottom() const noexcept { return 0; }
  std::size_t top() const noexcept { return elements_.size() - 1; }

  std::optional<std::size_t> index_of(const Partition& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  bool contains(const Partition& p) const { return index_.count(p) != 0; }

  bool leq(std::size_t a, std::size_t b) const { return order()[a * size() + b]; }

  std::size_t meet(std::size_t a, std::size_t b) const { return tables().meet(a, b); }
  std::size_t join(std::size_t a, std::size_t b) const { return tables().join(a, b); }

  /// Meet and join tables; throws if the family turns out not to be closed.
  const AbstractLattice& tables() const {
    std::scoped_lock lock(cache_->mutex);
    if (!cache_->tables) {
      const std::size_t k = size();
      std::vector<std::uint32_t> m(k * k), j(k * k);
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a; b < k; ++b) {
          const auto mi = lookup(blocklat::meet(elements_[a], elements_[b]));
          const auto ji = lookup(blocklat::join(elements_[a], elements_[b]));
          m[a * k + b] = m[b * k + a] = static_cast<std::uint32_t>(mi);
          j[a * k + b] = j[b * k + a] = static_cast<std::uint32_t>(ji);
        }
      cache_->tables = std::make_unique<AbstractLattice>(k, std::move(m), std::move(j));
    }
    return *cache_->tables;
  }

  /// Hasse diagram as (lower, upper) covering pairs.
  std::vector<std::pair<std::size_t, std::size_t>> hasse() const {
    const std::size_t k = size();
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) {
        if (a == b || !leq(a, b)) continue;
        bool cover = true;
        for (std::size_t c = 0; c < k && cover; ++c)
          if (c != a && c != b && leq(a, c) && leq(c, b)) cover = false;
        if (cover) out.emplace_back(a, b);
      }
    return out;
  }

  /// Whether every pair of elements commutes as equivalence relations.
  std::optional<std::pair<std::size_t, std::size_t>> first_non_commuting_pair() const {
    for (std::size_t a = 1; a + 1 < size(); ++a)
      for (std::size_t b = a + 1; b + 1 < size(); ++b)
        if (!leq(a, b) && !leq(b, a) && !commutes(elements_[a], elements_[b])) return std::pair{a, b};
    return std::nullopt;
  }

private:
  struct Cache {
    std::mutex mutex;
    std::vector<bool> order;
    std::unique_ptr<AbstractLattice> tables;
  };

  std::size_t lookup(const Partition& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) throw InvalidArgument("partition family is not closed under meet and join");
    return it->second;
  }

  const std::vector<bool>& order() const {
    std::scoped_lock lock(cache_->mutex);
    if (cache_->order.empty()) {
      const std::size_t k = size();
      cache_->order.assign(k * k, false);
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
          cache_->order[a * k + b] =
              elements_[a].block_count() >= elements_[b].block_count() && refines(elements_[a], elements_[b]);
    }
    return cache_->order;
  }

  std::size_t degree_ = 0;
  std::vector<Partition> elements_;
  std::unordered_map<Partition, std::size_t, PartitionHash> index_;
  std::shared_ptr<Cache> cache_;
};

/// Smallest family containing the inputs, E and U, closed under meet and join.
inline PartitionLattice close(std::size_t degree, const std::vector<Partition>& partitions,
                              std::size_t cap = Limits{}.lattice) {
  std::vector<Partition> all{Partition::discrete(degree), Partition::universal(degree)};
  std::unordered_map<Partition, std::size_t, PartitionHash> seen;
  for (const auto& p : all) seen.emplace(p, seen.size());
  auto add = [&](Partition p) {
    if (p.degree() != degree) throw DegreeMismatch(degree, p.degree());
    if (seen.emplace(p, seen.size()).second) {
      all.push_back(std::move(p));
      if (all.size() > cap) throw CapExceeded("lattice closure", cap);
    }
  };
  for (const auto& p : partitions) add(p);
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      add(meet(all[i], all[j]));
      add(join(all[i], all[j]));
    }
  return PartitionLattice::from_closed(degree, std::move(all));
}

inline bool is_modular(const PartitionLattice& l) { return is_modular(l.tables()); }
inline bool is_distributive(const PartitionLattice& l) { return is_distributive(l.tables()); }

/// Hasse diagram in DOT; nodes are labelled with block shapes and edges point upward.
inline std::string to_dot(const PartitionLattice& l, const std::string& name = "lattice") {
  std::ostringstream os;
  os << "digraph \"" << name << "\" {\n  rankdir=BT;\n  node [shape=box];\n";
  for (std::size_t i = 0; i < l.size(); ++i) {
    std::string label = l[i].shape();
    if (i == l.bottom()) label = "E " + label;
    if (i == l.top()) label = "U " + label;
    os << "  n" << i << " [label=\"" << label << "\"];\n";
  }
  for (auto [lo, hi] : l.hasse()) os << "  n" << lo << " -> n" << hi << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace blocklat
