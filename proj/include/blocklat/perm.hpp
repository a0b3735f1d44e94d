#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "error.hpp"
#include "partition.hpp"

namespace blocklat {

/// A bijection of {0..n-1}, stored as its image array.
///
/// Permutations act on the right: `p.apply(i)` is written iᵖ, and `p * q`
/// (equivalently `compose(p, q)`) applies p first, then q.
class Permutation {
public:
  Permutation() = default;

  explicit Permutation(std::vector<Point> images) : images_(std::move(images)) {
    std::vector<bool> hit(images_.size(), false);
    for (Point v : images_) {
      if (v >= images_.size() || hit[v]) throw InvalidArgument("image array is not a bijection");
      hit[v] = true;
    }
  }

  static Permutation identity(std::size_t n) {
    std::vector<Point> v(n);
    std::iota(v.begin(), v.end(), Point{0});
    return Permutation(std::move(v), unchecked{});
  }

  /// Builds a permutation of degree n from disjoint cycles.
  static Permutation from_cycles(std::size_t n, const std::vector<std::vector<Point>>& cycles) {
    std::vector<Point> v(n);
    std::iota(v.begin(), v.end(), Point{0});
    std::vector<bool> moved(n, false);
    for (const auto& c : cycles) {
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] >= n || moved[c[i]]) throw InvalidArgument("cycles are not disjoint or out of range");
        moved[c[i]] = true;
        v[c[i]] = c[(i + 1) % c.size()];
      }
    }
    return Permutation(std::move(v), unchecked{});
  }

  std::size_t degree() const noexcept { return images_.size(); }
  Point apply(Point i) const { return images_[i]; }
  Point operator[](Point i) const { return images_[i]; }
  const std::vector<Point>& images() const noexcept { return images_; }

  bool is_identity() const {
    for (Point i = 0; i < images_.size(); ++i)
      if (images_[i] != i) return false;
    return true;
  }

  Permutation inverse() const {
    std::vector<Point> v(images_.size());
    for (Point i = 0; i < images_.size(); ++i) v[images_[i]] = i;
    return Permutation(std::move(v), unchecked{});
  }

  friend Permutation operator*(const Permutation& p, const Permutation& q) {
    if (p.degree() != q.degree()) throw DegreeMismatch(p.degree(), q.degree());
    std::vector<Point> v(p.degree());
    for (Point i = 0; i < v.size(); ++i) v[i] = q.images_[p.images_[i]];
    return Permutation(std::move(v), unchecked{});
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

  std::size_t hash() const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto v : images_) h = (h ^ v) * 1099511628211ull;
    return h;
  }

  std::string to_cycle_string() const {
    std::string s;
    std::vector<bool> seen(images_.size(), false);
    for (Point i = 0; i < images_.size(); ++i) {
      if (seen[i] || images_[i] == i) continue;
      s += "(";
      for (Point j = i; !seen[j]; j = images_[j]) {
        seen[j] = true;
        if (j != i) s += " ";
        s += std::to_string(j);
      }
      s += ")";
    }
    return s.empty() ? "()" : s;
  }

private:
  struct unchecked {};
  Permutation(std::vector<Point> images, unchecked) : images_(std::move(images)) {}

  std::vector<Point> images_;
};

/// Result maps i to q(p(i)).
inline Permutation compose(const Permutation& p, const Permutation& q) { return p * q; }

/// Conjugate g⁻¹ x g.
inline Permutation conjugate(const Permutation& x, const Permutation& g) { return g.inverse() * x * g; }

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept { return p.hash(); }
};

/// Hashed set of permutations in flat 16-bit storage; indices are stable.
class ElementStore {
public:
  static constexpr std::size_t max_degree = 65535;

  explicit ElementStore(std::size_t degree) : degree_(degree) {
    if (degree > max_degree) throw CapExceeded("element store degree", max_degree);
    slots_.assign(16, 0);
  }

  std::size_t degree() const noexcept { return degree_; }
  std::size_t size() const noexcept { return count_; }

  std::span<const std::uint16_t> raw(std::size_t i) const { return {data_.data() + i * degree_, degree_}; }

  Permutation element(std::size_t i) const {
    auto r = raw(i);
    return Permutation(std::vector<Point>(r.begin(), r.end()));
  }

  std::vector<Permutation> all() const {
    std::vector<Permutation> out;
    out.reserve(count_);
    for (std::size_t i = 0; i < count_; ++i) out.push_back(element(i));
    return out;
  }

  std::optional<std::size_t> find(std::span<const Point> images) const {
    if (images.size() != degree_) return std::nullopt;
    const std::size_t mask = slots_.size() - 1;
    for (std::size_t s = hash_of(images) & mask;; s = (s + 1) & mask) {
      const auto slot = slots_[s];
      if (slot == 0) return std::nullopt;
      if (equal_at(slot - 1, images)) return slot - 1;
    }
  }

  std::optional<std::size_t> find(const Permutation& p) const { return find(std::span<const Point>(p.images())); }
  bool contains(const Permutation& p) const { return find(p).has_value(); }

  /// Inserts if absent; returns the index and whether it was new.
  std::pair<std::size_t, bool> insert(std::span<const Point> images) {
    if (images.size() != degree_) throw DegreeMismatch(degree_, images.size());
    if (2 * (count_ + 1) > slots_.size()) grow();
    const std::size_t mask = slots_.size() - 1;
    std::size_t s = hash_of(images) & mask;
    for (;; s = (s + 1) & mask) {
      const auto slot = slots_[s];
      if (slot == 0) break;
      if (equal_at(slot - 1, images)) return {slot - 1, false};
    }
    for (Point v : images) data_.push_back(static_cast<std::uint16_t>(v));
    slots_[s] = static_cast<std::uint32_t>(++count_);
    return {count_ - 1, true};
  }

  std::pair<std::size_t, bool> insert(const Permutation& p) { return insert(std::span<const Point>(p.images())); }

private:
  static std::size_t hash_of(std::span<const Point> images) {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (Point v : images) {
      h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdull;
    h ^= h >> 33;
    return static_cast<std::size_t>(h);
  }

  bool equal_at(std::size_t idx, std::span<const Point> images) const {
    const std::uint16_t* d = data_.data() + idx * degree_;
    for (std::size_t i = 0; i < degree_; ++i)
      if (d[i] != images[i]) return false;
    return true;
  }

  void grow() {
    std::vector<std::uint32_t> fresh(slots_.size() * 2, 0);
    const std::size_t mask = fresh.size() - 1;
    std::vector<Point> buf(degree_);
    for (std::size_t i = 0; i < count_; ++i) {
      auto r = raw(i);
      std::copy(r.begin(), r.end(), buf.begin());
      std::size_t s = hash_of(buf) & mask;
      while (fresh[s] != 0) s = (s + 1) & mask;
      fresh[s] = static_cast<std::uint32_t>(i + 1);
    }
    slots_ = std::move(fresh);
  }

  std::size_t degree_;
  std::size_t count_ = 0;
  std::vector<std::uint16_t> data_;
  std::vector<std::uint32_t> slots_;
};

namespace detail {

struct GroupCache {
  std::mutex mutex;
  std::shared_ptr<const ElementStore> elements;
};

/// Breadth-first closure of `gens` under right multiplication, starting at the identity.
inline std::shared_ptr<ElementStore> enumerate(std::size_t degree, const std::vector<Permutation>& gens,
                                               std::size_t cap) {
  auto store = std::make_shared<ElementStore>(degree);
  store->insert(Permutation::identity(degree));
  std::vector<Point> buf(degree);
  for (std::size_t i = 0; i < store->size(); ++i) {
    for (const auto& g : gens) {
      auto cur = store->raw(i);
      for (std::size_t p = 0; p < degree; ++p) buf[p] = g.apply(cur[p]);
      if (store->insert(buf).second && store->size() > cap) throw CapExceeded("group enumeration", cap);
    }
  }
  return store;
}

}  // namespace detail

/// A permutation group given by generators. Elements are enumerated lazily,
/// on first demand, and cached; copies share the cache.
class PermGroup {
public:
  PermGroup() : PermGroup(0, {}) {}

  PermGroup(std::size_t degree, std::vector<Permutation> generators, std::string name = {},
            std::size_t element_cap = Limits{}.elements)
      : degree_(degree), name_(std::move(name)), cap_(element_cap), cache_(std::make_shared<detail::GroupCache>()) {
    for (auto& g : generators) {
      if (g.degree() != degree) throw DegreeMismatch(degree, g.degree());
      if (!g.is_identity()) gens_.push_back(std::move(g));
    }
  }

  /// A group whose full element set is already known; generators are chosen greedily.
  static PermGroup from_elements(std::size_t degree, const std::vector<Permutation>& elements, std::string name = {},
                                 std::size_t element_cap = Limits{}.elements) {
    std::vector<Permutation> gens;
    auto closure = std::make_shared<ElementStore>(degree);
    closure->insert(Permutation::identity(degree));
    for (const auto& e : elements) {
      if (closure->contains(e)) continue;
      gens.push_back(e);
      closure = detail::enumerate(degree, gens, std::max(element_cap, elements.size()));
    }
    PermGroup g(degree, std::move(gens), std::move(name), element_cap);
    g.cache_->elements = std::move(closure);
    return g;
  }

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Permutation>& generators() const noexcept { return gens_; }
  const std::string& name() const noexcept { return name_; }
  std::size_t element_cap() const noexcept { return cap_; }

  PermGroup with_name(std::string name) const {
    PermGroup g = *this;
    g.name_ = std::move(name);
    return g;
  }

  PermGroup with_cap(std::size_t cap) const {
    PermGroup g(degree_, gens_, name_, cap);
    std::scoped_lock lock(cache_->mutex);
    if (cache_->elements && cache_->elements->size() <= cap) g.cache_->elements = cache_->elements;
    return g;
  }

  /// Full element set. Throws CapExceeded past the element cap.
  const ElementStore& elements() const {
    std::scoped_lock lock(cache_->mutex);
    if (!cache_->elements) cache_->elements = detail::enumerate(degree_, gens_, cap_);
    return *cache_->elements;
  }

  bool elements_cached() const {
    std::scoped_lock lock(cache_->mutex);
    return cache_->elements != nullptr;
  }

  std::size_t order() const { return elements().size(); }
  bool contains(const Permutation& p) const { return p.degree() == degree_ && elements().contains(p); }

private:
  std::size_t degree_;
  std::vector<Permutation> gens_;
  std::string name_;
  std::size_t cap_;
  std::shared_ptr<detail::GroupCache> cache_;
};

/// Group generated by G's generators together with `extra`.
inline PermGroup group_from_generators(std::size_t degree, std::vector<Permutation> gens, std::string name = {}) {
  return PermGroup(degree, std::move(gens), std::move(name));
}

/// Orbit of a point with a transversal: `transversal[k]` maps the base point to `points[k]`,
/// and `words[k]` spells it as a product of generator indices.
struct Orbit {
  Point base = 0;
  std::vector<Point> points;
  std::vector<Permutation> transversal;
  std::vector<std::vector<std::size_t>> words;
  std::vector<std::int64_t> position;  // -1 when not in the orbit

  bool contains(Point p) const { return position[p] >= 0; }
  const Permutation& to(Point p) const { return transversal[static_cast<std::size_t>(position[p])]; }
};

inline Orbit orbit(const PermGroup& g, Point alpha) {
  if (alpha >= g.degree()) throw InvalidArgument("point out of range");
  Orbit o;
  o.base = alpha;
  o.position.assign(g.degree(), -1);
  o.points.push_back(alpha);
  o.transversal.push_back(Permutation::identity(g.degree()));
  o.words.emplace_back();
  o.position[alpha] = 0;
  for (std::size_t i = 0; i < o.points.size(); ++i) {
    for (std::size_t s = 0; s < g.generators().size(); ++s) {
      const Point img = g.generators()[s].apply(o.points[i]);
      if (o.position[img] >= 0) continue;
      o.position[img] = static_cast<std::int64_t>(o.points.size());
      o.points.push_back(img);
      o.transversal.push_back(o.transversal[i] * g.generators()[s]);
      auto w = o.words[i];
      w.push_back(s);
      o.words.push_back(std::move(w));
    }
  }
  return o;
}

inline bool is_transitive(const PermGroup& g) { return g.degree() <= 1 || orbit(g, 0).points.size() == g.degree(); }

/// Stabiliser of α, generated by Schreier generators u_β s u_{βs}⁻¹.
inline PermGroup point_stabiliser(const PermGroup& g, Point alpha) {
  const Orbit o = orbit(g, alpha);
  std::unordered_set<Permutation, PermutationHash> seen;
  std::vector<Permutation> gens;
  for (std::size_t i = 0; i < o.points.size(); ++i) {
    for (const auto& s : g.generators()) {
      Permutation sg = o.transversal[i] * s * o.to(s.apply(o.points[i])).inverse();
      if (sg.is_identity()) continue;
      if (seen.insert(sg).second) gens.push_back(std::move(sg));
    }
  }
  std::sort(gens.begin(), gens.end());
  return PermGroup(g.degree(), std::move(gens), g.name().empty() ? "" : g.name() + "_" + std::to_string(alpha),
                   g.element_cap());
}

/// Partition into orbits.
inline Partition orbit_partition(const PermGroup& g) {
  detail::UnionFind uf(g.degree());
  for (const auto& s : g.generators())
    for (Point p = 0; p < g.degree(); ++p) uf.unite(p, s.apply(p));
  return Partition(uf.labels());
}

/// Orbit partition of the group generated by an arbitrary list of permutations.
inline Partition orbit_partition(std::size_t degree, std::span<const Permutation> perms) {
  detail::UnionFind uf(degree);
  for (const auto& s : perms)
    for (Point p = 0; p < degree; ++p) uf.unite(p, s.apply(p));
  return Partition(uf.labels());
}

/// Subgroup of elements satisfying `pred`; enumerates g.
template <class Pred>
PermGroup subgroup_where(const PermGroup& g, Pred pred, std::string name = {}) {
  const auto& els = g.elements();
  std::vector<Permutation> keep;
  for (std::size_t i = 0; i < els.size(); ++i) {
    Permutation e = els.element(i);
    if (pred(e)) keep.push_back(std::move(e));
  }
  return PermGroup::from_elements(g.degree(), keep, std::move(name), g.element_cap());
}

/// Element-set equality.
inline bool same_group(const PermGroup& a, const PermGroup& b) {
  if (a.degree() != b.degree()) throw DegreeMismatch(a.degree(), b.degree());
  if (a.order() != b.order()) return false;
  const auto& eb = b.elements();
  return std::all_of(a.generators().begin(), a.generators().end(), [&](const auto& g) { return eb.contains(g); });
}

/// Whether every generator of `sub` lies in `g`.
inline bool is_subgroup(const PermGroup& sub, const PermGroup& g) {
  if (sub.degree() != g.degree()) throw DegreeMismatch(sub.degree(), g.degree());
  const auto& eg = g.elements();
  return std::all_of(sub.generators().begin(), sub.generators().end(), [&](const auto& x) { return eg.contains(x); });
}

/// Action of G on the right cosets of a subgroup; coset 0 is H itself.
struct CosetAction {
  PermGroup group;
  std::vector<Permutation> representatives;
};

inline CosetAction coset_action(const PermGroup& g, const std::vector<Permutation>& subgroup_gens) {
  const auto& els = g.elements();
  for (const auto& h : subgroup_gens)
    if (!els.contains(h)) throw InvalidArgument("subgroup generator " + h.to_cycle_string() + " is not in the group");
  const PermGroup h(g.degree(), subgroup_gens, {}, g.element_cap());
  const auto& hel = h.elements();

  constexpr auto none = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> coset_of(els.size(), none);
  std::vector<Permutation> reps;
  auto label = [&](const Permutation& rep) {
    const auto id = static_cast<std::uint32_t>(reps.size());
    for (std::size_t i = 0; i < hel.size(); ++i) coset_of[*els.find(hel.element(i) * rep)] = id;
    reps.push_back(rep);
  };
  label(Permutation::identity(g.degree()));
  std::vector<std::vector<Point>> images(g.generators().size());
  for (std::size_t c = 0; c < reps.size(); ++c) {
    for (std::size_t s = 0; s < g.generators().size(); ++s) {
      const Permutation next = reps[c] * g.generators()[s];
      const auto idx = *els.find(next);
      if (coset_of[idx] == none) label(next);
      images[s].push_back(coset_of[idx]);
    }
  }
  std::vector<Permutation> gens;
  for (auto& im : images) gens.emplace_back(std::move(im));
  return {PermGroup(reps.size(), std::move(gens), g.name().empty() ? "" : g.name() + "_cosets", g.element_cap()),
          std::move(reps)};
}

/// Whether every generator maps blocks of `p` onto blocks.
inline bool is_invariant(const PermGroup& g, const Partition& p) {
  if (p.degree() != g.degree()) throw DegreeMismatch(g.degree(), p.degree());
  for (const auto& s : g.generators())
    for (const auto& blk : p.blocks()) {
      const auto target = p.block_of(s.apply(blk.front()));
      for (Point x : blk)
        if (p.block_of(s.apply(x)) != target) return false;
    }
  return true;
}

/// Images of the source generators under a homomorphism into Sym(target_degree).
struct HomomorphicAction {
  PermGroup source;
  std::size_t target_degree = 0;
  std::vector<Permutation> images_of_generators;

  PermGroup image() const { return PermGroup(target_degree, images_of_generators, {}, source.element_cap()); }

  /// Checks the generator images define a homomorphism: every element reached along the
  /// enumeration of the source gets a single consistent image.
  bool verify() const {
    const auto& gens = source.generators();
    ElementStore src(source.degree());
    std::vector<Permutation> image_of;
    src.insert(Permutation::identity(source.degree()));
    image_of.push_back(Permutation::identity(target_degree));
    for (std::size_t i = 0; i < src.size(); ++i)
      for (std::size_t s = 0; s < gens.size(); ++s) {
        const Permutation im = image_of[i] * images_of_generators[s];
        auto [idx, fresh] = src.insert(src.element(i) * gens[s]);
        if (fresh) {
          if (src.size() > source.element_cap()) throw CapExceeded("group enumeration", source.element_cap());
          image_of.push_back(im);
        } else if (image_of[idx] != im) {
          return false;
        }
      }
    return true;
  }
};

/// Action on the blocks of an invariant partition; blocks are numbered by least element.
inline HomomorphicAction induced_action(const PermGroup& g, const Partition& p) {
  if (!is_invariant(g, p)) throw InvalidArgument("partition is not invariant under the group");
  HomomorphicAction act{g, p.block_count(), {}};
  for (const auto& s : g.generators()) {
    std::vector<Point> im(p.block_count());
    for (std::size_t b = 0; b < p.block_count(); ++b) im[b] = p.block_of(s.apply(p.block(b).front()));
    act.images_of_generators.emplace_back(std::move(im));
  }
  return act;
}

/// Elements fixing every block of `p` setwise.
inline PermGroup kernel_on_parts(const PermGroup& g, const Partition& p) {
  if (p.degree() != g.degree()) throw DegreeMismatch(g.degree(), p.degree());
  return subgroup_where(g, [&](const Permutation& e) {
    for (Point x = 0; x < p.degree(); ++x)
      if (p.block_of(e.apply(x)) != p.block_of(x)) return false;
    return true;
  });
}

/// Setwise stabiliser of the block of `p` containing `point`.
inline PermGroup block_stabiliser(const PermGroup& g, const Partition& p, Point point) {
  const auto b = p.block_of(point);
  return subgroup_where(g, [&](const Permutation& e) { return p.block_of(e.apply(point)) == b; });
}

/// Permutation induced on a subset of points that `e` maps onto itself; `subset` gives the
/// labelling (position k ↦ subset[k]).
inline Permutation restrict_to(const Permutation& e, const std::vector<Point>& subset) {
  std::vector<std::int64_t> pos(e.degree(), -1);
  for (std::size_t k = 0; k < subset.size(); ++k) pos[subset[k]] = static_cast<std::int64_t>(k);
  std::vector<Point> im(subset.size());
  for (std::size_t k = 0; k < subset.size(); ++k) {
    const auto t = pos[e.apply(subset[k])];
    if (t < 0) throw InvalidArgument("permutation does not preserve the subset");
    im[k] = static_cast<Point>(t);
  }
  return Permutation(std::move(im));
}

/// Group induced by the setwise stabiliser of the `outer` block containing `point` on the
/// `inner` blocks inside it (inner must refine outer). Inner blocks are numbered by least element.
inline PermGroup induced_on_subblocks(const PermGroup& g, const Partition& outer, const Partition& inner, Point point) {
  const PermGroup stab = block_stabiliser(g, outer, point);
  std::vector<Point> reps;  // least point of each inner block inside the outer block
  for (Point x : outer.block_containing(point))
    if (inner.block_containing(x).front() == x) reps.push_back(x);
  std::vector<std::int64_t> label(inner.block_count(), -1);
  for (std::size_t k = 0; k < reps.size(); ++k) label[inner.block_of(reps[k])] = static_cast<std::int64_t>(k);
  std::unordered_set<Permutation, PermutationHash> images;
  std::vector<Permutation> gens;
  const auto& els = stab.elements();
  for (std::size_t i = 0; i < els.size(); ++i) {
    const auto e = els.raw(i);
    std::vector<Point> im(reps.size());
    for (std::size_t k = 0; k < reps.size(); ++k) im[k] = static_cast<Point>(label[inner.block_of(e[reps[k]])]);
    Permutation q(std::move(im));
    if (!q.is_identity() && images.insert(q).second) gens.push_back(std::move(q));
  }
  std::sort(gens.begin(), gens.end());
  // Element set known: all distinct images.
  std::vector<Permutation> all(gens);
  all.push_back(Permutation::identity(reps.size()));
  return PermGroup::from_elements(reps.size(), all, {}, g.element_cap());
}

/// Conjugates every generator by the relabelling old point x ↦ map[x].
inline PermGroup relabel(const PermGroup& g, const std::vector<Point>& map) {
  const Permutation phi(map);
  std::vector<Permutation> gens;
  for (const auto& s : g.generators()) gens.push_back(phi.inverse() * s * phi);
  return PermGroup(g.degree(), std::move(gens), g.name(), g.element_cap());
}

/// Point (γ, δ) of Γ×Δ is encoded as γ + |Γ|·δ.
inline Point pair_index(Point gamma, Point delta, std::size_t gamma_size) {
  return static_cast<Point>(gamma + gamma_size * delta);
}

/// G × H in its product action on Γ×Δ.
inline PermGroup direct_product(const PermGroup& g, const PermGroup& h) {
  const std::size_t a = g.degree(), b = h.degree();
  std::vector<Permutation> gens;
  for (const auto& s : g.generators()) {
    std::vector<Point> im(a * b);
    for (Point d = 0; d < b; ++d)
      for (Point c = 0; c < a; ++c) im[pair_index(c, d, a)] = pair_index(s.apply(c), d, a);
    gens.emplace_back(std::move(im));
  }
  for (const auto& s : h.generators()) {
    std::vector<Point> im(a * b);
    for (Point d = 0; d < b; ++d)
      for (Point c = 0; c < a; ++c) im[pair_index(c, d, a)] = pair_index(c, s.apply(d), a);
    gens.emplace_back(std::move(im));
  }
  std::string name = g.name().empty() || h.name().empty() ? "" : g.name() + "x" + h.name();
  return PermGroup(a * b, std::move(gens), std::move(name), std::max(g.element_cap(), h.element_cap()));
}

/// G wr H in its imprimitive action on Γ×Δ; the blocks are Γ×{δ}.
inline PermGroup wreath_product(const PermGroup& g, const PermGroup& h) {
  const std::size_t a = g.degree(), b = h.degree();
  std::vector<Permutation> gens;
  for (Point d = 0; d < b; ++d)
    for (const auto& s : g.generators()) {
      std::vector<Point> im(a * b);
      std::iota(im.begin(), im.end(), Point{0});
      for (Point c = 0; c < a; ++c) im[pair_index(c, d, a)] = pair_index(s.apply(c), d, a);
      gens.emplace_back(std::move(im));
    }
  for (const auto& s : h.generators()) {
    std::vector<Point> im(a * b);
    for (Point d = 0; d < b; ++d)
      for (Point c = 0; c < a; ++c) im[pair_index(c, d, a)] = pair_index(c, s.apply(d), a);
    gens.emplace_back(std::move(im));
  }
  std::string name = g.name().empty() || h.name().empty() ? "" : g.name() + "wr" + h.name();
  return PermGroup(a * b, std::move(gens), std::move(name), std::max(g.element_cap(), h.element_cap()));
}

/// The partition {Γ×{δ}} preserved by wreath_product.
inline Partition wreath_blocks(std::size_t gamma_size, std::size_t delta_size) {
  std::vector<std::uint32_t> l(gamma_size * delta_size);
  for (std::size_t i = 0; i < l.size(); ++i) l[i] = static_cast<std::uint32_t>(i / gamma_size);
  return Partition(l);
}

/// Right regular representation of a group on its own elements (element k is point k).
inline PermGroup regular_action(const PermGroup& g, std::string name = {}) {
  const auto& els = g.elements();
  std::vector<Permutation> gens;
  for (const auto& s : g.generators()) {
    std::vector<Point> im(els.size());
    for (std::size_t i = 0; i < els.size(); ++i) im[i] = static_cast<Point>(*els.find(els.element(i) * s));
    gens.emplace_back(std::move(im));
  }
  return PermGroup(els.size(), std::move(gens), name.empty() ? g.name() + "_regular" : std::move(name),
                   g.element_cap());
}

}  // namespace blocklat
