#pragma once

// Invariant partitions of transitive groups and the properties built on them.

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "blockstruct.hpp"
#include "lattice.hpp"
#include "partition.hpp"
#include "perm.hpp"
#include "subgroups.hpp"

namespace blocklat {

/// Finest G-invariant partition with α and β in one part (union-find with a pair queue).
inline Partition minimal_block_partition(const PermGroup& g, Point alpha, Point beta) {
  const std::size_t n = g.degree();
  if (alpha >= n || beta >= n) throw InvalidArgument("point out of range");
  detail::UnionFind uf(n);
  std::vector<std::pair<Point, Point>> queue;
  if (uf.unite(alpha, beta)) queue.emplace_back(alpha, beta);
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const auto [a, b] = queue[q];
    for (const auto& s : g.generators()) {
      const Point x = s.apply(a), y = s.apply(b);
      if (uf.unite(x, y)) queue.emplace_back(x, y);
    }
  }
  return Partition(uf.labels());
}

/// For partitions invariant under a transitive group, R1∘R2 = R2∘R1 iff their rows at point 0 agree.
inline bool commute_invariant(const Partition& a, const Partition& b) {
  detail::require_same_degree(a, b);
  const std::size_t n = a.degree();
  if (n == 0) return true;
  std::vector<char> b_hit(b.block_count(), 0), a_hit(a.block_count(), 0);
  for (Point x : a.block_containing(0)) b_hit[b.block_of(x)] = 1;
  for (Point x : b.block_containing(0)) a_hit[a.block_of(x)] = 1;
  for (Point x = 0; x < n; ++x)
    if (b_hit[b.block_of(x)] != a_hit[a.block_of(x)]) return false;
  return true;
}

/// The lattice of G-invariant partitions of a transitive group.
class InvariantLattice {
public:
  InvariantLattice() = default;
  InvariantLattice(PermGroup g, PartitionLattice l) : group_(std::move(g)), lattice_(std::move(l)) {}

  const PermGroup& group() const noexcept { return group_; }
  const PartitionLattice& lattice() const noexcept { return lattice_; }
  std::size_t size() const noexcept { return lattice_.size(); }
  const Partition& operator[](std::size_t i) const { return lattice_[i]; }

  /// Part size of the i-th partition (invariant partitions of transitive groups are uniform).
  std::size_t block_size(std::size_t i) const { return lattice_[i].block(0).size(); }
  std::size_t block_count(std::size_t i) const { return lattice_[i].block_count(); }

  /// Comparability through the part containing 0.
  bool leq(std::size_t a, std::size_t b) const {
    const auto& pb = lattice_[b];
    const auto target = pb.block_of(0);
    for (Point x : lattice_[a].block_containing(0))
      if (pb.block_of(x) != target) return false;
    return true;
  }

private:
  PermGroup group_;
  PartitionLattice lattice_;
};

/// All G-invariant partitions of a transitive group.
///
/// Every invariant partition is a join of the minimal ones Π(0, β), and Π(0, β) depends only on
/// the G₀-orbit of β, so the lattice is the join closure of one partition per G₀-orbit.
inline InvariantLattice invariant_partitions(const PermGroup& g, std::size_t cap = Limits{}.lattice) {
  const std::size_t n = g.degree();
  if (!is_transitive(g)) throw InvalidArgument("invariant partitions need a transitive group");
  if (n <= 1) return {g, PartitionLattice::from_closed(n, {})};
  const PermGroup g0 = point_stabiliser(g, 0);
  const Partition orbits0 = orbit_partition(g0);
  std::vector<Partition> atoms;
  std::unordered_set<Partition, PartitionHash> atom_set;
  for (std::size_t b = 0; b < orbits0.block_count(); ++b) {
    const Point beta = orbits0.block(b).front();
    if (beta == 0) continue;
    auto p = minimal_block_partition(g, 0, beta);
    if (atom_set.insert(p).second) atoms.push_back(std::move(p));
  }
  std::vector<Partition> all{Partition::discrete(n)};
  std::unordered_set<Partition, PartitionHash> seen{all.front()};
  for (const auto& a : atoms)
    if (seen.insert(a).second) all.push_back(a);
  for (std::size_t i = 1; i < all.size(); ++i)
    for (const auto& a : atoms) {
      auto j = join(all[i], a);
      if (seen.insert(j).second) {
        all.push_back(std::move(j));
        if (all.size() > cap) throw CapExceeded("invariant partitions", cap);
      }
    }
  return {g, PartitionLattice::from_closed(n, std::move(all))};
}

struct ObReport {
  bool ob = true;
  std::optional<std::pair<std::size_t, std::size_t>> witness;  // lattice indices of a non-commuting pair
};

inline ObReport check_ob(const InvariantLattice& l) {
  for (std::size_t a = 1; a + 1 < l.size(); ++a)
    for (std::size_t b = a + 1; b + 1 < l.size(); ++b)
      if (!commute_invariant(l[a], l[b])) return {false, std::pair{a, b}};
  return {};
}

inline bool is_ob(const InvariantLattice& l) { return check_ob(l).ob; }
inline bool is_ob(const PermGroup& g) { return is_ob(invariant_partitions(g)); }

/// Size beyond which lattice-law checks (cubic in the lattice size) are refused.
inline constexpr std::size_t lattice_law_cap = 1024;

inline bool is_distributive(const InvariantLattice& l) {
  if (l.size() > lattice_law_cap) throw CapExceeded("lattice size for distributivity check", lattice_law_cap);
  return is_distributive(l.lattice());
}

inline bool is_modular(const InvariantLattice& l) {
  if (l.size() > lattice_law_cap) throw CapExceeded("lattice size for modularity check", lattice_law_cap);
  return is_modular(l.lattice());
}

inline bool is_pb(const InvariantLattice& l) { return is_ob(l) && is_distributive(l); }
inline bool is_pb(const PermGroup& g) { return is_pb(invariant_partitions(g)); }

inline bool is_primitive(const InvariantLattice& l) { return l.size() <= 2; }
inline bool is_primitive(const PermGroup& g) {
  if (!is_transitive(g)) return false;
  const Partition orbits0 = orbit_partition(point_stabiliser(g, 0));
  for (std::size_t b = 0; b < orbits0.block_count(); ++b) {
    const Point beta = orbits0.block(b).front();
    if (beta != 0 && !minimal_block_partition(g, 0, beta).is_universal()) return false;
  }
  return true;
}

/// Orbit partition of the kernel of the action on the parts of Π.
///
/// The image group on the parts is enumerated with one preimage per image element; the Schreier
/// generators u_h s u_{h s}⁻¹ of that transversal generate the kernel.
inline Partition kernel_orbit_partition(const PermGroup& g, const Partition& p) {
  const std::size_t n = g.degree();
  const auto act = induced_action(g, p);
  ElementStore images(act.target_degree);
  std::vector<Permutation> preimage{Permutation::identity(n)};
  images.insert(Permutation::identity(act.target_degree));
  detail::UnionFind uf(n);
  const auto& gens = g.generators();
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t s = 0; s < gens.size(); ++s) {
      Permutation cand = preimage[i] * gens[s];
      auto [idx, fresh] = images.insert(images.element(i) * act.images_of_generators[s]);
      if (fresh) {
        if (images.size() > g.element_cap()) throw CapExceeded("image group enumeration", g.element_cap());
        preimage.push_back(std::move(cand));
        continue;
      }
      const Permutation k = cand * preimage[idx].inverse();
      for (Point x = 0; x < n; ++x) uf.unite(x, k.apply(x));
    }
  return Partition(uf.labels());
}

struct PreprimitiveReport {
  bool preprimitive = true;
  std::optional<std::size_t> witness;  // lattice index of a partition that is not a kernel orbit partition
};

inline PreprimitiveReport check_preprimitive(const InvariantLattice& l) {
  for (std::size_t i = 1; i + 1 < l.size(); ++i)
    if (kernel_orbit_partition(l.group(), l[i]) != l[i]) return {false, i};
  return {};
}

inline bool is_preprimitive(const InvariantLattice& l) { return check_preprimitive(l).preprimitive; }
inline bool is_preprimitive(const PermGroup& g) { return is_preprimitive(invariant_partitions(g)); }

struct QuasiprimitiveReport {
  bool quasiprimitive = true;
  /// An element whose normal closure is intransitive (absent when G itself is intransitive).
  std::optional<Permutation> witness;
};

/// Walks the conjugacy classes; the normal closure of g has the orbits of the group generated by g^G.
inline QuasiprimitiveReport check_quasiprimitive(const PermGroup& g) {
  if (!is_transitive(g)) return {false, std::nullopt};
  const auto& els = g.elements();
  const std::size_t n = g.degree(), order = els.size();
  std::vector<Permutation> inv_gens;
  for (const auto& s : g.generators()) inv_gens.push_back(s.inverse());
  std::vector<char> done(order, 0);
  done[0] = 1;
  std::vector<Point> buf(n);
  for (std::size_t i = 1; i < order; ++i) {
    if (done[i]) continue;
    done[i] = 1;
    std::vector<std::size_t> cls{i};
    detail::UnionFind uf(n);
    for (std::size_t q = 0; q < cls.size(); ++q) {
      const auto x = els.raw(cls[q]);
      for (Point p = 0; p < n; ++p) uf.unite(p, x[p]);
      for (std::size_t s = 0; s < inv_gens.size(); ++s) {
        // s⁻¹ x s: apply s⁻¹, then x, then s
        const auto& si = inv_gens[s];
        const auto& sg = g.generators()[s];
        for (Point p = 0; p < n; ++p) buf[p] = sg.apply(x[si.apply(p)]);
        const auto idx = els.find(std::span<const Point>(buf));
        if (!idx) throw Error("conjugate is missing from the element list");
        if (!done[*idx]) {
          done[*idx] = 1;
          cls.push_back(*idx);
        }
      }
    }
    bool transitive = true;
    for (Point p = 1; p < n && transitive; ++p) transitive = uf.find(p) == uf.find(0);
    if (!transitive) return {false, els.element(i)};
  }
  return {};
}

inline bool is_quasiprimitive(const PermGroup& g) { return check_quasiprimitive(g).quasiprimitive; }

/// Orbits of G on ordered pairs: class matrix n×n, classes numbered in order of first pair.
inline AssociationScheme orbitals(const PermGroup& g) {
  const std::size_t n = g.degree();
  AssociationScheme s{n, 0, std::vector<std::uint32_t>(n * n, UINT32_MAX)};
  std::vector<std::size_t> queue;
  for (std::size_t start = 0; start < n * n; ++start) {
    if (s.class_of[start] != UINT32_MAX) continue;
    const auto c = static_cast<std::uint32_t>(s.classes++);
    s.class_of[start] = c;
    queue.assign(1, start);
    for (std::size_t q = 0; q < queue.size(); ++q) {
      const Point a = static_cast<Point>(queue[q] / n), b = static_cast<Point>(queue[q] % n);
      for (const auto& gen : g.generators()) {
        const std::size_t img = gen.apply(a) * n + gen.apply(b);
        if (s.class_of[img] == UINT32_MAX) {
          s.class_of[img] = c;
          queue.push_back(img);
        }
      }
    }
  }
  return s;
}

/// Orbitals with each class merged with its transpose, canonically numbered.
inline AssociationScheme symmetrised_orbitals(const PermGroup& g) {
  auto s = orbitals(g);
  const std::size_t n = s.degree;
  detail::UnionFind uf(static_cast<std::uint32_t>(s.classes));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) uf.unite(s.at(a, b), s.at(b, a));
  const auto labels = uf.labels();
  for (auto& c : s.class_of) c = labels[c];
  return canonical_numbering(std::move(s));
}

inline bool is_stratifiable(const PermGroup& g) {
  if (!is_transitive(g)) throw InvalidArgument("stratifiability is implemented for transitive groups only");
  return verify_scheme(symmetrised_orbitals(g));
}

namespace detail {

// Depth-first extension of a partial colour-preserving map; points below `from` are already placed.
inline bool extend_automorphism(const AssociationScheme& c, std::vector<Point>& img, std::vector<char>& used,
                                std::size_t from) {
  const std::size_t n = c.degree;
  if (from == n) return true;
  for (Point cand = 0; cand < n; ++cand) {
    if (used[cand] || c.at(from, from) != c.at(cand, cand)) continue;
    bool ok = true;
    for (std::size_t k = 0; k < from && ok; ++k)
      ok = c.at(k, from) == c.at(img[k], cand) && c.at(from, k) == c.at(cand, img[k]);
    if (!ok) continue;
    img[from] = cand;
    used[cand] = 1;
    if (extend_automorphism(c, img, used, from + 1)) return true;
    used[cand] = 0;
  }
  return false;
}

}  // namespace detail

/// All permutations preserving every orbital of G, as a group given by a strong generating set:
/// for each base prefix 0..i−1 and each reachable image of i, one automorphism fixing the prefix.
inline PermGroup two_closure(const PermGroup& g, std::size_t degree_cap = Limits{}.two_closure_degree) {
  const std::size_t n = g.degree();
  if (n > degree_cap) throw CapExceeded("degree for 2-closure", degree_cap);
  const auto c = orbitals(g);
  std::vector<Permutation> gens;
  for (std::size_t level = 0; level + 1 < n; ++level) {
    std::vector<Permutation> level_gens;
    std::vector<char> reached(n, 0);
    reached[level] = 1;
    auto grow_orbit = [&] {
      std::vector<Point> q;
      for (Point p = 0; p < n; ++p)
        if (reached[p]) q.push_back(p);
      for (std::size_t i = 0; i < q.size(); ++i)
        for (const auto& s : level_gens) {
          const Point y = s.apply(q[i]);
          if (!reached[y]) {
            reached[y] = 1;
            q.push_back(y);
          }
        }
    };
    for (Point beta = static_cast<Point>(level + 1); beta < n; ++beta) {
      if (reached[beta]) continue;
      std::vector<Point> img(n, 0);
      std::vector<char> used(n, 0);
      for (Point k = 0; k < level; ++k) {
        img[k] = k;
        used[k] = 1;
      }
      if (used[beta] || c.at(level, level) != c.at(beta, beta)) continue;
      bool ok = true;
      for (std::size_t k = 0; k < level && ok; ++k)
        ok = c.at(k, level) == c.at(k, beta) && c.at(level, k) == c.at(beta, k);
      if (!ok) continue;
      img[level] = beta;
      used[beta] = 1;
      if (!detail::extend_automorphism(c, img, used, level + 1)) continue;
      level_gens.emplace_back(img);
      grow_orbit();
    }
    gens.insert(gens.end(), level_gens.begin(), level_gens.end());
  }
  return PermGroup(n, std::move(gens), g.name().empty() ? "" : g.name() + "_2closure", g.element_cap());
}

struct OrthogonalityReport {
  bool orthogonal = true;
  std::optional<Partition> witness;  // invariant partition of the product that is not a product
};

/// Whether every invariant partition of G×H (product action) is Π_G × Π_H.
inline OrthogonalityReport partition_orthogonal(const PermGroup& g, const PermGroup& h) {
  const std::size_t a = g.degree(), b = h.degree();
  const auto l = invariant_partitions(direct_product(g, h));
  for (std::size_t i = 0; i < l.size(); ++i) {
    const auto& p = l[i];
    const bool product = projection_partition(p, a, b, Side::gamma) == fibre_partition(p, a, b, Side::gamma) &&
                         projection_partition(p, a, b, Side::delta) == fibre_partition(p, a, b, Side::delta);
    if (!product) return {false, p};
  }
  return {};
}

struct CommutingComparison {
  bool partitions_commute = false;
  bool subgroups_permute = false;
};

/// Compares commuting of Π1, Π2 with HK = KH for the stabilisers H, K of the parts containing 0.
inline CommutingComparison subgroups_commute_via_partitions(const PermGroup& g, const Partition& p1,
                                                            const Partition& p2,
                                                            std::size_t product_cap = std::size_t{1} << 24) {
  const auto& els = g.elements();
  std::vector<std::size_t> h, k;
  for (std::size_t i = 0; i < els.size(); ++i) {
    const Point img = els.raw(i)[0];
    if (p1.same_block(img, 0)) h.push_back(i);
    if (p2.same_block(img, 0)) k.push_back(i);
  }
  if (h.size() * k.size() > product_cap) throw CapExceeded("subgroup product size", product_cap);
  const std::size_t n = g.degree();
  std::vector<Point> buf(n);
  auto product = [&](const std::vector<std::size_t>& x, const std::vector<std::size_t>& y) {
    std::vector<char> in(els.size(), 0);
    for (auto a : x) {
      const auto pa = els.raw(a);
      for (auto b : y) {
        const auto pb = els.raw(b);
        for (Point p = 0; p < n; ++p) buf[p] = pb[pa[p]];
        in[*els.find(std::span<const Point>(buf))] = 1;
      }
    }
    return in;
  };
  return {commutes(p1, p2), product(h, k) == product(k, h)};
}

struct RegularNormalReport {
  bool ob = true;
  std::size_t invariant_subgroups = 0;
};

/// OB test through the subgroups of a regular normal subgroup N that are normalised by G₀.
inline RegularNormalReport regular_normal_ob(const PermGroup& g, const std::vector<Permutation>& n_gens) {
  const PermGroup n(g.degree(), n_gens, "N", g.element_cap());
  if (!is_transitive(n) || n.order() != g.degree()) throw InvalidArgument("N is not regular");
  const auto& ne = n.elements();
  for (const auto& s : g.generators())
    for (const auto& x : n.generators())
      if (!ne.contains(conjugate(x, s))) throw InvalidArgument("N is not normal in G");
  const GroupTable t(n);
  const auto g0 = point_stabiliser(g, 0);
  std::vector<ElementSet> kept;
  for (auto& sub : all_subgroups(t)) {
    bool invariant = true;
    const auto members = sub.members();
    for (const auto& x : g0.generators())
      for (auto m : members) {
        if (!invariant) break;
        invariant = sub.test(t.index_of(conjugate(t.element(m), x)));
      }
    if (invariant) kept.push_back(std::move(sub));
  }
  return {!first_non_permuting_pair(t, kept), kept.size()};
}

/// Everything the analyser reports about one group.
struct PropertyReport {
  std::string name;
  std::size_t degree = 0;
  std::size_t order = 0;
  bool transitive = false;
  std::optional<bool> primitive, quasiprimitive, preprimitive, ob, pb, stratifiable, distributive, modular;
  std::size_t lattice_size = 0;
  std::vector<Partition> lattice;
  std::optional<std::pair<Partition, Partition>> ob_witness;
  std::optional<Partition> preprimitive_witness;
  std::optional<Permutation> quasiprimitive_witness;
};

/// Lattice laws are evaluated when the lattice has at most `lattice_law_cap` elements.
inline PropertyReport analyze(const PermGroup& g) {
  PropertyReport r;
  r.name = g.name();
  r.degree = g.degree();
  r.order = g.order();
  r.transitive = is_transitive(g);
  if (!r.transitive) return r;
  const auto l = invariant_partitions(g);
  r.lattice_size = l.size();
  r.lattice = l.lattice().elements();
  r.primitive = is_primitive(l);
  const auto q = check_quasiprimitive(g);
  r.quasiprimitive = q.quasiprimitive;
  r.quasiprimitive_witness = q.witness;
  const auto pp = check_preprimitive(l);
  r.preprimitive = pp.preprimitive;
  if (pp.witness) r.preprimitive_witness = l[*pp.witness];
  const auto ob = check_ob(l);
  r.ob = ob.ob;
  if (ob.witness) r.ob_witness = std::pair{l[ob.witness->first], l[ob.witness->second]};
  if (l.size() <= lattice_law_cap) {
    r.modular = is_modular(l);
    r.distributive = is_distributive(l);
  }
  if (!ob.ob)
    r.pb = false;
  else if (r.distributive)
    r.pb = *r.distributive;
  r.stratifiable = is_stratifiable(g);
  return r;
}

}  // namespace blocklat
