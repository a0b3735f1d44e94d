#pragma once

// Generalised wreath products over finite posets.
//
// Node i acts on coordinate i of Ω = ∏ Ω_i through a permutation that depends on the
// coordinates of its strict ancestors A(i) = {j : i ⊏ j}. Points of Ω are mixed-radix
// integers with coordinate 0 fastest; ancestor tuples are mixed-radix over A(i) in
// increasing node order. Down-set D gives the partition Π_D identifying points that agree
// outside D.

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "blockstruct.hpp"
#include "error.hpp"
#include "groupprops.hpp"
#include "lattice.hpp"
#include "partition.hpp"
#include "perm.hpp"
#include "poset.hpp"

namespace blocklat {

/// A poset with one permutation group per node.
class GwpSpec {
public:
  GwpSpec() : GwpSpec(Poset::antichain(0), {}) {}

  GwpSpec(Poset poset, std::vector<PermGroup> components, std::size_t point_cap = Limits{}.points)
      : poset_(std::move(poset)), components_(std::move(components)) {
    const std::size_t n = poset_.size();
    if (components_.size() != n) throw InvalidArgument("one component group per poset node is required");
    std::vector<std::size_t> sizes;
    std::size_t total = 1;
    for (const auto& c : components_) {
      if (c.degree() == 0) throw InvalidArgument("component groups need at least one point");
      sizes.push_back(c.degree());
      if (total > point_cap / c.degree()) throw CapExceeded("product domain size", point_cap);
      total *= c.degree();
    }
    radix_ = MixedRadix(sizes);
    ancestors_.resize(n);
    ancestor_radix_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      ancestors_[i] = poset_.ancestors(i);
      std::vector<std::size_t> s;
      for (auto j : ancestors_[i]) s.push_back(sizes[j]);
      ancestor_radix_[i] = MixedRadix(s);
    }
  }

  const Poset& poset() const noexcept { return poset_; }
  std::size_t size() const noexcept { return components_.size(); }
  const std::vector<PermGroup>& components() const noexcept { return components_; }
  const PermGroup& component(std::size_t i) const { return components_[i]; }
  const MixedRadix& radix() const noexcept { return radix_; }
  std::size_t degree() const noexcept { return radix_.total(); }

  const std::vector<std::size_t>& ancestors(std::size_t i) const { return ancestors_[i]; }
  /// |Ω^i|.
  std::size_t ancestor_count(std::size_t i) const { return ancestor_radix_[i].total(); }

  /// Index of π^i(ω) in Ω^i.
  std::size_t ancestor_tuple(std::size_t i, std::size_t omega) const {
    std::size_t x = 0;
    const auto& a = ancestors_[i];
    for (std::size_t k = 0; k < a.size(); ++k) x += radix_.digit(omega, a[k]) * ancestor_radix_[i].stride(k);
    return x;
  }

  /// The point whose ancestor coordinates spell tuple x and whose other coordinates are 0.
  std::size_t tuple_representative(std::size_t i, std::size_t x) const {
    std::size_t omega = 0;
    const auto& a = ancestors_[i];
    for (std::size_t k = 0; k < a.size(); ++k) omega += ancestor_radix_[i].digit(x, k) * radix_.stride(a[k]);
    return omega;
  }

  /// Π_D for a set of nodes.
  Partition partition(const std::vector<std::size_t>& nodes) const { return coordinate_partition(radix_, nodes); }

  /// The spec on a subset of nodes, in increasing order.
  GwpSpec restricted(std::vector<std::size_t> keep) const {
    std::sort(keep.begin(), keep.end());
    std::vector<PermGroup> comps;
    for (auto k : keep) comps.push_back(components_[k]);
    return GwpSpec(poset_.restrict_to(keep), std::move(comps));
  }

  /// Same components over another poset on the same nodes.
  GwpSpec with_poset(Poset p) const { return GwpSpec(std::move(p), components_); }

  /// ∏ |G(m_i)|^{|Ω^i|}, or nullopt past the size_t range.
  std::optional<std::size_t> expected_order() const {
    std::size_t r = 1;
    for (std::size_t i = 0; i < size(); ++i) {
      const std::size_t o = components_[i].order();
      for (std::size_t k = 0; k < ancestor_count(i); ++k) {
        if (o != 0 && r > std::numeric_limits<std::size_t>::max() / o) return std::nullopt;
        r *= o;
      }
    }
    return r;
  }

private:
  Poset poset_;
  std::vector<PermGroup> components_;
  MixedRadix radix_;
  std::vector<std::vector<std::size_t>> ancestors_;
  std::vector<MixedRadix> ancestor_radix_;
};

/// Per node i, the table Ω^i → G(m_i).
struct GwpElement {
  std::vector<std::vector<Permutation>> tables;
  friend bool operator==(const GwpElement&, const GwpElement&) = default;
};

inline GwpElement gwp_identity(const GwpSpec& spec) {
  GwpElement f;
  for (std::size_t i = 0; i < spec.size(); ++i)
    f.tables.emplace_back(spec.ancestor_count(i), Permutation::identity(spec.component(i).degree()));
  return f;
}

/// (ωf)_i = ω_i applied to f_i(π^i ω); every lookup uses the original ω.
inline std::size_t gwp_act(const GwpSpec& spec, const GwpElement& f, std::size_t omega) {
  const auto& r = spec.radix();
  std::size_t out = 0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const auto& p = f.tables[i][spec.ancestor_tuple(i, omega)];
    out += p.apply(static_cast<Point>(r.digit(omega, i))) * r.stride(i);
  }
  return out;
}

/// The permutation of Ω realised by f.
inline Permutation gwp_permutation(const GwpSpec& spec, const GwpElement& f) {
  std::vector<Point> im(spec.degree());
  for (std::size_t w = 0; w < im.size(); ++w) im[w] = static_cast<Point>(gwp_act(spec, f, w));
  return Permutation(std::move(im));
}

/// f then h: (fh)_i(x) = f_i(x) · h_i(x′) with x′ the image of the ancestor tuple x under f.
inline GwpElement gwp_multiply(const GwpSpec& spec, const GwpElement& f, const GwpElement& h) {
  GwpElement r;
  r.tables.resize(spec.size());
  for (std::size_t i = 0; i < spec.size(); ++i) {
    r.tables[i].reserve(spec.ancestor_count(i));
    for (std::size_t x = 0; x < spec.ancestor_count(i); ++x) {
      const std::size_t moved = gwp_act(spec, f, spec.tuple_representative(i, x));
      r.tables[i].push_back(f.tables[i][x] * h.tables[i][spec.ancestor_tuple(i, moved)]);
    }
  }
  return r;
}

inline GwpElement gwp_inverse(const GwpSpec& spec, const GwpElement& f) {
  GwpElement r = gwp_identity(spec);
  for (std::size_t i = 0; i < spec.size(); ++i)
    for (std::size_t x = 0; x < spec.ancestor_count(i); ++x) {
      const std::size_t moved = gwp_act(spec, f, spec.tuple_representative(i, x));
      r.tables[i][spec.ancestor_tuple(i, moved)] = f.tables[i][x].inverse();
    }
  return r;
}

/// Uniformly random tables.
template <class Rng>
GwpElement gwp_random(const GwpSpec& spec, Rng& rng) {
  GwpElement f;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const auto& els = spec.component(i).elements();
    std::uniform_int_distribution<std::size_t> pick(0, els.size() - 1);
    auto& t = f.tables.emplace_back();
    for (std::size_t x = 0; x < spec.ancestor_count(i); ++x) t.push_back(els.element(pick(rng)));
  }
  return f;
}

/// One generator per node i, tuple x ∈ Ω^i and generator s of G(m_i): f_i(x) = s, identity elsewhere.
inline PermGroup gwp_generators(const GwpSpec& spec, std::string name = {},
                                std::size_t element_cap = Limits::from_environment().elements) {
  std::vector<Permutation> gens;
  for (std::size_t i = 0; i < spec.size(); ++i)
    for (std::size_t x = 0; x < spec.ancestor_count(i); ++x)
      for (const auto& s : spec.component(i).generators()) {
        GwpElement f = gwp_identity(spec);
        f.tables[i][x] = s;
        gens.push_back(gwp_permutation(spec, f));
      }
  return PermGroup(spec.degree(), std::move(gens), std::move(name), element_cap);
}

/// Outcome of decomposing a permutation into GWP tables.
struct MembershipResult {
  std::optional<GwpElement> element;
  std::optional<std::size_t> failing_node;
  std::string reason;
  explicit operator bool() const noexcept { return element.has_value(); }
};

/// Decomposes p into tables: for each node and ancestor tuple, the map ω_i ↦ (ωp)_i must not
/// depend on non-ancestor coordinates and must lie in G(m_i).
inline MembershipResult gwp_membership(const GwpSpec& spec, const Permutation& p) {
  if (p.degree() != spec.degree()) throw DegreeMismatch(spec.degree(), p.degree());
  const auto& r = spec.radix();
  MembershipResult res;
  GwpElement f;
  f.tables.resize(spec.size());
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const std::size_t n = spec.component(i).degree();
    constexpr std::size_t unset = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> map(spec.ancestor_count(i) * n, unset);
    for (std::size_t w = 0; w < spec.degree(); ++w) {
      const std::size_t x = spec.ancestor_tuple(i, w), from = r.digit(w, i);
      const std::size_t to = r.digit(p.apply(static_cast<Point>(w)), i);
      auto& slot = map[x * n + from];
      if (slot == unset) {
        slot = to;
      } else if (slot != to) {
        res.failing_node = i;
        res.reason = "action on coordinate " + spec.poset().label(i) + " depends on a non-ancestor coordinate";
        return res;
      }
    }
    for (std::size_t x = 0; x < spec.ancestor_count(i); ++x) {
      std::vector<Point> im(map.begin() + static_cast<std::ptrdiff_t>(x * n),
                            map.begin() + static_cast<std::ptrdiff_t>((x + 1) * n));
      std::vector<char> hit(n, 0);
      for (auto v : im) hit[v] = 1;
      if (std::count(hit.begin(), hit.end(), 1) != static_cast<std::ptrdiff_t>(n)) {
        res.failing_node = i;
        res.reason = "induced map on coordinate " + spec.poset().label(i) + " is not a permutation";
        return res;
      }
      Permutation q(std::move(im));
      if (!spec.component(i).contains(q)) {
        res.failing_node = i;
        res.reason = "induced permutation on coordinate " + spec.poset().label(i) + " is not in the component group";
        return res;
      }
      f.tables[i].push_back(std::move(q));
    }
  }
  if (gwp_permutation(spec, f) != p) {
    res.reason = "reconstructed element acts differently";
    return res;
  }
  res.element = std::move(f);
  return res;
}

/// Whether every generator of g decomposes.
inline bool gwp_contains_all(const GwpSpec& spec, const PermGroup& g) {
  return std::all_of(g.generators().begin(), g.generators().end(),
                     [&](const Permutation& p) { return static_cast<bool>(gwp_membership(spec, p)); });
}

/// Data of the semidirect decomposition G = N ⋊ H at a minimal node p.
struct SemidirectReport {
  std::size_t node = 0;
  Partition pi;                     // Π_{p}
  PermGroup kernel;                 // N, stabiliser of every part of Π
  PermGroup induced;                // H, action on the parts of Π
  PermGroup subspec_group;          // GWP over M∖{p}
  bool induced_matches = false;     // H equals the sub-spec GWP
  Partition classes;                // parts grouped by Π_{M∖A(p)}
  Partition brute_classes;          // parts on which every element of N acts identically
  Partition literal_classes;        // parts in one part of Π∨Φ for every Φ incomparable to Π
  std::size_t expected_kernel_order = 0;
  bool kernel_order_ok = false;     // |N| = |G(p)|^{#classes}
  bool classes_match = false;       // classes == brute_classes
  bool literal_matches = false;     // literal_classes == brute_classes

  bool ok() const noexcept { return induced_matches && kernel_order_ok && classes_match; }
};

inline SemidirectReport semidirect_decomposition(const GwpSpec& spec, std::size_t p) {
  const Poset& poset = spec.poset();
  if (p >= spec.size()) throw InvalidArgument("node out of range");
  if (!poset.is_minimal(p)) throw InvalidArgument("node " + poset.label(p) + " is not minimal");
  const auto& r = spec.radix();
  const PermGroup g = gwp_generators(spec);
  SemidirectReport rep;
  rep.node = p;
  rep.pi = spec.partition({p});
  rep.kernel = kernel_on_parts(g, rep.pi);
  rep.induced = induced_action(g, rep.pi).image();
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < spec.size(); ++i)
    if (i != p) rest.push_back(i);
  rep.subspec_group = gwp_generators(spec.restricted(rest));
  rep.induced_matches = same_group(rep.induced, rep.subspec_group);

  const std::size_t parts = rep.pi.block_count();
  auto on_parts = [&](auto key) {
    std::vector<std::uint32_t> labels(parts);
    for (std::size_t k = 0; k < parts; ++k) labels[k] = key(rep.pi.block(k).front());
    return Partition(labels);
  };

  std::vector<std::size_t> outside_ancestors;
  const auto& anc = spec.ancestors(p);
  for (std::size_t i = 0; i < spec.size(); ++i)
    if (std::find(anc.begin(), anc.end(), i) == anc.end()) outside_ancestors.push_back(i);
  const Partition by_ancestors = spec.partition(outside_ancestors);
  rep.classes = on_parts([&](Point x) { return by_ancestors.block_of(x); });

  // Brute force: signature of each part is the action of every kernel element on coordinate p.
  const auto& els = rep.kernel.elements();
  std::map<std::vector<std::uint32_t>, std::uint32_t> sig_ids;
  rep.brute_classes = on_parts([&](Point base) {
    std::vector<std::uint32_t> sig;
    for (std::size_t e = 0; e < els.size(); ++e) {
      const auto img = els.raw(e);
      for (std::size_t v = 0; v < r.sizes()[p]; ++v)
        sig.push_back(static_cast<std::uint32_t>(r.digit(img[r.with_digit(base, p, v)], p)));
    }
    return sig_ids.try_emplace(sig, static_cast<std::uint32_t>(sig_ids.size())).first->second;
  });

  // Literal reading: Φ ranges over the nonempty down-set partitions not containing p.
  Partition literal = Partition::universal(spec.degree());
  for (const auto& d : downsets(poset)) {
    if (d.empty() || std::find(d.begin(), d.end(), p) != d.end()) continue;
    literal = meet(literal, join(rep.pi, spec.partition(d)));
  }
  rep.literal_classes = on_parts([&](Point x) { return literal.block_of(x); });

  const std::size_t gp = spec.component(p).order();
  rep.expected_kernel_order = 1;
  for (std::size_t c = 0; c < rep.classes.block_count(); ++c) rep.expected_kernel_order *= gp;
  rep.kernel_order_ok = rep.kernel.order() == rep.expected_kernel_order;
  rep.classes_match = rep.classes == rep.brute_classes;
  rep.literal_matches = rep.literal_classes == rep.brute_classes;
  return rep;
}

/// Group induced by the stabiliser of a P_J-part on the P_K-parts inside it, against the sub-spec on J∖K.
struct IntervalReport {
  PermGroup induced;
  PermGroup subspec_group;
  bool matches = false;
};

inline IntervalReport interval_group(const GwpSpec& spec, const std::vector<std::size_t>& j,
                                     const std::vector<std::size_t>& k) {
  const Poset& poset = spec.poset();
  if (!poset.is_downset(j) || !poset.is_downset(k)) throw InvalidArgument("interval ends must be down-sets");
  for (auto x : k)
    if (std::find(j.begin(), j.end(), x) == j.end()) throw InvalidArgument("lower end must be contained in upper end");
  std::vector<std::size_t> diff;
  for (auto x : j)
    if (std::find(k.begin(), k.end(), x) == k.end()) diff.push_back(x);
  IntervalReport rep;
  rep.induced = induced_on_subblocks(gwp_generators(spec), spec.partition(j), spec.partition(k), 0);
  rep.subspec_group = gwp_generators(spec.restricted(diff));
  rep.matches = same_group(rep.induced, rep.subspec_group);
  return rep;
}

/// Refuses specs whose components are not primitive.
inline void require_primitive_components(const GwpSpec& spec) {
  for (std::size_t i = 0; i < spec.size(); ++i)
    if (spec.component(i).degree() < 2 || !is_primitive(spec.component(i)))
      throw InvalidArgument("component " + spec.poset().label(i) + " is not primitive");
}

/// Cyclic of prime order acting regularly.
inline bool is_prime_cyclic(const PermGroup& g) {
  const std::size_t n = g.degree();
  if (n < 2 || g.order() != n) return false;
  for (std::size_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// First pair of incomparable nodes whose components are cyclic of the same prime order.
inline std::optional<std::pair<std::size_t, std::size_t>> pb_obstruction(const GwpSpec& spec) {
  require_primitive_components(spec);
  for (std::size_t a = 0; a < spec.size(); ++a)
    for (std::size_t b = a + 1; b < spec.size(); ++b)
      if (!spec.poset().comparable(a, b) && is_prime_cyclic(spec.component(a)) &&
          is_prime_cyclic(spec.component(b)) && spec.component(a).degree() == spec.component(b).degree())
        return std::pair{a, b};
  return std::nullopt;
}

struct GwpPropertyReport {
  PropertyReport report;
  std::optional<std::pair<std::size_t, std::size_t>> obstruction;
  std::size_t downset_count = 0;
  std::size_t invariant_count = 0;
  bool pb = false;
  /// obstruction absent ⇔ PB ⇔ the invariant partitions are exactly the down-set partitions.
  bool consistent = false;
};

/// Checks the primitive-component theorem on the invariant lattice alone.
inline GwpPropertyReport check_pb_theorem(const GwpSpec& spec) {
  GwpPropertyReport r;
  r.obstruction = pb_obstruction(spec);
  const auto l = invariant_partitions(gwp_generators(spec));
  const auto ds = downsets(spec.poset());
  r.downset_count = ds.size();
  r.invariant_count = l.size();
  r.pb = is_pb(l);
  bool exact = l.size() == ds.size();
  for (const auto& d : ds) exact = exact && l.lattice().contains(spec.partition(d));
  r.consistent = (!r.obstruction == r.pb) && (r.pb == exact);
  return r;
}

/// Full property report of the GWP together with the theorem checks.
inline GwpPropertyReport gwp_properties(const GwpSpec& spec, std::string name = "gwp") {
  GwpPropertyReport r = check_pb_theorem(spec);
  r.report = analyze(gwp_generators(spec, std::move(name)));
  r.consistent = r.consistent && r.report.pb == r.pb;
  return r;
}

/// Element-set intersection of two GWPs on the same components against the GWP over the
/// intersection of the posets.
struct IntersectionReport {
  std::size_t first_order = 0;
  std::size_t second_order = 0;
  std::size_t intersection_order = 0;
  std::size_t meet_order = 0;           // GWP over the intersected poset
  bool equal = false;
  std::optional<bool> first_in_second;  // set when the first poset is included in the second
  std::optional<bool> second_in_first;
};

inline IntersectionReport gwp_intersection(const GwpSpec& a, const GwpSpec& b) {
  if (a.size() != b.size()) throw InvalidArgument("specs must share their nodes");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!same_group(a.component(i), b.component(i))) throw InvalidArgument("specs must share their components");
  IntersectionReport r;
  const PermGroup ga = gwp_generators(a), gb = gwp_generators(b);
  const auto& ea = ga.elements();
  const auto& eb = gb.elements();
  r.first_order = ea.size();
  r.second_order = eb.size();
  for (std::size_t k = 0; k < ea.size(); ++k) r.intersection_order += eb.contains(ea.element(k));
  const PermGroup gm = gwp_generators(a.with_poset(intersect(a.poset(), b.poset())));
  r.meet_order = gm.order();
  r.equal = r.meet_order == r.intersection_order &&
            std::all_of(gm.generators().begin(), gm.generators().end(),
                        [&](const Permutation& p) { return ea.contains(p) && eb.contains(p); });
  if (included_in(a.poset(), b.poset())) r.first_in_second = gwp_contains_all(b, ga);
  if (included_in(b.poset(), a.poset())) r.second_in_first = gwp_contains_all(a, gb);
  return r;
}

/// The GWP as the intersection of the iterated wreath products over all linear extensions.
struct LinearExtensionReport {
  std::vector<std::vector<std::size_t>> extensions;
  std::vector<std::size_t> extension_orders;
  std::size_t intersection_order = 0;
  std::size_t gwp_order = 0;
  bool equal = false;
};

inline LinearExtensionReport check_linear_extensions(const GwpSpec& spec) {
  LinearExtensionReport r;
  r.extensions = linear_extensions(spec.poset());
  const PermGroup g = gwp_generators(spec);
  r.gwp_order = g.order();
  std::vector<PermGroup> wreaths;
  for (const auto& ext : r.extensions) {
    wreaths.push_back(gwp_generators(spec.with_poset(total_order(spec.poset().labels(), ext))));
    r.extension_orders.push_back(wreaths.back().order());
  }
  if (wreaths.empty()) return r;
  const auto& first = wreaths.front().elements();
  for (std::size_t k = 0; k < first.size(); ++k) {
    const auto e = first.element(k);
    r.intersection_order += std::all_of(wreaths.begin() + 1, wreaths.end(),
                                        [&](const PermGroup& w) { return w.elements().contains(e); });
  }
  r.equal = r.intersection_order == r.gwp_order &&
            std::all_of(wreaths.begin(), wreaths.end(), [&](const PermGroup& w) { return is_subgroup(g, w); });
  return r;
}

/// Component data for one join-indecomposable m of an invariant PBS.
struct GStarData {
  std::size_t element = 0;          // Π, as a lattice index
  std::size_t predecessor = 0;      // Π⁻
  std::vector<std::size_t> family;  // 𝒢(m) = {Φ : Φ∧Π = Π⁻}
  std::size_t psi = 0;              // join of 𝒢(m)
  bool psi_in_family = false;
  PermGroup gstar;                  // on the Ψ-parts inside the Ψ∨Π-part of 0
  PermGroup naive;                  // on the Π⁻-parts inside the Π-part of 0
};

/// Requires Λ to be distributive with pairwise commuting partitions.
inline void require_pbs_lattice(const PartitionLattice& l) {
  if (l.first_non_commuting_pair()) throw InvalidArgument("lattice is not an orthogonal block structure");
  if (!is_distributive(l)) throw InvalidArgument("lattice is not distributive");
}

inline GStarData gstar(const PermGroup& g, const PartitionLattice& l, const JoinIrreducible& m) {
  GStarData d;
  d.element = m.element;
  d.predecessor = m.predecessor;
  d.psi = l.bottom();
  for (std::size_t f = 0; f < l.size(); ++f)
    if (l.meet(f, m.element) == m.predecessor) {
      d.family.push_back(f);
      d.psi = l.join(d.psi, f);
    }
  d.psi_in_family = l.meet(d.psi, m.element) == m.predecessor;
  const std::size_t outer = l.join(d.psi, m.element);
  d.gstar = induced_on_subblocks(g, l[outer], l[d.psi], 0);
  d.naive = induced_on_subblocks(g, l[m.element], l[m.predecessor], 0);
  return d;
}

struct EmbeddingReport {
  Poset ji;
  std::vector<GStarData> nodes;
  bool bijective = false;               // ω ↦ coordinate tuple
  std::vector<Point> coordinates;       // point of Ω for each original point
  std::optional<GwpSpec> spec;          // components G*(m)
  std::optional<GwpSpec> naive_spec;    // components naive G(m), relabelled to the same coordinates
  std::vector<bool> member;             // per generator of G
  std::vector<bool> naive_member;
  std::optional<std::size_t> gwp_order;
  std::size_t group_order = 0;
  bool verdict = false;
  bool naive_verdict = false;
  std::string message;
};

/// Coordinatises Ω by the join-indecomposables of Λ and tests every generator of G for
/// membership in the GWP of the G*(m).
inline EmbeddingReport verify_embedding(const PermGroup& g, const PartitionLattice& l) {
  if (!is_transitive(g)) throw InvalidArgument("embedding needs a transitive group");
  require_pbs_lattice(l);
  for (const auto& p : l.elements())
    if (!is_invariant(g, p)) throw InvalidArgument("lattice element is not invariant under the group");
  EmbeddingReport rep;
  const auto jis = join_indecomposables(l.tables());
  rep.ji = ji_poset(l.tables(), jis);
  const std::size_t n = g.degree();
  const Orbit o = orbit(g, 0);

  std::vector<std::size_t> sizes;
  std::vector<std::vector<std::size_t>> label(jis.size(), std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < jis.size(); ++i) {
    rep.nodes.push_back(gstar(g, l, jis[i]));
    const auto& d = rep.nodes.back();
    const Partition& psi = l[d.psi];
    const Partition& outer = l[l.join(d.psi, d.element)];
    std::vector<std::int64_t> base_label(psi.block_count(), -1);
    std::size_t count = 0;
    for (Point x : outer.block_containing(0))
      if (psi.block_containing(x).front() == x) base_label[psi.block_of(x)] = static_cast<std::int64_t>(count++);
    sizes.push_back(count);
    for (Point w = 0; w < n; ++w) {
      const Permutation& t = o.to(outer.block_containing(w).front());
      label[i][w] = static_cast<std::size_t>(base_label[psi.block_of(t.inverse().apply(w))]);
    }
  }
  const MixedRadix radix(sizes);
  rep.coordinates.resize(n);
  std::vector<char> hit(radix.total(), 0);
  rep.bijective = radix.total() == n;
  for (Point w = 0; w < n && rep.bijective; ++w) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < jis.size(); ++i) c += label[i][w] * radix.stride(i);
    rep.coordinates[w] = static_cast<Point>(c);
    if (hit[c]) rep.bijective = false;
    hit[c] = 1;
  }
  rep.group_order = g.order();
  if (!rep.bijective) {
    rep.message = "coordinatisation is not a bijection; lattice is not a poset block structure";
    return rep;
  }

  std::vector<PermGroup> comps, naive;
  for (std::size_t i = 0; i < jis.size(); ++i) {
    const auto& d = rep.nodes[i];
    comps.push_back(d.gstar.with_name("G*(" + rep.ji.label(i) + ")"));
    // Naive labels: the Ψ-part with label k meets the Π-part of 0 in one Π⁻-part.
    const Partition& pi = l[d.element];
    const Partition& pred = l[d.predecessor];
    std::vector<Point> map(d.naive.degree());
    std::vector<std::int64_t> pred_label(pred.block_count(), -1);
    std::size_t count = 0;
    for (Point x : pi.block_containing(0))
      if (pred.block_containing(x).front() == x) pred_label[pred.block_of(x)] = static_cast<std::int64_t>(count++);
    for (Point x : pi.block_containing(0)) map[static_cast<std::size_t>(pred_label[pred.block_of(x)])] = static_cast<Point>(label[i][x]);
    naive.push_back(relabel(d.naive, map).with_name("G(" + rep.ji.label(i) + ")"));
  }
  rep.spec = GwpSpec(rep.ji, comps);
  rep.naive_spec = GwpSpec(rep.ji, naive);
  rep.gwp_order = rep.spec->expected_order();
  const PermGroup moved = relabel(g, rep.coordinates);
  for (const auto& s : moved.generators()) {
    rep.member.push_back(static_cast<bool>(gwp_membership(*rep.spec, s)));
    rep.naive_member.push_back(static_cast<bool>(gwp_membership(*rep.naive_spec, s)));
  }
  rep.verdict = std::all_of(rep.member.begin(), rep.member.end(), [](bool b) { return b; });
  rep.naive_verdict = std::all_of(rep.naive_member.begin(), rep.naive_member.end(), [](bool b) { return b; });
  if (rep.verdict && rep.gwp_order && *rep.gwp_order % rep.group_order != 0) {
    rep.verdict = false;
    rep.message = "group order does not divide the GWP order";
  } else {
    rep.message = rep.verdict ? "embeds" : "not verified under canonical labelling";
  }
  return rep;
}

/// Uses the invariant lattice of G, which must be PB.
inline EmbeddingReport verify_embedding(const PermGroup& g) {
  const auto l = invariant_partitions(g);
  if (!is_ob(l)) throw InvalidArgument("not OB: the invariant partitions do not all commute");
  if (!is_distributive(l)) throw InvalidArgument("not PB: the invariant lattice is not distributive");
  return verify_embedding(g, l.lattice());
}

}  // namespace blocklat
