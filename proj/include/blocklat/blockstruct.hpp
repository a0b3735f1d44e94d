#pragma once

// Orthogonal and poset block structures and the association schemes they define.

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lattice.hpp"
#include "partition.hpp"
#include "poset.hpp"

namespace blocklat {

/// Which axiom a candidate block structure broke.
enum class ObsAxiom { non_uniform, non_commuting };

struct ObsViolation {
  ObsAxiom axiom;
  std::size_t first = 0;   // lattice element index
  std::size_t second = 0;  // second element for non_commuting, equal to first otherwise
  std::string message;
};

struct ObsValidation;
class PartitionLattice;
inline ObsValidation validate_obs(PartitionLattice lattice);

/// An orthogonal block structure: a closed family of uniform, pairwise commuting partitions.
class OBS {
public:
  OBS() = default;

  const PartitionLattice& lattice() const noexcept { return lattice_; }
  std::size_t degree() const noexcept { return lattice_.degree(); }
  std::size_t size() const noexcept { return lattice_.size(); }
  const Partition& operator[](std::size_t i) const { return lattice_[i]; }

private:
  explicit OBS(PartitionLattice l) : lattice_(std::move(l)) {}
  PartitionLattice lattice_;

  friend ObsValidation validate_obs(PartitionLattice lattice);
};

struct ObsValidation {
  PartitionLattice lattice;
  std::optional<OBS> obs;
  std::optional<ObsViolation> violation;

  bool ok() const noexcept { return obs.has_value(); }
  /// Returns the OBS or throws InvalidArgument carrying the violation message.
  const OBS& value() const {
    if (!obs) throw InvalidArgument("not an orthogonal block structure: " + violation->message);
    return *obs;
  }
};

/// Checks uniformity of every element and commuting of every pair of an already closed family.
inline ObsValidation validate_obs(PartitionLattice lattice) {
  ObsValidation v;
  for (std::size_t i = 0; i < lattice.size(); ++i)
    if (!lattice[i].is_uniform()) {
      v.violation = ObsViolation{ObsAxiom::non_uniform, i, i, "partition " + lattice[i].shape() + " is not uniform"};
      v.lattice = std::move(lattice);
      return v;
    }
  if (auto pair = lattice.first_non_commuting_pair()) {
    v.violation = ObsViolation{ObsAxiom::non_commuting, pair->first, pair->second,
                               "partitions " + lattice[pair->first].shape() + " and " +
                                   lattice[pair->second].shape() + " do not commute"};
    v.lattice = std::move(lattice);
    return v;
  }
  v.obs = OBS(lattice);
  v.lattice = std::move(lattice);
  return v;
}

/// Closes the family under meet and join (adding E and U) and validates the result.
inline ObsValidation validate_obs(std::size_t degree, const std::vector<Partition>& partitions) {
  return validate_obs(close(degree, partitions));
}

/// Π1 × Π2 on Ω1 × Ω2, point (a, b) encoded as a + |Ω1|·b.
inline Partition product_partition(const Partition& p1, const Partition& p2) {
  const std::size_t n1 = p1.degree(), n2 = p2.degree();
  std::vector<std::uint32_t> labels(n1 * n2);
  for (std::size_t b = 0; b < n2; ++b)
    for (std::size_t a = 0; a < n1; ++a)
      labels[a + n1 * b] = static_cast<std::uint32_t>(p1.block_of(static_cast<Point>(a)) +
                                                       p1.block_count() * p2.block_of(static_cast<Point>(b)));
  return Partition(labels);
}

/// Crossing: every R1 × R2.
inline OBS cross(const OBS& b1, const OBS& b2) {
  std::vector<Partition> out;
  for (std::size_t i = 0; i < b1.size(); ++i)
    for (std::size_t j = 0; j < b2.size(); ++j) out.push_back(product_partition(b1[i], b2[j]));
  return validate_obs(b1.degree() * b2.degree(), out).value();
}

/// Nesting b2 within b1: R1 × U2 for R1 in b1, and E1 × R2 for R2 in b2.
inline OBS nest(const OBS& b1, const OBS& b2) {
  std::vector<Partition> out;
  const auto u2 = Partition::universal(b2.degree());
  const auto e1 = Partition::discrete(b1.degree());
  for (std::size_t i = 0; i < b1.size(); ++i) out.push_back(product_partition(b1[i], u2));
  for (std::size_t j = 0; j < b2.size(); ++j) out.push_back(product_partition(e1, b2[j]));
  return validate_obs(b1.degree() * b2.degree(), out).value();
}

/// The OBS {E, U} on n points.
inline OBS trivial_obs(std::size_t n) { return validate_obs(n, {}).value(); }

/// Mixed-radix coordinates with coordinate 0 varying fastest.
class MixedRadix {
public:
  MixedRadix() = default;
  explicit MixedRadix(std::vector<std::size_t> sizes) : sizes_(std::move(sizes)), stride_(sizes_.size()) {
    std::size_t s = 1;
    for (std::size_t i = 0; i < sizes_.size(); ++i) {
      stride_[i] = s;
      s *= sizes_[i];
    }
    total_ = s;
  }

  std::size_t total() const noexcept { return total_; }
  std::size_t rank() const noexcept { return sizes_.size(); }
  const std::vector<std::size_t>& sizes() const noexcept { return sizes_; }
  std::size_t stride(std::size_t i) const { return stride_[i]; }
  std::size_t digit(std::size_t point, std::size_t i) const { return point / stride_[i] % sizes_[i]; }
  std::size_t with_digit(std::size_t point, std::size_t i, std::size_t v) const {
    return point + (v - digit(point, i)) * stride_[i];
  }

private:
  std::vector<std::size_t> sizes_;
  std::vector<std::size_t> stride_;
  std::size_t total_ = 1;
};

/// Π_S: points identified when they agree on every coordinate outside S.
inline Partition coordinate_partition(const MixedRadix& radix, const std::vector<std::size_t>& free_coords) {
  std::vector<bool> is_free(radix.rank(), false);
  for (auto c : free_coords) is_free[c] = true;
  std::vector<std::uint32_t> labels(radix.total());
  for (std::size_t w = 0; w < radix.total(); ++w) {
    std::size_t key = w;
    for (std::size_t c = 0; c < radix.rank(); ++c)
      if (is_free[c]) key -= radix.digit(w, c) * radix.stride(c);
    labels[w] = static_cast<std::uint32_t>(key);
  }
  return Partition(labels);
}

struct PosetBlockStructure {
  Poset poset;
  MixedRadix radix;
  OBS obs;
  std::vector<std::vector<std::size_t>> downsets;
  /// Lattice index of Π_D for each down-set, in `downsets` order.
  std::vector<std::size_t> element_of_downset;
};

/// Builds {Π_D : D a down-set}; checks the meet/join correspondence on every pair.
inline PosetBlockStructure pbs_from_poset(const Poset& p, const std::vector<std::size_t>& sizes,
                                          std::size_t point_cap = Limits{}.points) {
  if (sizes.size() != p.size()) throw InvalidArgument("one set size per poset element is required");
  std::size_t total = 1;
  for (auto s : sizes) {
    if (s < 2) throw InvalidArgument("poset block structures need every set size to be at least 2");
    total *= s;
    if (total > point_cap) throw CapExceeded("points", point_cap);
  }
  PosetBlockStructure r{p, MixedRadix(sizes), {}, downsets(p), {}};
  std::vector<Partition> parts;
  for (const auto& d : r.downsets) parts.push_back(coordinate_partition(r.radix, d));
  auto validation = validate_obs(PartitionLattice::from_closed(total, parts));
  const auto& obs = validation.value();
  if (obs.size() != r.downsets.size()) throw Error("down-set partitions are not distinct");
  for (const auto& part : parts) r.element_of_downset.push_back(*obs.lattice().index_of(part));
  for (std::size_t a = 0; a < r.downsets.size(); ++a)
    for (std::size_t b = 0; b < r.downsets.size(); ++b) {
      std::vector<std::size_t> i, u;
      std::set_intersection(r.downsets[a].begin(), r.downsets[a].end(), r.downsets[b].begin(), r.downsets[b].end(),
                            std::back_inserter(i));
      std::set_union(r.downsets[a].begin(), r.downsets[a].end(), r.downsets[b].begin(), r.downsets[b].end(),
                     std::back_inserter(u));
      if (meet(parts[a], parts[b]) != coordinate_partition(r.radix, i) ||
          join(parts[a], parts[b]) != coordinate_partition(r.radix, u))
        throw Error("down-set partitions do not respect intersection and union");
    }
  r.obs = obs;
  return r;
}

inline bool is_pbs(const OBS& b) { return is_distributive(b.lattice()); }

/// Symmetric partition of Ω² with the diagonal as class 0.
struct AssociationScheme {
  std::size_t degree = 0;
  std::size_t classes = 0;  // including the diagonal
  std::vector<std::uint32_t> class_of;  // row-major n×n

  std::uint32_t at(std::size_t a, std::size_t b) const { return class_of[a * degree + b]; }
  std::size_t nondiagonal_classes() const { return classes == 0 ? 0 : classes - 1; }
  std::vector<std::size_t> class_sizes() const {
    std::vector<std::size_t> s(classes, 0);
    for (auto c : class_of) ++s[c];
    return s;
  }
};

/// Renumbers classes: diagonal first, then by (size, least pair in row-major order).
inline AssociationScheme canonical_numbering(AssociationScheme s) {
  const std::size_t n = s.degree;
  std::size_t k = 0;
  for (auto c : s.class_of) k = std::max<std::size_t>(k, c + 1);
  std::vector<std::size_t> size(k, 0), first(k, n * n);
  for (std::size_t i = 0; i < n * n; ++i) {
    ++size[s.class_of[i]];
    first[s.class_of[i]] = std::min(first[s.class_of[i]], i);
  }
  std::vector<std::uint32_t> order;
  for (std::uint32_t c = 0; c < k; ++c)
    if (size[c] > 0) order.push_back(c);
  const std::uint32_t diag = n > 0 ? s.class_of[0] : 0;
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if ((a == diag) != (b == diag)) return a == diag;
    if (size[a] != size[b]) return size[a] < size[b];
    return first[a] < first[b];
  });
  std::vector<std::uint32_t> renum(k, 0);
  for (std::uint32_t i = 0; i < order.size(); ++i) renum[order[i]] = i;
  for (auto& c : s.class_of) c = renum[c];
  s.classes = order.size();
  return s;
}

struct SchemeReport {
  bool ok = false;
  std::string violation;
};

/// Checks symmetry, diagonal class, and constancy of every intersection number p^k_ij.
inline SchemeReport check_scheme(const AssociationScheme& s) {
  const std::size_t n = s.degree, r = s.classes;
  SchemeReport rep;
  if (s.class_of.size() != n * n) {
    rep.violation = "class matrix has the wrong size";
    return rep;
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (s.at(a, b) >= r) {
        rep.violation = "class index out of range";
        return rep;
      }
      if (s.at(a, b) != s.at(b, a)) {
        rep.violation = "not symmetric at (" + std::to_string(a) + "," + std::to_string(b) + ")";
        return rep;
      }
      if ((s.at(a, b) == 0) != (a == b)) {
        rep.violation = "class 0 is not exactly the diagonal";
        return rep;
      }
    }
  // p[k][i*r+j], filled from the first pair seen in class k
  std::vector<std::vector<std::size_t>> p(r);
  std::vector<std::size_t> counts(r * r);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::fill(counts.begin(), counts.end(), 0);
      for (std::size_t g = 0; g < n; ++g) ++counts[s.at(a, g) * r + s.at(g, b)];
      auto& ref = p[s.at(a, b)];
      if (ref.empty()) {
        ref = counts;
      } else if (ref != counts) {
        rep.violation = "intersection numbers vary within class " + std::to_string(s.at(a, b));
        return rep;
      }
    }
  rep.ok = true;
  return rep;
}

inline bool verify_scheme(const AssociationScheme& s) { return check_scheme(s).ok; }

/// Equality up to renumbering of classes.
inline bool schemes_equal(const AssociationScheme& a, const AssociationScheme& b) {
  if (a.degree != b.degree) return false;
  return canonical_numbering(a).class_of == canonical_numbering(b).class_of;
}

struct SchemeDerivation {
  AssociationScheme scheme;
  /// Lattice element giving each class (class 0 comes from E).
  std::vector<std::size_t> element_of_class;
  /// Lattice elements R whose stratum S_R = R minus the relations strictly inside it is empty.
  std::vector<std::size_t> empty_strata;
};

/// Class of (α,β) is the finest lattice element containing the pair.
inline SchemeDerivation derive_scheme(const OBS& b) {
  const auto& l = b.lattice();
  const std::size_t n = b.degree(), k = l.size();
  std::vector<std::uint32_t> raw(n * n);
  std::vector<bool> used(k, false);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x; y < n; ++y) {
      std::size_t best = l.top();
      for (std::size_t e = 0; e < k; ++e)
        if (l[e].same_block(static_cast<Point>(x), static_cast<Point>(y)) &&
            l[e].block_count() > l[best].block_count())
          best = e;
      raw[x * n + y] = raw[y * n + x] = static_cast<std::uint32_t>(best);
      used[best] = true;
    }
  SchemeDerivation d;
  AssociationScheme s{n, 0, raw};
  s = canonical_numbering(std::move(s));
  d.element_of_class.assign(s.classes, 0);
  for (std::size_t i = 0; i < n * n; ++i) d.element_of_class[s.class_of[i]] = raw[i];
  for (std::size_t e = 0; e < k; ++e)
    if (!used[e]) d.empty_strata.push_back(e);
  d.scheme = std::move(s);
  return d;
}

inline AssociationScheme association_scheme(const OBS& b) { return derive_scheme(b).scheme; }

/// n lines of n space-separated class indices.
inline std::string to_matrix_text(const AssociationScheme& s) {
  std::ostringstream os;
  for (std::size_t a = 0; a < s.degree; ++a) {
    for (std::size_t b = 0; b < s.degree; ++b) os << (b ? " " : "") << s.at(a, b);
    os << '\n';
  }
  return os.str();
}

/// Rows, columns and the first `squares` letters of the q−1 mutually orthogonal squares
/// L_k(r, c) = r + k·c mod q, on the q² cells r + q·c. q must be prime.
inline std::vector<Partition> latin_square_partitions(std::size_t q, std::size_t squares) {
  if (q < 2) throw InvalidArgument("latin squares need q >= 2");
  for (std::size_t d = 2; d * d <= q; ++d)
    if (q % d == 0) throw InvalidArgument("latin square construction needs a prime q");
  if (squares > q - 1) throw InvalidArgument("at most q-1 mutually orthogonal squares");
  std::vector<std::vector<std::uint32_t>> labels(2 + squares, std::vector<std::uint32_t>(q * q));
  for (std::size_t c = 0; c < q; ++c)
    for (std::size_t r = 0; r < q; ++r) {
      const std::size_t cell = r + q * c;
      labels[0][cell] = static_cast<std::uint32_t>(r);
      labels[1][cell] = static_cast<std::uint32_t>(c);
      for (std::size_t k = 1; k <= squares; ++k) labels[1 + k][cell] = static_cast<std::uint32_t>((r + k * c) % q);
    }
  std::vector<Partition> out;
  for (const auto& l : labels) out.emplace_back(l);
  return out;
}

enum class Side { gamma, delta };

/// Parts of Π on Γ×Δ (point γ + |Γ|·δ) projected onto one side. Throws if projections overlap.
inline Partition projection_partition(const Partition& p, std::size_t gamma, std::size_t delta, Side side) {
  if (p.degree() != gamma * delta) throw DegreeMismatch(p.degree(), gamma * delta);
  const std::size_t m = side == Side::gamma ? gamma : delta;
  std::vector<std::vector<std::uint32_t>> proj(p.block_count());
  for (std::size_t b = 0; b < p.block_count(); ++b) {
    std::vector<bool> hit(m, false);
    for (Point w : p.block(b)) hit[side == Side::gamma ? w % gamma : w / gamma] = true;
    for (std::uint32_t c = 0; c < m; ++c)
      if (hit[c]) proj[b].push_back(c);
  }
  std::vector<std::uint32_t> labels(m, 0);
  std::vector<std::int64_t> seen(m, -1);
  for (std::size_t b = 0; b < p.block_count(); ++b) {
    const std::int64_t rep = seen[proj[b].front()];
    if (rep >= 0 && proj[static_cast<std::size_t>(rep)] != proj[b])
      throw InvalidArgument("projections of parts overlap without coinciding");
    for (auto c : proj[b]) {
      if (seen[c] >= 0 && proj[static_cast<std::size_t>(seen[c])] != proj[b])
        throw InvalidArgument("projections of parts overlap without coinciding");
      seen[c] = static_cast<std::int64_t>(b);
      labels[c] = proj[b].front();
    }
  }
  return Partition(labels);
}

/// Π restricted to the slice through the smallest coordinate on the other side, projected onto `side`.
inline Partition fibre_partition(const Partition& p, std::size_t gamma, std::size_t delta, Side side) {
  if (p.degree() != gamma * delta) throw DegreeMismatch(p.degree(), gamma * delta);
  const std::size_t m = side == Side::gamma ? gamma : delta;
  std::vector<std::uint32_t> labels(m);
  for (std::size_t c = 0; c < m; ++c) {
    const std::size_t w = side == Side::gamma ? c : c * gamma;
    labels[c] = p.block_of(static_cast<Point>(w));
  }
  return Partition(labels);
}

}  // namespace blocklat
