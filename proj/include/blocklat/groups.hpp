#pragma once

// Named permutation groups used as fixtures throughout the tests and the CLI data set.

#include <array>
#include <numeric>
#include <string>
#include <vector>

#include "perm.hpp"

namespace blocklat::groups {

inline Permutation cycle(std::size_t n, std::vector<Point> c) { return Permutation::from_cycles(n, {std::move(c)}); }

inline Permutation n_cycle(std::size_t n) {
  std::vector<Point> c(n);
  std::iota(c.begin(), c.end(), Point{0});
  return cycle(n, c);
}

inline PermGroup trivial(std::size_t n) { return PermGroup(n, {}, "1_" + std::to_string(n)); }

/// C_n acting regularly on n points.
inline PermGroup cyclic(std::size_t n) { return PermGroup(n, {n_cycle(n)}, "C" + std::to_string(n)); }

inline PermGroup symmetric(std::size_t n) {
  std::vector<Permutation> g;
  if (n >= 2) g.push_back(cycle(n, {0, 1}));
  if (n >= 3) g.push_back(n_cycle(n));
  return PermGroup(n, g, "S" + std::to_string(n));
}

inline PermGroup alternating(std::size_t n) {
  std::vector<Permutation> g;
  if (n >= 3) {
    g.push_back(cycle(n, {0, 1, 2}));
    std::vector<Point> c(n % 2 == 1 ? n : n - 1);
    std::iota(c.begin(), c.end(), Point{n % 2 == 1 ? 0u : 1u});
    if (c.size() >= 3) g.push_back(cycle(n, c));
  }
  return PermGroup(n, g, "A" + std::to_string(n));
}

/// Dihedral group of order 2n in its natural action on n points.
inline PermGroup dihedral(std::size_t n) {
  std::vector<Point> refl(n);
  for (Point i = 0; i < n; ++i) refl[i] = static_cast<Point>((n - i) % n);
  return PermGroup(n, {n_cycle(n), Permutation(refl)}, "D" + std::to_string(n) + "_natural");
}

/// Regular action of the metacyclic group ⟨a, b | a^m, b^k, b a b⁻¹ = a^r⟩ of order m·k.
/// Element a^i b^j is point i + m·j. Requires r^k ≡ 1 (mod m).
inline PermGroup metacyclic_regular(std::size_t m, std::size_t k, std::size_t r, std::string name) {
  std::vector<std::size_t> rpow(k, 1);
  for (std::size_t j = 1; j < k; ++j) rpow[j] = rpow[j - 1] * r % m;
  if (rpow[k - 1] * r % m != 1) throw InvalidArgument("metacyclic relation is inconsistent");
  auto mul = [&](std::size_t x, std::size_t y) {
    const std::size_t i = x % m, j = x / m, ii = y % m, jj = y / m;
    return (i + rpow[j] * ii) % m + m * ((j + jj) % k);
  };
  const std::size_t n = m * k;
  std::vector<Permutation> gens;
  for (std::size_t g : {std::size_t{1}, m}) {
    if (g >= n) continue;
    std::vector<Point> im(n);
    for (std::size_t x = 0; x < n; ++x) im[x] = static_cast<Point>(mul(x, g));
    gens.emplace_back(std::move(im));
  }
  return PermGroup(n, std::move(gens), std::move(name));
}

/// Quaternion group Q8 acting regularly. Point u + 4s is (−1)^s·u with u ∈ {1, i, j, k}.
inline PermGroup quaternion_regular() {
  // unit products: sign and unit of u·v for u, v in {1, i, j, k}
  static constexpr std::array<std::array<std::array<int, 2>, 4>, 4> table = {{
      {{{0, 0}, {0, 1}, {0, 2}, {0, 3}}},
      {{{0, 1}, {1, 0}, {0, 3}, {1, 2}}},
      {{{0, 2}, {1, 3}, {1, 0}, {0, 1}}},
      {{{0, 3}, {0, 2}, {1, 1}, {1, 0}}},
  }};
  auto mul = [&](std::size_t x, std::size_t y) {
    const auto& [s, u] = table[x % 4][y % 4];
    return static_cast<Point>(u + 4 * ((x / 4 + y / 4 + static_cast<std::size_t>(s)) % 2));
  };
  std::vector<Permutation> gens;
  for (std::size_t g : {1u, 2u}) {
    std::vector<Point> im(8);
    for (std::size_t x = 0; x < 8; ++x) im[x] = mul(x, g);
    gens.emplace_back(std::move(im));
  }
  return PermGroup(8, std::move(gens), "Q8");
}

/// The five groups of order 8, each acting regularly.
inline std::vector<PermGroup> regular_order8() {
  const auto c2 = cyclic(2);
  return {cyclic(8).with_name("C8"), metacyclic_regular(4, 2, 1, "C4xC2"),
          direct_product(direct_product(c2, c2), c2).with_name("C2xC2xC2"), quaternion_regular(),
          metacyclic_regular(4, 2, 3, "D8_regular")};
}

/// Modular group of order 16: a⁸ = b² = 1, b⁻¹ab = a⁵, acting regularly.
inline PermGroup modular16_regular() { return metacyclic_regular(8, 2, 5, "M16"); }

/// Nonabelian group of order 21 acting regularly.
inline PermGroup frobenius21_regular() { return metacyclic_regular(7, 3, 2, "F21_regular"); }

/// Affine group x ↦ ax + b over Z_p (p prime, `primitive_root` a generator of Z_p^*).
inline PermGroup affine_line(std::size_t p, std::size_t primitive_root) {
  std::vector<Point> mul(p);
  for (std::size_t x = 0; x < p; ++x) mul[x] = static_cast<Point>(x * primitive_root % p);
  return PermGroup(p, {n_cycle(p), Permutation(mul)}, "AGL1_" + std::to_string(p));
}

/// S4 = AGL(2,2) on the 12 flags of the affine plane of order 2.
/// Flag (point p, line {p, q}) is the ordered pair (p, q), numbered 3p + rank of q among the others.
inline PermGroup affine_flags_order2() {
  auto index = [](Point p, Point q) { return static_cast<Point>(3 * p + (q < p ? q : q - 1)); };
  const PermGroup s4 = symmetric(4);
  std::vector<Permutation> gens;
  for (const auto& s : s4.generators()) {
    std::vector<Point> im(12);
    for (Point p = 0; p < 4; ++p)
      for (Point q = 0; q < 4; ++q)
        if (p != q) im[index(p, q)] = index(s.apply(p), s.apply(q));
    gens.emplace_back(std::move(im));
  }
  return PermGroup(12, std::move(gens), "AGL22_flags12");
}

/// AGL(2,q), q prime, on the flags of the affine plane of order q.
/// Point (x, y) is x + q·y; direction (0,1) is 0 and (1,m) is 1 + m; flag (point, direction) is point + q²·direction.
inline PermGroup affine_flags(std::size_t q) {
  for (std::size_t d = 2; d * d <= q; ++d)
    if (q % d == 0) throw InvalidArgument("affine_flags needs a prime order");
  const std::size_t pts = q * q;
  auto dir_index = [q](std::size_t dx, std::size_t dy) -> std::size_t {
    if (dx % q == 0) return 0;
    // scale so the first coordinate is 1
    std::size_t inv = 1;
    while (inv * dx % q != 1) ++inv;
    return 1 + dy * inv % q;
  };
  auto dir_vector = [](std::size_t d) -> std::pair<std::size_t, std::size_t> {
    return d == 0 ? std::pair<std::size_t, std::size_t>{0, 1} : std::pair<std::size_t, std::size_t>{1, d - 1};
  };
  // x ↦ A x + b with A = {{a, b}, {c, d}} acting on column vectors
  auto affine = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t d, std::size_t tx, std::size_t ty) {
    std::vector<Point> im(pts * (q + 1));
    for (std::size_t dir = 0; dir <= q; ++dir)
      for (std::size_t y = 0; y < q; ++y)
        for (std::size_t x = 0; x < q; ++x) {
          const std::size_t nx = (a * x + b * y + tx) % q, ny = (c * x + d * y + ty) % q;
          const auto [vx, vy] = dir_vector(dir);
          const std::size_t nd = dir_index((a * vx + b * vy) % q, (c * vx + d * vy) % q);
          im[x + q * y + pts * dir] = static_cast<Point>(nx + q * ny + pts * nd);
        }
    return Permutation(im);
  };
  std::size_t root = 1;
  for (std::size_t r = 2; r < q; ++r) {
    std::size_t k = 1, v = r;
    while (v != 1) {
      v = v * r % q;
      ++k;
    }
    if (k == q - 1) {
      root = r;
      break;
    }
  }
  std::vector<Permutation> gens{affine(1, 0, 0, 1, 1, 0), affine(1, 1, 0, 1, 0, 0), affine(1, 0, 1, 1, 0, 0)};
  if (q > 2) gens.push_back(affine(root, 0, 0, 1, 0, 0));
  return PermGroup(pts * (q + 1), std::move(gens), "AGL2_" + std::to_string(q) + "_flags");
}

/// GL(3,2) ≅ PSL(2,7) on the 7 points of the Fano plane, lines the translates of {1,2,4}.
inline PermGroup gl32_points() {
  return PermGroup(7, {n_cycle(7), Permutation::from_cycles(7, {{1, 2, 4}, {3, 6, 5}}),
                       Permutation::from_cycles(7, {{2, 4}, {5, 6}})}, "GL32_points7");
}

/// GL(3,2) on its 21 flags, as the action on cosets of the Borel subgroup
/// (stabiliser of the point 1 and the line {1,2,4}).
inline CosetAction gl32_flags() {
  const PermGroup g = gl32_points();
  const PermGroup borel = subgroup_where(g, [](const Permutation& e) {
    if (e.apply(1) != 1) return false;
    for (Point x : {1u, 2u, 4u})
      if (e.apply(x) != 1 && e.apply(x) != 2 && e.apply(x) != 4) return false;
    return true;
  });
  auto act = coset_action(g, borel.generators());
  act.group = act.group.with_name("GL32_flags21");
  return act;
}

/// A5 on the 15 cosets of a Klein four-subgroup.
inline CosetAction a5_on15() {
  const PermGroup a5 = alternating(5);
  auto act = coset_action(a5, {Permutation::from_cycles(5, {{0, 1}, {2, 3}}), Permutation::from_cycles(5, {{0, 2}, {1, 3}})});
  act.group = act.group.with_name("A5_on15");
  return act;
}

/// PGL(2,5) as a transitive subgroup of S6 (projective line with ∞ = 5).
inline std::vector<Permutation> pgl25_in_s6() {
  return {Permutation::from_cycles(6, {{0, 1, 2, 3, 4}}), Permutation::from_cycles(6, {{1, 2, 4, 3}}),
          Permutation::from_cycles(6, {{0, 5}, {1, 4}})};
}

/// S6 on 36 points: the product of its natural action and the action twisted by the outer
/// automorphism (cosets of PGL(2,5)). Point (a, b) is a + 6b.
inline PermGroup s6_square36() {
  const PermGroup s6 = symmetric(6);
  const auto twisted = coset_action(s6, pgl25_in_s6());
  std::vector<Permutation> gens;
  for (std::size_t s = 0; s < s6.generators().size(); ++s) {
    const auto& g1 = s6.generators()[s];
    const auto& g2 = twisted.group.generators()[s];
    std::vector<Point> im(36);
    for (Point b = 0; b < 6; ++b)
      for (Point a = 0; a < 6; ++a) im[pair_index(a, b, 6)] = pair_index(g1.apply(a), g2.apply(b), 6);
    gens.emplace_back(std::move(im));
  }
  return PermGroup(36, std::move(gens), "S6_square36");
}

/// The twisted degree-6 action of S6 on its own, with the same generator order as symmetric(6).
inline PermGroup s6_twisted() { return coset_action(symmetric(6), pgl25_in_s6()).group.with_name("S6_twisted"); }

}  // namespace blocklat::groups
