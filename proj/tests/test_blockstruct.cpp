#include <gtest/gtest.h>

#include <random>

#include "blocklat/blockstruct.hpp"
#include "blocklat/groups.hpp"
#include "oracles.hpp"

using namespace blocklat;

namespace {

OBS grid2x2() { return cross(trivial_obs(2), trivial_obs(2)); }

// S_R = R minus every relation strictly contained in R, computed over all lattice elements.
AssociationScheme inclusion_exclusion_scheme(const OBS& b) {
  const auto& l = b.lattice();
  const std::size_t n = b.degree();
  std::vector<std::uint32_t> cls(n * n, 0);
  std::vector<int> hits(n * n, 0);
  for (std::size_t e = 0; e < l.size(); ++e)
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        if (!l[e].same_block(x, y)) continue;
        bool inner = false;
        for (std::size_t f = 0; f < l.size() && !inner; ++f)
          inner = f != e && l.leq(f, e) && l[f].same_block(x, y);
        if (!inner) {
          cls[x * n + y] = static_cast<std::uint32_t>(e);
          ++hits[x * n + y];
        }
      }
  for (int h : hits) EXPECT_EQ(h, 1);
  return canonical_numbering(AssociationScheme{n, 0, cls});
}

}  // namespace

TEST(Obs, Validation) {
  const auto g = validate_obs(4, {Partition::from_blocks(4, {{0, 1}, {2, 3}}), Partition::from_blocks(4, {{0, 2}, {1, 3}})});
  ASSERT_TRUE(g.ok());
  EXPECT_EQ(g.value().size(), 4u);

  const auto nu = validate_obs(3, {Partition::from_blocks(3, {{0}, {1, 2}})});
  ASSERT_FALSE(nu.ok());
  EXPECT_EQ(nu.violation->axiom, ObsAxiom::non_uniform);

  // same point and same line on the flags of the order-2 affine plane
  std::vector<std::uint32_t> point(12), line(12), parallel(12);
  for (Point p = 0; p < 4; ++p)
    for (Point q = 0; q < 4; ++q)
      if (p != q) {
        const Point f = 3 * p + (q < p ? q : q - 1);
        point[f] = p;
        line[f] = std::min(p, q) * 4 + std::max(p, q);
        parallel[f] = p == 0 ? q : q == 0 ? p : 6 - p - q;
      }
  const auto flags = validate_obs(12, {Partition(point), Partition(line)});
  ASSERT_FALSE(flags.ok());
  EXPECT_EQ(flags.violation->axiom, ObsAxiom::non_commuting);
  EXPECT_NE(compose_relations(Partition(point), Partition(line)), compose_relations(Partition(line), Partition(point)));
  // point and line alone close to {E, point, line, U}; the parallel classes complete the pentagon
  EXPECT_EQ(flags.lattice.size(), 4u);
  const auto pent = close(12, {Partition(point), Partition(line), Partition(parallel)});
  EXPECT_EQ(pent.size(), 5u);
  EXPECT_FALSE(is_modular(pent));
  EXPECT_TRUE(refines(Partition(line), Partition(parallel)));
}

TEST(Obs, CrossAndNest) {
  EXPECT_EQ(grid2x2().size(), 4u);
  const auto chain = nest(trivial_obs(3), trivial_obs(2));
  ASSERT_EQ(chain.size(), 3u);
  EXPECT_EQ(chain[1].shape(), "3x2");
  EXPECT_EQ(chain[1].block_count(), 3u);
  const auto split = nest(grid2x2(), trivial_obs(2));
  EXPECT_EQ(split.size(), 5u);
  EXPECT_EQ(split.size(), downsets(Poset::from_covers(3, {{0, 1}, {0, 2}})).size());
  // size laws
  for (const auto& [b1, b2] : {std::pair{grid2x2(), trivial_obs(3)}, std::pair{chain, grid2x2()}}) {
    EXPECT_EQ(cross(b1, b2).size(), b1.size() * b2.size());
    EXPECT_EQ(nest(b1, b2).size(), b1.size() + b2.size() - 1);
  }
}

TEST(Obs, ModularLawHoldsOnFixtures) {
  for (const auto& b : {grid2x2(), nest(grid2x2(), trivial_obs(3)), cross(nest(trivial_obs(2), trivial_obs(2)), trivial_obs(3)),
                        validate_obs(9, latin_square_partitions(3, 2)).value()}) {
    const auto& l = b.lattice();
    for (std::size_t x = 0; x < l.size(); ++x)
      for (std::size_t y = 0; y < l.size(); ++y)
        for (std::size_t z = 0; z < l.size(); ++z)
          if (refines(l[x], l[z])) EXPECT_EQ(join(l[x], meet(l[y], l[z])), meet(join(l[x], l[y]), l[z]));
  }
}

TEST(Pbs, FromPoset) {
  const auto c = pbs_from_poset(Poset::chain(2), {2, 2});
  EXPECT_EQ(c.obs.size(), 3u);
  EXPECT_EQ(c.obs[1].block_count(), 2u);
  const auto a = pbs_from_poset(Poset::antichain(2), {2, 3});
  EXPECT_EQ(a.obs.size(), 4u);
  EXPECT_EQ(a.obs.degree(), 6u);
  EXPECT_TRUE(is_pbs(a.obs));
  const auto v = Poset::from_covers(3, {{0, 2}, {1, 2}});
  const auto vp = pbs_from_poset(v, {2, 2, 2});
  EXPECT_EQ(vp.obs.size(), 5u);
  EXPECT_TRUE(isomorphic(ji_poset(vp.obs.lattice().tables()), v));
  EXPECT_TRUE(birkhoff_check(vp.obs.lattice().tables()).ok);
  EXPECT_THROW(pbs_from_poset(v, {2, 1, 2}), InvalidArgument);
}

TEST(Pbs, RegularKleinFourIsNotPbs) {
  const auto l = close(4, oracle::brute_force_invariant_partitions(direct_product(groups::cyclic(2), groups::cyclic(2))));
  const auto b = validate_obs(l);
  ASSERT_TRUE(b.ok());
  EXPECT_EQ(b.value().size(), 5u);
  EXPECT_FALSE(is_pbs(b.value()));
  const auto w = find_forbidden_sublattice(l.tables());
  ASSERT_TRUE(w);
  EXPECT_EQ(w->kind, ForbiddenKind::diamond);
}

TEST(Scheme, GridAndTrivial) {
  const auto s = association_scheme(grid2x2());
  EXPECT_EQ(s.classes, 4u);
  EXPECT_TRUE(verify_scheme(s));
  EXPECT_EQ(association_scheme(trivial_obs(5)).classes, 2u);
  const auto chain4 = association_scheme(nest(trivial_obs(2), trivial_obs(2)));
  EXPECT_EQ(chain4.classes, 3u);
  EXPECT_FALSE(schemes_equal(s, chain4));
}

TEST(Scheme, FastClassesMatchInclusionExclusion) {
  for (const auto& b : {grid2x2(), nest(grid2x2(), trivial_obs(3)), cross(trivial_obs(3), nest(trivial_obs(2), trivial_obs(2))),
                        validate_obs(9, latin_square_partitions(3, 2)).value(),
                        validate_obs(9, latin_square_partitions(3, 1)).value(),
                        pbs_from_poset(Poset::from_covers(3, {{0, 2}, {1, 2}}), {2, 3, 2}).obs}) {
    const auto s = association_scheme(b);
    EXPECT_TRUE(verify_scheme(s));
    EXPECT_EQ(s.class_of, inclusion_exclusion_scheme(b).class_of);
  }
}

TEST(Scheme, LatinSquares) {
  for (std::size_t q : {2u, 3u}) {
    const auto complete = derive_scheme(validate_obs(q * q, latin_square_partitions(q, q - 1)).value());
    EXPECT_EQ(complete.scheme.nondiagonal_classes(), q + 1);
    ASSERT_EQ(complete.empty_strata.size(), 1u);
    EXPECT_TRUE(verify_scheme(complete.scheme));
    const auto omitted = derive_scheme(validate_obs(q * q, latin_square_partitions(q, q - 2)).value());
    EXPECT_TRUE(omitted.empty_strata.empty());
  }
  const auto with_letters = association_scheme(validate_obs(4, latin_square_partitions(2, 1)).value());
  const auto without = association_scheme(validate_obs(4, latin_square_partitions(2, 0)).value());
  EXPECT_TRUE(schemes_equal(with_letters, without));
  EXPECT_EQ(with_letters.nondiagonal_classes(), 3u);
}

TEST(Scheme, CheckerRejectsBrokenSchemes) {
  auto s = association_scheme(grid2x2());
  auto asym = s;
  std::swap(asym.class_of[1], asym.class_of[2]);
  EXPECT_FALSE(verify_scheme(asym));
  // 4-point path: distance classes of a path do not form a scheme
  AssociationScheme path{4, 4, {0, 1, 2, 3, 1, 0, 1, 2, 2, 1, 0, 1, 3, 2, 1, 0}};
  EXPECT_FALSE(verify_scheme(path));
  EXPECT_EQ(to_matrix_text(s).size(), 4u * 8u);
}

TEST(ProjectionFibre, Examples) {
  const auto pg = Partition::from_blocks(2, {{0}, {1}});
  const auto prod = product_partition(Partition::universal(2), Partition::discrete(3));
  EXPECT_EQ(projection_partition(prod, 2, 3, Side::gamma), Partition::universal(2));
  EXPECT_EQ(fibre_partition(prod, 2, 3, Side::gamma), Partition::universal(2));
  EXPECT_EQ(projection_partition(prod, 2, 3, Side::delta), Partition::discrete(3));
  // diagonal orbits of C2 x C2 on the 2x2 grid
  const auto diag = Partition::from_blocks(4, {{0, 3}, {1, 2}});
  EXPECT_TRUE(projection_partition(diag, 2, 2, Side::gamma).is_universal());
  EXPECT_EQ(fibre_partition(diag, 2, 2, Side::gamma), pg);
  EXPECT_THROW(projection_partition(Partition::from_blocks(4, {{0, 1, 2}, {3}}), 2, 2, Side::gamma), InvalidArgument);
}

TEST(ProjectionFibre, FibreEqualsProjectionIffProduct) {
  const auto c2 = groups::cyclic(2), c3 = groups::cyclic(3), s3 = groups::symmetric(3);
  for (const auto& [g, h] : {std::pair{c2, c2}, std::pair{c2, c3}, std::pair{s3, s3}}) {
    const std::size_t a = g.degree(), b = h.degree();
    const auto inv = oracle::brute_force_invariant_partitions(direct_product(g, h));
    for (const auto& p : inv) {
      const bool same = projection_partition(p, a, b, Side::gamma) == fibre_partition(p, a, b, Side::gamma) &&
                        projection_partition(p, a, b, Side::delta) == fibre_partition(p, a, b, Side::delta);
      const bool is_product = product_partition(fibre_partition(p, a, b, Side::gamma),
                                                fibre_partition(p, a, b, Side::delta)) == p;
      EXPECT_EQ(same, is_product) << p.shape();
    }
  }
}
