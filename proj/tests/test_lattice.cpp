#include <gtest/gtest.h>

#include "blocklat/lattice.hpp"
#include "oracles.hpp"

using namespace blocklat;

namespace {

// Brute-force modularity: a ≤ c implies a ∨ (b ∧ c) = (a ∨ b) ∧ c for all triples.
bool modular_naive(const AbstractLattice& l) {
  for (std::size_t a = 0; a < l.size(); ++a)
    for (std::size_t b = 0; b < l.size(); ++b)
      for (std::size_t c = 0; c < l.size(); ++c)
        if (l.leq(a, c) && l.join(a, l.meet(b, c)) != l.meet(l.join(a, b), c)) return false;
  return true;
}

// The lattice of all partitions of an n-set.
PartitionLattice full_partition_lattice(std::size_t n) {
  return PartitionLattice::from_closed(n, oracle::all_partitions(n));
}

}  // namespace

TEST(AbstractLattice, StandardExamples) {
  EXPECT_TRUE(AbstractLattice::pentagon().is_valid());
  EXPECT_FALSE(is_modular(AbstractLattice::pentagon()));
  EXPECT_TRUE(is_modular(AbstractLattice::diamond()));
  EXPECT_FALSE(is_distributive(AbstractLattice::diamond()));
  EXPECT_TRUE(is_distributive(AbstractLattice::chain(5)));
  EXPECT_TRUE(is_distributive(AbstractLattice::boolean(3)));
  EXPECT_EQ(AbstractLattice::boolean(3).size(), 8u);
  for (const auto& l : {AbstractLattice::pentagon(), AbstractLattice::diamond(), AbstractLattice::boolean(3)})
    EXPECT_EQ(is_modular(l), modular_naive(l));
}

TEST(AbstractLattice, ForbiddenSublatticeWitness) {
  const auto p = find_forbidden_sublattice(AbstractLattice::pentagon());
  ASSERT_TRUE(p);
  EXPECT_EQ(p->kind, ForbiddenKind::pentagon);
  const auto l = AbstractLattice::pentagon();
  const auto [bot, a, b, c, top] = p->elements;
  EXPECT_TRUE(l.leq(a, c) && a != c);
  EXPECT_EQ(l.meet(a, b), bot);
  EXPECT_EQ(l.meet(c, b), bot);
  EXPECT_EQ(l.join(a, b), top);
  EXPECT_EQ(l.join(c, b), top);

  const auto d = find_forbidden_sublattice(AbstractLattice::diamond());
  ASSERT_TRUE(d);
  EXPECT_EQ(d->kind, ForbiddenKind::diamond);
  EXPECT_FALSE(find_forbidden_sublattice(AbstractLattice::boolean(3)));
}

TEST(AbstractLattice, JoinIrreduciblesAndBirkhoff) {
  const auto b3 = AbstractLattice::boolean(3);
  EXPECT_EQ(join_indecomposables(b3).size(), 3u);
  EXPECT_EQ(ji_poset(b3).size(), 3u);
  EXPECT_TRUE(birkhoff_check(b3).ok);

  const auto c4 = AbstractLattice::chain(4);
  const auto jis = join_indecomposables(c4);
  EXPECT_EQ(jis.size(), 3u);
  for (const auto& j : jis) EXPECT_EQ(predecessor(c4, j.element), j.predecessor);
  EXPECT_TRUE(birkhoff_check(c4).ok);

  EXPECT_FALSE(birkhoff_check(AbstractLattice::pentagon()).ok);
  EXPECT_THROW(predecessor(b3, b3.top()), InvalidArgument);
}

TEST(AbstractLattice, DownsetLatticeRoundTrip) {
  const std::vector<Poset> posets{Poset::from_covers(3, {{0, 2}, {1, 2}}), Poset::chain(3), Poset::antichain(3),
                                  Poset::from_covers(4, {{0, 2}, {1, 2}, {1, 3}})};
  for (const auto& p : posets) {
    const auto l = downset_lattice(p);
    EXPECT_TRUE(l.is_valid());
    EXPECT_TRUE(is_distributive(l));
    const auto r = birkhoff_check(l);
    EXPECT_TRUE(r.ok) << r.violation;
    EXPECT_TRUE(isomorphic(ji_poset(l), p));
  }
}

TEST(PartitionLattice, FullLatticeOfFourSetIsModularFailing) {
  const auto l = full_partition_lattice(4);
  EXPECT_EQ(l.size(), 15u);
  EXPECT_TRUE(l.tables().is_valid());
  EXPECT_FALSE(is_modular(l));
  EXPECT_TRUE(l[l.bottom()].is_discrete());
  EXPECT_TRUE(l[l.top()].is_universal());
  for (std::size_t a = 0; a < l.size(); ++a)
    for (std::size_t b = 0; b < l.size(); ++b) {
      EXPECT_EQ(l[l.meet(a, b)], meet(l[a], l[b]));
      EXPECT_EQ(l[l.join(a, b)], join(l[a], l[b]));
      EXPECT_EQ(l.leq(a, b), refines(l[a], l[b]));
    }
  EXPECT_TRUE(l.first_non_commuting_pair());
}

TEST(PartitionLattice, CloseGeneratesSublattice) {
  const auto rows = Partition::from_blocks(4, {{0, 1}, {2, 3}});
  const auto cols = Partition::from_blocks(4, {{0, 2}, {1, 3}});
  const auto l = close(4, {rows, cols});
  EXPECT_EQ(l.size(), 4u);
  EXPECT_TRUE(is_distributive(l));
  EXPECT_FALSE(l.first_non_commuting_pair());
  const auto l2 = close(3, {Partition::from_blocks(3, {{0, 1}, {2}}), Partition::from_blocks(3, {{0}, {1, 2}})});
  EXPECT_EQ(l2.size(), 4u);
  EXPECT_TRUE(l2.first_non_commuting_pair());
  EXPECT_EQ(l.hasse().size(), 4u);
}

TEST(PartitionLattice, DotOutput) {
  const auto l = close(4, {Partition::from_blocks(4, {{0, 1}, {2, 3}})});
  const auto dot = to_dot(l, "g");
  EXPECT_NE(dot.find("digraph \"g\""), std::string::npos);
  EXPECT_NE(dot.find("rankdir=BT"), std::string::npos);
  EXPECT_NE(dot.find("->"), std::string::npos);
}
