#include "doctest.h"

#include "uniclone/clone_power.hpp"
#include "uniclone/congruence.hpp"

using namespace uniclone;

namespace {

SetPartition P(int n, std::vector<std::vector<int>> blocks) {
  return SetPartition::fromBlocks(n, blocks);
}

// literal compatibility: scan every declared table over all argument tuples
// with one slot swept along a related pair; the oracle the engine's image
// enumeration is checked against
bool literalCompatible(const Algebra& alg, const SetPartition& theta, const TableSet& tables) {
  const int m = alg.size();
  Elem u[2], v[2];
  for (Elem x = 0; x < m; ++x)
    for (Elem y = 0; y < m; ++y) {
      if (!theta.sameBlock(x, y)) continue;
      for (const auto& t : tables.unary()) {
        u[0] = x;
        v[0] = y;
        if (!theta.sameBlock(alg.apply(t, std::span<const Elem>(u, 1)),
                             alg.apply(t, std::span<const Elem>(v, 1))))
          return false;
      }
      for (Elem z = 0; z < m; ++z)
        for (const auto& t : tables.binary()) {
          u[0] = x; u[1] = z; v[0] = y; v[1] = z;
          if (!theta.sameBlock(alg.apply(t, std::span<const Elem>(u, 2)),
                               alg.apply(t, std::span<const Elem>(v, 2))))
            return false;
          u[0] = z; u[1] = x; v[0] = z; v[1] = y;
          if (!theta.sameBlock(alg.apply(t, std::span<const Elem>(u, 2)),
                               alg.apply(t, std::span<const Elem>(v, 2))))
            return false;
        }
    }
  return true;
}

} // namespace

TEST_CASE("one element algebras have exactly one congruence") {
  Algebra o = Algebra::omega(2);
  Algebra one = Algebra::makeQuotient(o, SetPartition::single(2));
  CongruenceEngine eng(one, TableSet::forBase(2));
  CHECK(eng.lattice().size() == 1);
  Classification c = classify(eng);
  CHECK_FALSE(c.simple);
  CHECK_FALSE(c.subdirectly_irreducible);
  CHECK_FALSE(c.directly_indecomposable);
}

TEST_CASE("omega is simple") {
  CongruenceEngine eng(Algebra::omega(3), TableSet::forBase(3));
  CHECK(eng.lattice().size() == 2);
  Classification c = classify(eng);
  CHECK(c.simple);
  CHECK(c.subdirectly_irreducible);
  CHECK(c.directly_indecomposable);
}

TEST_CASE("clone power over a two block filter has four congruences") {
  TableSet t3 = TableSet::forBase(3);
  Algebra cp = buildClonePower(3, 3, PartitionFilter::principal(P(3, {{0, 1}, {2}})));
  CongruenceEngine eng(cp, t3);
  CHECK(eng.lattice().size() == 4); // matches the four filters of the 4-element algebra
}

TEST_CASE("the congruence lattice matches a brute force sweep at base 2") {
  TableSet t2 = TableSet::forBase(2);
  Algebra cp = buildClonePower(2, 3, PartitionFilter::full(3)); // carrier 8
  CongruenceEngine eng(cp, t2);
  const auto& lat = eng.lattice();

  int compatible_count = 0;
  for (const auto& theta : allPartitions(cp.size()))
    if (literalCompatible(cp, theta, t2)) {
      ++compatible_count;
      CHECK(std::find(lat.begin(), lat.end(), theta) != lat.end());
    }
  CHECK(compatible_count == static_cast<int>(lat.size()));
}

TEST_CASE("engine lattice members pass the literal scan at base 3") {
  TableSet t3 = TableSet::forBase(3);
  Algebra cp = buildClonePower(3, 3, PartitionFilter::principal(P(3, {{0, 1}, {2}})));
  CongruenceEngine eng(cp, t3);
  for (const auto& theta : eng.lattice()) CHECK(literalCompatible(cp, theta, t3));
  // and a non-member fails it
  SetPartition bogus = eng.lattice()[1].blockCount() > 1
                           ? P(cp.size(), {{0, 1}, {2, 3, 4, 5, 6, 7, 8}})
                           : SetPartition::discrete(cp.size());
  if (std::find(eng.lattice().begin(), eng.lattice().end(), bogus) == eng.lattice().end())
    CHECK_FALSE(literalCompatible(cp, bogus, t3));
}

TEST_CASE("principal congruences are the least ones containing the pair") {
  TableSet t3 = TableSet::forBase(3);
  Algebra cp = buildClonePower(3, 3, PartitionFilter::principal(P(3, {{0, 1}, {2}})));
  CongruenceEngine eng(cp, t3);
  const auto& lat = eng.lattice();
  for (Elem a = 0; a < cp.size(); ++a)
    for (Elem b = a + 1; b < cp.size(); ++b) {
      SetPartition cg = eng.principal(a, b);
      CHECK(cg.sameBlock(a, b));
      CHECK(eng.compatible(cg));
      for (const auto& theta : lat)
        if (theta.sameBlock(a, b)) CHECK(cg.refines(theta));
    }
}

TEST_CASE("quotients require compatible partitions") {
  TableSet t3 = TableSet::forBase(3);
  Algebra o = Algebra::omega(3);
  CHECK_THROWS_AS((void)quotientAlgebra(o, P(3, {{0, 1}, {2}}), t3), Error);
  Algebra q = quotientAlgebra(o, SetPartition::single(3), t3);
  CHECK(q.size() == 1);
  Algebra same = quotientAlgebra(o, SetPartition::discrete(3), t3);
  CHECK(same.size() == 3);
}

TEST_CASE("congruences of the workbench algebras permute") {
  TableSet t3 = TableSet::forBase(3);
  for (const auto& p : allPartitions(3)) {
    Algebra cp = buildClonePower(3, 3, PartitionFilter::principal(p));
    CongruenceEngine eng(cp, t3);
    CHECK(congruencesPermute(eng));
  }
  Algebra prod = Algebra::makeProduct(Algebra::omega(3), Algebra::omega(3));
  CongruenceEngine peng(prod, t3);
  CHECK(congruencesPermute(peng));
}

TEST_CASE("products of simple algebras decompose") {
  TableSet t3 = TableSet::forBase(3);
  Algebra prod = Algebra::makeProduct(Algebra::omega(3), Algebra::omega(3));
  CongruenceEngine eng(prod, t3);
  Classification c = classify(eng);
  CHECK_FALSE(c.simple);
  CHECK_FALSE(c.subdirectly_irreducible);
  CHECK_FALSE(c.directly_indecomposable);
  auto pair = findFactorPair(eng);
  REQUIRE(pair.has_value());
  CHECK(pair->first.meetWith(pair->second).isDiscrete());
  CHECK(relationalCompositionsEqual(pair->first, pair->second));
}

TEST_CASE("relational composition") {
  SetPartition a = P(4, {{0, 1}, {2}, {3}});
  SetPartition b = P(4, {{1, 2}, {0}, {3}});
  // a o b reaches 0 -> 2 but b o a does not
  CHECK_FALSE(relationalCompositionsEqual(a, b));
  CHECK(relationalCompositionsEqual(a, a));
  CHECK(relationalCompositionsEqual(a, SetPartition::discrete(4)));
  CHECK(relationalCompositionsEqual(a, SetPartition::single(4)));
}
