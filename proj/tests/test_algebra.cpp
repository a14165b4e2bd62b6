#include "doctest.h"

#include <algorithm>

#include "uniclone/clone_power.hpp"
#include "uniclone/congruence.hpp"

using namespace uniclone;

namespace {

SetPartition P(int n, std::vector<std::vector<int>> blocks) {
  return SetPartition::fromBlocks(n, blocks);
}

Elem ap(const Algebra& a, const FunctionTable& t, std::initializer_list<Elem> args) {
  std::vector<Elem> v(args);
  return a.apply(t, v);
}

} // namespace

TEST_CASE("function tables") {
  FunctionTable c = FunctionTable::constant(3, 2);
  CHECK(c.arity == 0);
  CHECK(c.apply({}) == 2);

  FunctionTable id = FunctionTable::identity(3);
  std::vector<int> one{1};
  CHECK(id.apply(one) == 1);

  FunctionTable p1 = FunctionTable::projection(2, 2, 1);
  std::vector<int> args{1, 0};
  CHECK(p1.apply(args) == 0);

  CHECK_THROWS_AS((void)id.apply(args), Error); // arity mismatch
  CHECK_THROWS_AS((void)FunctionTable(2, 1, {0, 2}), Error); // entry out of range

  // fromCode digits round-trip
  FunctionTable t = FunctionTable::fromCode(3, 2, 1234);
  std::uint64_t code = 0, p = 1;
  for (auto e : t.entries) {
    code += p * e;
    p *= 3;
  }
  CHECK(code == 1234);
}

TEST_CASE("pairing tables are injective on realized pairs") {
  std::vector<std::uint8_t> f{0, 0, 1}, g{1, 2, 1};
  FunctionTable pt = pairingTable(3, f, g);
  std::set<int> seen;
  for (std::size_t i = 0; i < f.size(); ++i)
    seen.insert(pt.entries[f[i] * 3 + g[i]]);
  CHECK(seen.size() == 3);

  // more realized pairs than base elements fails loudly
  std::vector<std::uint8_t> a{0, 0, 1, 1}, b{0, 1, 0, 1};
  CHECK_THROWS_AS((void)pairingTable(3, a, b), Error);
}

TEST_CASE("omega applies tables directly") {
  Algebra o = Algebra::omega(3);
  CHECK(o.size() == 3);
  CHECK(o.constantElem(2) == 2);
  FunctionTable succ(3, 1, {1, 2, 0});
  CHECK(ap(o, succ, {2}) == 0);
}

TEST_CASE("clone powers apply pointwise") {
  Algebra cp = buildClonePower(3, 3, PartitionFilter::full(3));
  CHECK(cp.size() == 27);
  const ClonePowerData* data = cp.clonePower();
  FunctionTable succ(3, 1, {1, 2, 0});
  for (Elem x = 0; x < cp.size(); ++x) {
    Elem y = ap(cp, succ, {x});
    for (int i = 0; i < 3; ++i) CHECK(data->carrier[y][i] == (data->carrier[x][i] + 1) % 3);
  }
  // constants are the constant functions
  for (int a = 0; a < 3; ++a) {
    Elem e = cp.constantElem(a);
    for (int i = 0; i < 3; ++i) CHECK(data->carrier[e][i] == a);
  }
}

TEST_CASE("products apply componentwise and separate the constants") {
  Algebra o = Algebra::omega(3);
  Algebra prod = Algebra::makeProduct(o, o);
  CHECK(prod.size() == 9);

  // the pair (a-hat, b-hat) is fixed by an i with image {a,b} but is not a
  // constant of the product
  FunctionTable i = FunctionTable(3, 1, {0, 1, 0});
  Elem mixed = 0 * 3 + 1; // (c0, c1)
  CHECK(ap(prod, i, {mixed}) == mixed);
  CHECK(mixed != prod.constantElem(0));
  CHECK(mixed != prod.constantElem(1));

  CHECK_THROWS_AS((void)Algebra::makeProduct(o, Algebra::omega(2)), Error);

  // product with a one-element algebra is an isomorphic copy
  Algebra one = Algebra::makeQuotient(o, SetPartition::single(3));
  Algebra po = Algebra::makeProduct(o, one);
  CHECK(po.size() == o.size());
  Homomorphism h{po, o, {}};
  h.map.resize(po.size());
  for (Elem x = 0; x < po.size(); ++x) h.map[x] = x / one.size();
  CHECK(isBijective(h));
  CHECK(isHomomorphism(h, TableSet::forBase(3)));
}

TEST_CASE("generated subalgebras") {
  TableSet tables = TableSet::forBase(3);
  Algebra cp = buildClonePower(3, 3, PartitionFilter::full(3));
  const ClonePowerData* data = cp.clonePower();

  // no seeds: the constants
  std::vector<Elem> none;
  auto consts = generateSubalgebra(cp, none, tables);
  CHECK(consts.size() == 3);

  // the seed (0,0,1) closes to the nine functions constant on {0,1}
  Elem seed = -1;
  for (Elem x = 0; x < cp.size(); ++x)
    if (data->carrier[x] == std::vector<std::uint8_t>{0, 0, 1}) seed = x;
  REQUIRE(seed >= 0);
  std::vector<Elem> seeds{seed};
  auto closure = generateSubalgebra(cp, seeds, tables);
  CHECK(closure.size() == 9);
  for (Elem x : closure) CHECK(data->carrier[x][0] == data->carrier[x][1]);

  // the literal table loop agrees with the image enumeration
  CHECK(closure == generateSubalgebraLiteral(cp, seeds, tables));

  // seeding with the whole carrier returns it
  std::vector<Elem> all(cp.size());
  for (Elem x = 0; x < cp.size(); ++x) all[x] = x;
  CHECK(generateSubalgebra(cp, all, tables).size() == 27);
}

TEST_CASE("fast closure matches the literal loop on products and quotients") {
  TableSet tables = TableSet::forBase(2);
  Algebra o = Algebra::omega(2);
  Algebra prod = Algebra::makeProduct(o, buildClonePower(2, 2, PartitionFilter::full(2)));
  for (Elem s = 0; s < prod.size(); ++s) {
    std::vector<Elem> seeds{s};
    CHECK(generateSubalgebra(prod, seeds, tables) ==
          generateSubalgebraLiteral(prod, seeds, tables));
  }
}

TEST_CASE("canonical embedding sends a to constant-a") {
  TableSet t3 = TableSet::forBase(3);
  Algebra o = Algebra::omega(3);
  Homomorphism e = canonicalEmbedding(o, t3);
  CHECK(e.map == std::vector<Elem>{0, 1, 2});

  Algebra cp = buildClonePower(3, 3, PartitionFilter::principal(P(3, {{0, 1}, {2}})));
  Homomorphism e2 = canonicalEmbedding(cp, t3);
  for (int a = 0; a < 3; ++a) CHECK(e2.map[a] == cp.constantElem(a));

  // e is the only homomorphism from Omega(A)
  auto homs = enumerateHomomorphisms(o, cp, {}, t3);
  REQUIRE(homs.size() == 1);
  CHECK(homs[0].map == e2.map);
}

TEST_CASE("first isomorphism theorem on a concrete homomorphism") {
  TableSet t3 = TableSet::forBase(3);
  Algebra cp = buildClonePower(3, 3, PartitionFilter::full(3));
  Algebra o = Algebra::omega(3);
  // evaluation at index 1 is a surjective homomorphism
  Homomorphism h{cp, o, {}};
  h.map.resize(cp.size());
  for (Elem x = 0; x < cp.size(); ++x) h.map[x] = cp.clonePower()->carrier[x][1];
  REQUIRE(isHomomorphism(h, t3));

  SetPartition ker = kernelPartition(h);
  Algebra quot = quotientAlgebra(cp, ker, t3);
  CHECK(quot.size() == 3);
  // [x] -> h(x) is the canonical isomorphism
  Homomorphism iso{quot, o, {}};
  iso.map.resize(quot.size());
  for (Elem c = 0; c < quot.size(); ++c) iso.map[c] = h.map[quot.quotientData()->reps[c]];
  CHECK(isBijective(iso));
  CHECK(isHomomorphism(iso, t3));
}

TEST_CASE("single generators exist at |A| >= |I|") {
  TableSet t3 = TableSet::forBase(3);
  Algebra cp = buildClonePower(3, 3, PartitionFilter::full(3));
  auto gen = findSingleGenerator(cp, t3);
  REQUIRE(gen.has_value());
  std::vector<Elem> s{*gen};
  CHECK(generateSubalgebra(cp, s, t3).size() == 27);

  Algebra prod = Algebra::makeProduct(Algebra::omega(3), Algebra::omega(3));
  CHECK(findSingleGenerator(prod, t3).has_value());
}

TEST_CASE("witness closure expresses every member over the generators") {
  TableSet t3 = TableSet::forBase(3);
  Algebra prod = Algebra::makeProduct(Algebra::omega(3), Algebra::omega(3));
  std::vector<Elem> gens{1 * 3 + 2}; // (c1, c2) generates everything
  GeneratedWithWitnesses gw = generateWithWitnesses(prod, gens, t3);
  CHECK(gw.members.size() == 9);
  for (std::size_t i = 0; i < gw.members.size(); ++i)
    CHECK(prod.apply(gw.witnesses[i], gens) == gw.members[i]);
}

TEST_CASE("pointwise views index the carrier") {
  Algebra cp = buildClonePower(2, 3, PartitionFilter::full(3));
  auto view = pointwiseView(cp);
  REQUIRE(view.has_value());
  for (Elem x = 0; x < cp.size(); ++x) CHECK(view->elemOf(view->vec[x]) == x);
  // quotients have no pointwise view
  Algebra quot = Algebra::makeQuotient(cp, SetPartition::single(cp.size()));
  CHECK_FALSE(pointwiseView(quot).has_value());
}
