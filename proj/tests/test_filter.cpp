#include "doctest.h"

#include <algorithm>
#include <set>

#include "uniclone/filter.hpp"

using namespace uniclone;

namespace {

SetPartition P(int n, std::vector<std::vector<int>> blocks) {
  return SetPartition::fromBlocks(n, blocks);
}

} // namespace

TEST_CASE("generated filters are principal at the meet") {
  SetPartition m = P(3, {{0, 1}, {2}});
  PartitionFilter f = PartitionFilter::principal(m);
  CHECK(f.contains(m));
  CHECK(f.contains(SetPartition::single(3)));
  CHECK_FALSE(f.contains(SetPartition::discrete(3)));
  CHECK(f.members().size() == 2); // m and the single block

  // the discrete partition generates everything
  CHECK(PartitionFilter::full(3).members().size() == 5);

  // two crossing generators meet to the discrete partition
  PartitionFilter g = PartitionFilter::generate(3, {P(3, {{0, 1}, {2}}), P(3, {{0, 2}, {1}})});
  CHECK(g.generatorMeet() == SetPartition::discrete(3));
  CHECK(g.members().size() == 5);
  for (const auto& p : allPartitions(3)) CHECK(g.contains(p));

  CHECK_THROWS_AS((void)PartitionFilter::generate(0, {}), Error);
  CHECK_THROWS_AS((void)PartitionFilter::generate(3, {SetPartition::discrete(4)}), Error);
}

TEST_CASE("filter membership is meet refinement") {
  PartitionFilter f = PartitionFilter::generate(4, {P(4, {{0, 1}, {2, 3}}), P(4, {{0, 1, 2}, {3}})});
  CHECK(f.contains(f.generatorMeet()));
  for (const auto& gen : f.generators()) CHECK(f.contains(gen));
  CHECK_FALSE(f.contains(SetPartition::discrete(4)));
}

TEST_CASE("block algebra of a principal filter") {
  BlockBooleanAlgebra ba =
      BlockBooleanAlgebra::fromFilter(PartitionFilter::principal(P(3, {{0, 1}, {2}})));
  CHECK(ba.size() == 4);
  CHECK(ba.element(0) == 0);       // empty
  CHECK(ba.containsSubset(0b011)); // {0,1}
  CHECK(ba.containsSubset(0b100)); // {2}
  CHECK(ba.containsSubset(0b111)); // ground
  CHECK(ba.atoms().size() == 2);

  // full filter gives the full power set
  BlockBooleanAlgebra full = BlockBooleanAlgebra::fromFilter(PartitionFilter::full(3));
  CHECK(full.size() == 8);

  // trivial filter gives {empty, ground}
  BlockBooleanAlgebra triv = BlockBooleanAlgebra::fromFilter(PartitionFilter::trivial(3));
  CHECK(triv.size() == 2);
}

TEST_CASE("block algebra equals the unions of meet blocks") {
  // independent route: every union of blocks of the generator meet, plus
  // the empty set
  for (const auto& p : allPartitions(4)) {
    PartitionFilter f = PartitionFilter::principal(p);
    BlockBooleanAlgebra ba = BlockBooleanAlgebra::fromFilter(f);
    std::vector<Subset> blocks;
    for (const auto& b : p.blocks()) {
      Subset m = 0;
      for (int x : b) m |= (1ULL << x);
      blocks.push_back(m);
    }
    std::set<Subset> expect{0};
    for (std::size_t sel = 1; sel < (1u << blocks.size()); ++sel) {
      Subset u = 0;
      for (std::size_t i = 0; i < blocks.size(); ++i)
        if (sel & (1u << i)) u |= blocks[i];
      expect.insert(u);
    }
    CHECK(std::vector<Subset>(expect.begin(), expect.end()) == ba.elements());
  }
}

TEST_CASE("filters of a block algebra") {
  auto two = std::make_shared<BlockBooleanAlgebra>(
      BlockBooleanAlgebra::fromFilter(PartitionFilter::trivial(3)));
  auto fs2 = allBAFilters(two);
  CHECK(fs2.size() == 2);
  int ultras = 0, propers = 0;
  for (const auto& z : fs2) {
    ultras += z.ultra;
    propers += z.proper;
  }
  CHECK(ultras == 1);
  CHECK(propers == 1);

  auto four = std::make_shared<BlockBooleanAlgebra>(
      BlockBooleanAlgebra::fromFilter(PartitionFilter::principal(P(3, {{0, 1}, {2}}))));
  auto fs4 = allBAFilters(four);
  CHECK(fs4.size() == 4);
  CHECK(std::count_if(fs4.begin(), fs4.end(), [](const BAFilter& z) { return z.ultra; }) == 2);
  CHECK(std::count_if(fs4.begin(), fs4.end(), [](const BAFilter& z) { return !z.proper; }) == 1);

  auto eight = std::make_shared<BlockBooleanAlgebra>(
      BlockBooleanAlgebra::fromFilter(PartitionFilter::full(3)));
  auto fs8 = allBAFilters(eight);
  CHECK(fs8.size() == 8);
  CHECK(std::count_if(fs8.begin(), fs8.end(), [](const BAFilter& z) { return z.ultra; }) == 3);
  // ultrafilters are exactly the principal filters at atoms
  for (const auto& z : fs8)
    CHECK(z.ultra == (z.proper && eight->isAtom(z.generator_idx)));
}

TEST_CASE("brute force filter enumeration agrees") {
  // subsets of the element list that are filters, by direct definition
  auto ba = std::make_shared<BlockBooleanAlgebra>(
      BlockBooleanAlgebra::fromFilter(PartitionFilter::full(3)));
  int count = 0;
  for (std::size_t sel = 0; sel < (1u << ba->size()); ++sel) {
    std::vector<int> members;
    for (int i = 0; i < ba->size(); ++i)
      if (sel & (1u << i)) members.push_back(i);
    if (members.empty()) continue;
    bool filter = true;
    // upward closed
    for (int i : members)
      for (int j = 0; j < ba->size(); ++j)
        if ((ba->element(i) & ~ba->element(j)) == 0 &&
            !std::binary_search(members.begin(), members.end(), j))
          filter = false;
    // intersection closed
    for (int i : members)
      for (int j : members)
        if (!std::binary_search(members.begin(), members.end(), ba->meetIdx(i, j))) filter = false;
    if (filter) ++count;
  }
  CHECK(count == static_cast<int>(allBAFilters(ba).size()));
}

TEST_CASE("ultrafilter dichotomy") {
  for (const auto& p : allPartitions(4)) {
    auto ba = std::make_shared<BlockBooleanAlgebra>(
        BlockBooleanAlgebra::fromFilter(PartitionFilter::principal(p)));
    for (const auto& z : allBAFilters(ba)) {
      if (!z.ultra) continue;
      for (int i = 0; i < ba->size(); ++i) {
        bool has = z.containsIdx(i);
        bool hasComp = z.containsSubset(ba->groundMask() & ~ba->element(i));
        CHECK(has != hasComp);
      }
    }
  }
}

TEST_CASE("member sets that are not filters are rejected") {
  auto ba = std::make_shared<BlockBooleanAlgebra>(
      BlockBooleanAlgebra::fromFilter(PartitionFilter::full(3)));
  int singleton = ba->indexOf(0b001);
  REQUIRE(singleton >= 0);
  // {0} alone is not upward closed
  CHECK_THROWS_AS((void)baFilterFromMembers(ba, {singleton}), Error);
  CHECK_THROWS_AS((void)baFilterFromMembers(ba, {}), Error);
  // a genuine filter goes through
  BAFilter ok = baFilterFromMembers(ba, {ba->indexOf(0b111)});
  CHECK(ok.proper);
}

TEST_CASE("dot exports name the nodes") {
  std::string lattice = refinementLatticeDot(3);
  CHECK(lattice.find("digraph") != std::string::npos);
  CHECK(lattice.find("{{0,1},{2}}") != std::string::npos);

  std::string ba = baFilterLatticeDot(PartitionFilter::principal(P(3, {{0, 1}, {2}})));
  CHECK(ba.find("filter lattice") != std::string::npos);
  CHECK(ba.find("ultra") != std::string::npos);
}
