#include "doctest.h"

#include "uniclone/partition.hpp"

using namespace uniclone;

namespace {

SetPartition P(int n, std::vector<std::vector<int>> blocks) {
  return SetPartition::fromBlocks(n, blocks);
}

} // namespace

TEST_CASE("kernel partition is the fiber partition") {
  std::vector<int> f{0, 0, 1}; // f = (a, a, b)
  CHECK(SetPartition::kernel(std::span<const int>(f)) == P(3, {{0, 1}, {2}}));

  std::vector<int> c{2, 2, 2};
  CHECK(SetPartition::kernel(std::span<const int>(c)) == SetPartition::single(3));

  std::vector<int> empty;
  CHECK_THROWS_AS((void)SetPartition::kernel(std::span<const int>(empty)), Error);
}

TEST_CASE("canonical form is unique per partition") {
  CHECK(P(3, {{2}, {1, 0}}) == P(3, {{0, 1}, {2}}));
  CHECK(P(4, {{3, 1}, {0, 2}}) == P(4, {{0, 2}, {1, 3}}));
  CHECK_FALSE(P(3, {{0, 1}, {2}}) == P(3, {{0, 2}, {1}}));
  CHECK(P(3, {{0, 1}, {2}}).toString() == "{{0,1},{2}}");

  CHECK_THROWS_AS((void)P(3, {{0, 1}}), Error);         // not covering
  CHECK_THROWS_AS((void)P(3, {{0, 1}, {1, 2}}), Error); // overlap
  CHECK_THROWS_AS((void)P(3, {{0, 1, 2}, {}}), Error);  // empty block
}

TEST_CASE("refinement order") {
  SetPartition d = SetPartition::discrete(3);
  SetPartition s = SetPartition::single(3);
  SetPartition m = P(3, {{0, 1}, {2}});
  for (const auto& q : allPartitions(3)) {
    CHECK(d.refines(q));
    CHECK(q.refines(q));
    CHECK(q.refines(s));
  }
  CHECK_FALSE(m.refines(d));
  CHECK_THROWS_AS((void)m.refines(SetPartition::discrete(4)), Error);
}

TEST_CASE("meet is the blockwise intersection") {
  CHECK(P(4, {{0, 1}, {2, 3}}).meetWith(P(4, {{0, 2}, {1, 3}})) == SetPartition::discrete(4));
  SetPartition m = P(3, {{0, 1}, {2}});
  CHECK(m.meetWith(m) == m);
  CHECK(m.meetWith(SetPartition::single(3)) == m);
}

TEST_CASE("join closes the block overlap relation") {
  CHECK(P(4, {{0, 1}, {2, 3}}).joinWith(P(4, {{1, 2}, {0}, {3}})) == SetPartition::single(4));
  SetPartition m = P(3, {{0, 1}, {2}});
  CHECK(m.joinWith(m) == m);
  CHECK(m.joinWith(SetPartition::discrete(3)) == m);
}

TEST_CASE("lattice axioms, exhaustive up to ground four") {
  for (int n = 1; n <= 4; ++n) {
    auto ps = allPartitions(n);
    for (const auto& a : ps)
      for (const auto& b : ps) {
        SetPartition ab = a.meetWith(b);
        CHECK(ab == b.meetWith(a));
        CHECK(a.joinWith(b) == b.joinWith(a));
        // order compatibility
        CHECK(ab.refines(a));
        CHECK(a.refines(a.joinWith(b)));
        CHECK((a.refines(b) == (ab == a)));
        CHECK((a.refines(b) == (a.joinWith(b) == b)));
        // absorption
        CHECK(a.meetWith(a.joinWith(b)) == a);
        CHECK(a.joinWith(ab) == a);
        for (const auto& c : ps) {
          CHECK(ab.meetWith(c) == a.meetWith(b.meetWith(c)));
          CHECK(a.joinWith(b).joinWith(c) == a.joinWith(b.joinWith(c)));
        }
      }
  }
}

TEST_CASE("partition counts follow the Bell numbers") {
  CHECK(allPartitions(1).size() == 1);
  CHECK(allPartitions(2).size() == 2);
  CHECK(allPartitions(3).size() == 5);
  CHECK(allPartitions(4).size() == 15);
  CHECK(allPartitions(5).size() == 52);
}

TEST_CASE("preimage partition") {
  SetPartition p = P(2, {{0}, {1}});
  std::vector<int> f{0, 0, 1};
  CHECK(preimagePartition(f, p) == P(3, {{0, 1}, {2}}));

  std::vector<int> id{0, 1, 2};
  for (const auto& q : allPartitions(3)) CHECK(preimagePartition(id, q) == q);

  // block of p with empty preimage is dropped
  std::vector<int> g{1, 1, 1};
  CHECK(preimagePartition(g, P(2, {{0}, {1}})) == SetPartition::single(3));
}

TEST_CASE("preimage respects composition and meets") {
  // all maps f: 3->3, g: 3->3 and all partitions of the common codomain
  std::vector<std::vector<int>> maps;
  for (int code = 0; code < 27; ++code)
    maps.push_back({code / 9, (code / 3) % 3, code % 3});
  auto ps = allPartitions(3);
  for (const auto& f : maps)
    for (const auto& g : maps) {
      std::vector<int> fg(3);
      for (int i = 0; i < 3; ++i) fg[i] = f[g[i]];
      for (const auto& p : ps)
        CHECK(preimagePartition(fg, p) == preimagePartition(g, preimagePartition(f, p)));
    }
  for (const auto& f : maps)
    for (const auto& p1 : ps)
      for (const auto& p2 : ps)
        CHECK(preimagePartition(f, p1.meetWith(p2)) ==
              preimagePartition(f, p1).meetWith(preimagePartition(f, p2)));
}
