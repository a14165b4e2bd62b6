#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "uniclone/errors.hpp"

namespace uniclone {

// Partition of the ground set {0,...,n-1}. Canonical form: blocks are
// numbered in order of their minimum element, so two partitions are equal
// iff their block-id vectors are identical.
class SetPartition {
public:
  SetPartition() : block_of_{0}, block_count_(1) {} // single point placeholder

  static SetPartition discrete(int ground);
  static SetPartition single(int ground); // one block; the lattice top
  static SetPartition fromBlocks(int ground, const std::vector<std::vector<int>>& blocks);
  static SetPartition fromBlockIds(std::span<const int> ids); // any labelling, renormalized

  // Kernel partition of f: the nonempty fibers f^-1({x}), for f given as
  // its value vector on {0,...,n-1}.
  static SetPartition kernel(std::span<const int> values);
  static SetPartition kernel(std::span<const std::uint8_t> values);

  int ground() const { return static_cast<int>(block_of_.size()); }
  int blockCount() const { return block_count_; }
  int blockOf(int x) const { return block_of_[x]; }
  bool sameBlock(int x, int y) const { return block_of_[x] == block_of_[y]; }
  std::vector<std::vector<int>> blocks() const;

  // this refines q: every block of *this is contained in a block of q
  bool refines(const SetPartition& q) const;
  bool isDiscrete() const { return block_count_ == ground(); }
  bool isSingle() const { return block_count_ == 1; }

  SetPartition meetWith(const SetPartition& q) const; // blockwise intersections
  SetPartition joinWith(const SetPartition& q) const; // union-find closure

  bool operator==(const SetPartition& o) const { return block_of_ == o.block_of_; }
  bool operator<(const SetPartition& o) const; // arbitrary total order (for sets/maps)

  std::string toString() const; // e.g. {{0,1},{2}}

private:
  explicit SetPartition(std::vector<int> canonical_ids, int block_count)
      : block_of_(std::move(canonical_ids)), block_count_(block_count) {}

  std::vector<int> block_of_; // element -> block id, ids canonical
  int block_count_ = 0;
};

// Preimage partition [f]_{-1}(P): blocks f^-1(R) for R in P, empties dropped.
// f maps {0,...,domain-1} into the ground set of p.
SetPartition preimagePartition(std::span<const int> f, const SetPartition& p);

// All partitions of {0,...,n-1} via restricted growth strings, in
// lexicographic rgs order (the discrete partition comes last).
std::vector<SetPartition> allPartitions(int n);

// Meet of a list; the empty meet is the single-block partition (lattice top).
SetPartition meetAll(int ground, std::span<const SetPartition> ps);

void requireSameGround(const SetPartition& p, const SetPartition& q, const char* op);

} // namespace uniclone
