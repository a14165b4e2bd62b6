#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "uniclone/partition.hpp"

namespace uniclone {

using Subset = std::uint64_t; // bitmask over a ground set of size <= 63

// Filter on the partition lattice Pi(I), given by a finite generator list.
// On a finite lattice every filter is principal, so the meet of the
// generators is cached once and acts as a complete invariant: P belongs to
// the filter iff that meet refines P.
class PartitionFilter {
public:
  PartitionFilter() : meet_(SetPartition()) {} // single point placeholder

  static PartitionFilter generate(int ground, std::vector<SetPartition> base);
  static PartitionFilter principal(const SetPartition& p);
  static PartitionFilter full(int ground);  // generated by the discrete partition: all of Pi(I)
  static PartitionFilter trivial(int ground); // generated by the single-block partition

  int ground() const { return meet_.ground(); }
  const std::vector<SetPartition>& generators() const { return generators_; }
  const SetPartition& generatorMeet() const { return meet_; }

  bool contains(const SetPartition& p) const;
  std::vector<SetPartition> members() const; // all coarsenings of the meet

  bool operator==(const PartitionFilter& o) const { return meet_ == o.meet_; }

private:
  PartitionFilter(std::vector<SetPartition> gens, SetPartition meet)
      : generators_(std::move(gens)), meet_(std::move(meet)) {}

  std::vector<SetPartition> generators_;
  SetPartition meet_;
};

// The family {empty} u (union of F): every block of every member of F, plus
// the empty set. Closed under intersection, union and complement relative to
// the ground set; closure is verified on construction.
class BlockBooleanAlgebra {
public:
  static BlockBooleanAlgebra fromFilter(const PartitionFilter& f);

  int ground() const { return ground_; }
  Subset groundMask() const { return ground_ == 64 ? ~0ULL : (1ULL << ground_) - 1; }
  int size() const { return static_cast<int>(elements_.size()); }
  Subset element(int idx) const { return elements_[idx]; }
  const std::vector<Subset>& elements() const { return elements_; }
  int indexOf(Subset s) const; // -1 when s is not an element
  bool containsSubset(Subset s) const { return indexOf(s) >= 0; }

  int meetIdx(int a, int b) const { return indexOf(elements_[a] & elements_[b]); }
  int joinIdx(int a, int b) const { return indexOf(elements_[a] | elements_[b]); }
  int complementIdx(int a) const { return indexOf(groundMask() & ~elements_[a]); }

  const std::vector<int>& atoms() const { return atoms_; } // indices of minimal nonempty elements
  bool isAtom(int idx) const;

  // blocks of the generating meet partition; every element is a union of these
  const std::vector<Subset>& atomMasks() const { return atom_masks_; }

private:
  BlockBooleanAlgebra() = default;

  int ground_ = 0;
  std::vector<Subset> elements_; // sorted ascending as masks; [0] is empty
  std::vector<int> atoms_;
  std::vector<Subset> atom_masks_;
};

// Filter on a BlockBooleanAlgebra. The improper filter (containing the empty
// set) is admitted and flagged; it corresponds to the full congruence.
struct BAFilter {
  std::shared_ptr<const BlockBooleanAlgebra> parent;
  std::vector<int> members;   // sorted element indices; always contains the top
  int generator_idx = -1;     // principal generator (meet of members)
  bool proper = false;
  bool ultra = false;

  bool containsIdx(int idx) const;
  bool containsSubset(Subset s) const;
  std::string toString() const;
  bool sameMembers(const BAFilter& o) const { return members == o.members; }
};

BAFilter principalBAFilter(std::shared_ptr<const BlockBooleanAlgebra> ba, int generator_idx);

// Every filter of a finite Boolean algebra is principal, so enumeration walks
// the elements. Ordered by generator element (as masks ascending); the first
// entry is the improper filter generated by the empty set.
std::vector<BAFilter> allBAFilters(std::shared_ptr<const BlockBooleanAlgebra> ba);

// Validates that `members` (as element indices) forms a filter; throws
// not_a_filter otherwise. Returns the canonical BAFilter with flags set.
BAFilter baFilterFromMembers(std::shared_ptr<const BlockBooleanAlgebra> ba, std::vector<int> members);

std::string subsetToString(Subset s, int ground);

// DOT rendering of the refinement lattice of Pi(n) (cover edges, bottom-up).
std::string refinementLatticeDot(int n);
// DOT rendering of a block Boolean algebra and its filter lattice.
std::string baFilterLatticeDot(const PartitionFilter& f);

} // namespace uniclone
