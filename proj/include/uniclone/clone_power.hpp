#pragma once

#include <memory>

#include "uniclone/algebra.hpp"
#include "uniclone/filter.hpp"

namespace uniclone {

// carrier bound for materialized free algebras F(A,I) = Omega(A)^P(A,I);
// they grow as |A|^(|A|^|I|)
extern const int kFreeCarrierCap;

// Omega(A)^F: all f: I -> A with kernel in F, applied pointwise.
Algebra buildClonePower(int base, int index_size, const PartitionFilter& filter,
                        int carrier_cap = kDefaultCarrierCap);

// membership of a raw function vector
bool clonePowerContains(const Algebra& cp, std::span<const std::uint8_t> f);

// Theorem 1 direction: a pointwise-closed B (with constants) determines the
// filter generated by its kernels, and the round trip B = {f | Pi(f) in F}
// is checked exhaustively; a failure means B was not actually closed.
// Requires base >= index size (the finite surrogate for an injective
// pairing).
PartitionFilter subalgebraToFilter(int base, int index_size,
                                   std::span<const std::vector<std::uint8_t>> members);

// <S>-membership by kernel refinement: g is generated by S iff the meet of
// the kernels of S refines Pi(g). The cheap dual of generateSubalgebra.
bool membershipByFilter(int base, int index_size,
                        std::span<const std::vector<std::uint8_t>> generators,
                        std::span<const std::uint8_t> g);

// Theorem 2, congruence -> Z: R is in Z iff any two carrier members that
// agree on R are theta-related.
BAFilter congruenceToZFilter(const Algebra& cp, const SetPartition& theta);

// Theorem 2, Z -> congruence: f ~ g iff their agreement set lies in Z.
SetPartition zFilterToCongruence(const Algebra& cp, const BAFilter& z);

std::shared_ptr<const BlockBooleanAlgebra> blockAlgebraOf(const Algebra& cp);

struct LimitReducedPower {
  Algebra base_power;
  BAFilter z;
  Algebra quotient; // Omega(A)^F / Z
  bool ultra = false;
};

LimitReducedPower limitReducedPower(const Algebra& cp, const BAFilter& z);

// Reduced power over a set filter W on I: F is all of Pi(I) and the block
// algebra is the power set, so W transfers directly.
LimitReducedPower reducedPowerOverSetFilter(int base, int index_size,
                                            std::span<const Subset> w_members);

// coordinate partitions P_i of A^gens: f = g (P_i) iff f(i) = g(i)
std::vector<SetPartition> coordinatePartitions(int base, int gens);

struct FreeAlgebra {
  Algebra alg;   // provenance free_algebra
  int gens = 0;  // |I|
  int points = 0; // |A^I|, the index set of the clone power
  std::vector<Elem> projections; // pi_i
};

// F(A,I) over the filter generated by the coordinate partitions P_i of A^I.
FreeAlgebra freeAlgebra(int base, int gens, int carrier_cap = kFreeCarrierCap);

// carrier member x as the |I|-ary table it is (F(A,I) elements are exactly
// the functions A^I -> A)
FunctionTable freeElementTable(const FreeAlgebra& f, Elem x);
Elem freeElementOf(const FreeAlgebra& f, const FunctionTable& t);

} // namespace uniclone
