#pragma once

#include <memory>
#include <optional>
#include <utility>

#include "uniclone/algebra.hpp"

namespace uniclone {

struct Congruence {
  Algebra parent;
  SetPartition partition;
};

// Congruence machinery for one algebra over one declared table set.
// Principal congruences run a worklist closure: every merged pair forces,
// for each carrier element z and every declared table t, the merges
// (t(x,z), t(y,z)) and (t(z,x), t(z,y)). With an exhaustive table set those
// forced pairs are enumerated from the realized value cells of a pointwise
// view (quotients unwrap through their representatives), which is the same
// set a literal scan over all tables produces. Without that structure the
// engine falls back to dense action tables.
class CongruenceEngine {
public:
  CongruenceEngine(Algebra alg, const TableSet& tables);
  ~CongruenceEngine();
  CongruenceEngine(const CongruenceEngine&) = delete;
  CongruenceEngine& operator=(const CongruenceEngine&) = delete;

  const Algebra& algebra() const;

  SetPartition principal(Elem a, Elem b);
  SetPartition generated(std::span<const std::pair<Elem, Elem>> pairs);

  // every compatible partition, finest first, diagonal included
  const std::vector<SetPartition>& lattice();

  bool compatible(const SetPartition& theta);

  // join inside the congruence lattice (table closure of the partition join)
  SetPartition congruenceJoin(const SetPartition& a, const SetPartition& b);

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

bool isCompatible(const Algebra& alg, const SetPartition& theta, const TableSet& tables);

// quotient with the compatibility check; the unchecked construction is
// Algebra::makeQuotient
Algebra quotientAlgebra(const Algebra& alg, const SetPartition& theta, const TableSet& tables);

// theta1 o theta2 = theta2 o theta1 for every pair in the lattice
bool congruencesPermute(CongruenceEngine& engine);
bool relationalCompositionsEqual(const SetPartition& a, const SetPartition& b);

struct Classification {
  bool simple = false;
  bool subdirectly_irreducible = false;
  bool directly_indecomposable = false;
};

// Theorem-3 style predicates. A one-element algebra gets all flags false.
Classification classify(CongruenceEngine& engine);

// complementary permuting pair of nontrivial congruences, if any
std::optional<std::pair<SetPartition, SetPartition>> findFactorPair(CongruenceEngine& engine);

} // namespace uniclone
