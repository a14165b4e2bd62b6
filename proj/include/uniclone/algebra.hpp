#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "uniclone/filter.hpp"
#include "uniclone/partition.hpp"
#include "uniclone/table.hpp"

namespace uniclone {

using Elem = int; // index into an algebra's carrier

class Algebra;

// Carrier of functions I -> A with kernel partition in the filter, applied
// pointwise. Also hosts the free algebra F(A,I) = Omega(A)^P(A,I), whose
// index set is A^gens and whose projections are stored.
struct ClonePowerData {
  int base = 0;
  int index_size = 0;
  PartitionFilter filter;
  std::vector<std::vector<std::uint8_t>> carrier; // sorted by code ascending
  std::vector<std::uint64_t> codes;               // code of each carrier member
  int free_gens = -1;                             // >= 0 for F(A,I)
  std::vector<Elem> projections;                  // pi_i when free
};

struct QuotientData {
  SetPartition theta;         // congruence partition of the parent carrier
  std::vector<Elem> reps;     // minimum carrier index per class
  std::vector<int> class_of;  // parent elem -> class
};

// elem = left_index * right_size + right_index
struct ProductData {};

// Carrier subset of the parent, closed under the operations. `members` may
// be listed in any order (this doubles as a relabelling); must contain all
// constants.
struct SubalgebraData {
  std::vector<Elem> members;
  std::vector<int> to_sub; // parent elem -> index in members, or -1
};

// Immutable algebra in V(Omega(A)). The signature is the full clone: apply
// accepts an arbitrary FunctionTable over the right base, interpreted
// according to how the algebra was built (pointwise on clone powers,
// representative-wise on quotients, componentwise on products).
class Algebra {
public:
  enum class Provenance { omega, clone_power, quotient, product, free_algebra, subalgebra, colimit };

  Algebra() = default;

  static Algebra omega(int base);
  static Algebra makeClonePower(ClonePowerData data, Provenance tag = Provenance::clone_power);
  static Algebra makeQuotient(const Algebra& parent, const SetPartition& theta);
  static Algebra makeProduct(const Algebra& left, const Algebra& right);
  static Algebra makeSubalgebra(const Algebra& parent, std::vector<Elem> members,
                                Provenance tag = Provenance::subalgebra);

  bool valid() const { return impl_ != nullptr; }
  int base() const;
  int size() const;
  Provenance provenance() const;

  Elem apply(const FunctionTable& t, std::span<const Elem> args) const;
  Elem constantElem(int a) const; // interpretation of the constant symbol for a
  std::string describeElem(Elem x) const;

  // provenance views; null when the algebra is not of that kind
  const ClonePowerData* clonePower() const;
  const QuotientData* quotientData() const;
  const Algebra* parent() const;       // quotient / subalgebra parent
  const Algebra* productLeft() const;
  const Algebra* productRight() const;
  const SubalgebraData* subalgebraData() const;

  bool sameObject(const Algebra& o) const { return impl_ == o.impl_; }

private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

// Concatenated coordinate vectors for algebras whose operations act
// pointwise (anything built without a quotient). Element values determine
// the element; used to enumerate one-step images without scanning every
// table.
struct PointwiseView {
  int base = 0;
  int points = 0;
  std::vector<std::vector<std::uint8_t>> vec; // per carrier element
  Elem elemOf(const std::vector<std::uint8_t>& v) const;
  std::vector<std::pair<std::vector<std::uint8_t>, Elem>> index; // sorted
  std::vector<Elem> dense; // code -> elem (-1 outside carrier) when base^points is small
};
std::optional<PointwiseView> pointwiseView(const Algebra& alg);

// Least subset containing `seeds` and every constant, closed under the
// declared table set. When the set synthesizes pairings (base 4) and the
// algebra is a clone power, the canonical pairing table of every processed
// pair joins the closure, standing in for an injective A^2 -> A. With an
// exhaustive table set and a pointwise view the one-step images are
// enumerated directly (same result as the literal loop, much cheaper).
std::vector<Elem> generateSubalgebra(const Algebra& alg, std::span<const Elem> seeds,
                                     const TableSet& tables);

// Literal worklist over every declared table; the brute-force oracle the
// fast path is tested against.
std::vector<Elem> generateSubalgebraLiteral(const Algebra& alg, std::span<const Elem> seeds,
                                            const TableSet& tables);

struct Homomorphism {
  Algebra source;
  Algebra target;
  std::vector<Elem> map;

  Elem operator()(Elem x) const { return map[x]; }
};

// Exhaustive check over the declared tables (all tuples). Quadratic in the
// carrier times the binary table count; fine at workbench scale.
bool isHomomorphism(const Homomorphism& h, const TableSet& tables,
                    std::string* first_violation = nullptr);
bool isBijective(const Homomorphism& h);

// a |-> constant-a interpretation; the unique homomorphism Omega(A) -> L.
// Verified against the declared tables on construction.
Homomorphism canonicalEmbedding(const Algebra& target, const TableSet& tables);

SetPartition kernelPartition(const Homomorphism& h);

// All homomorphisms source -> target, found by assigning images to
// `generators` (which together with the constants must generate the source)
// and propagating through the closure; the oracle route for freeness checks.
std::vector<Homomorphism> enumerateHomomorphisms(const Algebra& source, const Algebra& target,
                                                 std::span<const Elem> generators,
                                                 const TableSet& tables);

// Smallest x with <{x}> = carrier, if any.
std::optional<Elem> findSingleGenerator(const Algebra& alg, const TableSet& tables);

// Term-tracking closure: for each reachable element, a table (of arity
// |gens|) expressing it from the generators. witness[x] applied to the
// generator tuple yields x.
struct GeneratedWithWitnesses {
  std::vector<Elem> members;                 // in discovery (BFS) order
  std::vector<FunctionTable> witnesses;      // parallel to members
};
GeneratedWithWitnesses generateWithWitnesses(const Algebra& alg, std::span<const Elem> gens,
                                             const TableSet& tables);

extern const int kDefaultCarrierCap; // 4096; constructions beyond this fail loudly

} // namespace uniclone
