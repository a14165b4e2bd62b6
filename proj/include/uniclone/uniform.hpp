#pragma once

#include "uniclone/generators.hpp"

namespace uniclone {

struct UniformSpace {
  int points = 0;
  PartitionFilter filter; // uniform partitions; ground == points

  static UniformSpace make(int points, PartitionFilter f);
};

// Filterbase criterion: preimages of the target generators are uniform.
bool isUniformlyContinuous(std::span<const int> map, const PartitionFilter& source,
                           const PartitionFilter& target);

struct UniformMap {
  UniformSpace source, target;
  std::vector<int> map;

  // validates totality and uniform continuity
  static UniformMap make(UniformSpace source, UniformSpace target, std::vector<int> map);
};

UniformMap composeUniform(const UniformMap& g, const UniformMap& f); // g after f

// A^gens with the filter P(A,I) generated by the coordinate partitions
UniformSpace powerSpace(int base, int gens);

// f: A^I -> A^J as a point map; every such map is uniformly continuous for
// the P-filters (the finite P(A,I) is the whole partition lattice)
struct PowerMap {
  int base = 0;
  int dom_gens = 0; // |I|
  int cod_gens = 0; // |J|
  std::vector<std::uint32_t> point_map; // size base^|I|, values < base^|J|

  static PowerMap identity(int base, int gens);
  static PowerMap fromCoordinates(int base, int dom_gens, std::span<const FunctionTable> coords);
  static PowerMap random(int base, int dom_gens, int cod_gens, Rng& rng);

  int domPoints() const { return static_cast<int>(point_map.size()); }
  int codPoints() const;
  FunctionTable coordinate(int j) const; // pi_j o f as a |I|-ary table
  UniformMap asUniformMap() const;       // between the P-spaces
};

PowerMap composePower(const PowerMap& g, const PowerMap& f); // g after f

// f*(ell) = ell o f, one element at a time
FunctionTable pullback(const PowerMap& f, const FunctionTable& ell);
// materialized f*: F(A,J) -> F(A,I)
Homomorphism pullbackHom(const PowerMap& f, const FreeAlgebra& free_j, const FreeAlgebra& free_i);

// coordinate j of the induced map: overline{pi_j o f}^L applied to the tuple
Elem inducedCoordinate(const PowerMap& f, const Algebra& target, std::span<const Elem> tuple,
                       int j);
// the induced map L^I -> L^J on a whole tuple
std::vector<Elem> inducedTuple(const PowerMap& f, const Algebra& target,
                               std::span<const Elem> tuple);
// beta = overline{f}^L(alpha)
GeneratorAssignment inducedAssignment(const PowerMap& f, const GeneratorAssignment& alpha);

// beta <= alpha: <beta''(J)> inside <alpha''(I)>, with a uniformly
// continuous witness f: A^I -> A^J such that beta = overline{f}(alpha).
// Witness coordinates are searched smallest arity first, index tuples in
// lexicographic order, canonically least table per slot.
struct LeqResult {
  bool leq = false;
  std::optional<PowerMap> witness;
};
LeqResult generatorLeq(const GeneratorAssignment& beta, const GeneratorAssignment& alpha,
                       const TableSet& tables);

// E^{beta,alpha}: F(A,J)/Z_beta -> F(A,I)/Z_alpha, [ell] |-> [ell o f].
// The commuting square iota_{beta,alpha} iota_beta = iota_alpha E is checked
// on every class; the map is witness independent.
struct ConnectingMap {
  std::vector<int> map; // dom class -> cod class
};
ConnectingMap connectingMap(const FreeQuotient& dom_beta, const FreeQuotient& cod_alpha,
                            const PowerMap& witness);

struct DirectedSystem {
  Algebra target;
  std::vector<std::vector<Elem>> alphas;    // one assignment per stage
  std::vector<std::pair<int, int>> leq_edges; // (d, e) with d <= e
};

struct ColimitResult {
  Algebra colimit; // relabelled copy of the target, provenance colimit
  Homomorphism iso; // colimit -> target, verified bijective homomorphism
  int max_stage = -1;
  std::vector<std::vector<int>> stage_to_colimit; // cocone maps per stage
};

// Builds the colimit of (F(A,I_d)/Z_d, E_{d,e}) by identifying classes
// through the connecting maps into the maximal stage, and returns it with
// the verified isomorphism onto the target.
ColimitResult directedColimit(const DirectedSystem& sys, const TableSet& tables);

} // namespace uniclone
