#pragma once

#include "uniclone/clone_power.hpp"
#include "uniclone/congruence.hpp"

namespace uniclone {

// alpha: I -> L with I = {0,...,alpha.size()-1}
struct GeneratorAssignment {
  Algebra target;
  std::vector<Elem> alpha;

  int gens() const { return static_cast<int>(alpha.size()); }
};

// phi_alpha on a single element of F(A,I): every such element is an
// |I|-ary table applied to the projections, so its image is that table
// applied to the alpha values.
Elem phiAlpha(const GeneratorAssignment& a, const FunctionTable& ell);

// Materialized phi_alpha: the homomorphism F(A,I) -> L with pi_i |-> alpha(i).
Homomorphism phiAlphaHom(const FreeAlgebra& free, const GeneratorAssignment& a);

// Z_alpha as an explicit BA filter (materialized free algebras only):
// congruence_to_Zfilter of ker(phi_alpha).
BAFilter zAlphaFilter(const FreeAlgebra& free, const GeneratorAssignment& a);

// Z_alpha as a membership predicate over subsets of A^I, for index sets too
// large to materialize the block algebra: R is in Z_alpha iff the canonical
// pair of functions with agreement set exactly R has equal phi images.
class ZAlphaPredicate {
public:
  ZAlphaPredicate(GeneratorAssignment a);
  bool contains(Subset r) const;
  int points() const { return points_; }

private:
  GeneratorAssignment a_;
  int points_ = 0;
};

// F(A,I)/Z_alpha represented through the generated subalgebra <alpha''(I)>:
// classes are named by their iota image (an element of the target), each
// with a representative element of F(A,I) found by term search.
class FreeQuotient {
public:
  FreeQuotient(GeneratorAssignment a, const TableSet& tables);

  const GeneratorAssignment& assignment() const { return a_; }
  int size() const { return static_cast<int>(carrier_.size()); }
  Elem iota(int cls) const { return carrier_[cls]; }       // iota_alpha
  int classOfTarget(Elem x) const;                          // iota^{-1}
  const FunctionTable& representative(int cls) const { return reps_[cls]; }
  int classOf(const FunctionTable& ell) const;              // [ell]
  const std::vector<Elem>& carrier() const { return carrier_; } // sorted target elems

private:
  GeneratorAssignment a_;
  std::vector<Elem> carrier_;
  std::vector<FunctionTable> reps_;
};

enum class TableSearch { found, unachievable, unsupported };

// Canonically least table t of the given arity with t(args) = value in the
// target algebra: entries not forced by the arguments are 0, and quotient
// layers unwrap through their class members in ascending order. Exact for
// algebras built from pointwise pieces; reports unsupported when a quotient
// sits below a product or subalgebra.
TableSearch leastTableMapping(const Algebra& target, std::span<const Elem> args, Elem value,
                              int arity, FunctionTable* out);

// phi_alpha well-definedness probe: every way of writing a free-algebra
// element as a table over a projection tuple must give the same image.
// Exhaustive over arities <= gens; materialized free algebras only.
bool phiRepresentationsAgree(const FreeAlgebra& free, const GeneratorAssignment& a,
                             std::string* what = nullptr);

} // namespace uniclone
