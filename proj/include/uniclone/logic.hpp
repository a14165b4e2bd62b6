#pragma once

#include <map>
#include <string>

#include "uniclone/clone_power.hpp"

namespace uniclone {

struct Term {
  enum class Kind { variable, constant, application };
  Kind kind = Kind::variable;
  std::string var;
  int value = -1;
  std::string symbol;
  std::vector<Term> args;

  static Term variable(std::string name);
  static Term constant(int value);
  static Term apply(std::string symbol, std::vector<Term> args);
  bool operator==(const Term&) const = default;
};

struct Formula {
  enum class Kind { equation, negation, conjunction, disjunction, implication, forall, exists };
  Kind kind = Kind::equation;
  Term lhs, rhs;                  // equation
  std::vector<Formula> children;  // 1 for negation, 2 for binary connectives and nothing else
  std::string var;                // quantifiers (child in children[0])

  static Formula equation(Term l, Term r);
  static Formula negation(Formula f);
  static Formula conjunction(Formula a, Formula b);
  static Formula disjunction(Formula a, Formula b);
  static Formula implication(Formula a, Formula b);
  static Formula forall(std::string var, Formula body);
  static Formula exists(std::string var, Formula body);
  bool operator==(const Formula&) const = default;
};

// Named tables usable in formulas; constants are written c0, c1, ... and
// need no registration.
struct SymbolRegistry {
  int base = 0;
  std::map<std::string, FunctionTable> tables;

  explicit SymbolRegistry(int base_) : base(base_) {}
  void add(const std::string& name, FunctionTable t);
  const FunctionTable& lookup(const std::string& name) const;

  // op_id, op_succ, op_min, op_max, and op_i<a><b> (image {a,b}, fixing both)
  static SymbolRegistry standard(int base);
  // standard plus seeded random unary and binary tables op_r0, op_r1, ...
  static SymbolRegistry withRandom(int base, int extra, std::uint64_t seed);
};

// i-style table for Theorem 3 sentences: image {a,b}, i(a)=a, i(b)=b
FunctionTable twoValuedIdempotent(int base, int a, int b);
// forall x. op_iab(x) = ca | op_iab(x) = cb
Formula thmThreeSentence(int a, int b);

// Grammar:
//   formula := quant | disj
//   quant   := ("forall" | "exists") VAR "." formula
//   disj    := conj ("|" conj)*
//   conj    := unit ("&" unit)*
//   unit    := "!" unit | "(" formula ")" | term "=" term
//   term    := VAR | "c" NAT | IDENT "(" term ("," term)* ")"
// VAR matches [a-z][a-z0-9]*; IDENTs are registry keys. Errors carry the
// offending position.
Formula parseFormula(const std::string& text, const SymbolRegistry& reg);

// Prints in the same grammar; implication (not expressible there) is
// lowered to !(p) | (q), so parse-print is the identity exactly on
// grammar-reachable formulas.
std::string printFormula(const Formula& f);

bool isSentence(const Formula& f);
int quantifierDepth(const Formula& f);

using Environment = std::vector<std::pair<std::string, Elem>>;

Elem evalTerm(const Algebra& alg, const SymbolRegistry& reg, const Term& t,
              const Environment& env);

// Tarskian truth by exhaustive quantifier enumeration; requires a sentence.
bool evalFormula(const Algebra& alg, const SymbolRegistry& reg, const Formula& f);

// seeded sentences with quantifier depth <= depth_cap over the registry
std::vector<Formula> generateCorpus(const SymbolRegistry& reg, int count, int depth_cap,
                                    std::uint64_t seed);

struct TransferItem {
  std::string sentence;
  bool holds_in_power = false;
  bool holds_in_omega = false;

  bool transfers() const { return holds_in_power == holds_in_omega; }
};

struct TransferReport {
  std::uint64_t seed = 0;
  int checked = 0;
  int violations = 0;
  std::vector<TransferItem> failures;
};

// Los transfer for a limit ultrapower: every sentence of the corpus holds in
// the quotient iff it holds in Omega(A). Rejects non-ultra input.
TransferReport losCheck(const LimitReducedPower& lrp, const SymbolRegistry& reg,
                        std::span<const Formula> corpus);

// transfer outcome without the ultra requirement (for necessity witnesses)
TransferReport transferReport(const Algebra& quotient, const SymbolRegistry& reg,
                              std::span<const Formula> corpus);

struct ElementaryCheck {
  bool elementary = false;
  int corpus_checked = 0;
  std::string witness; // a non-transferring sentence when not elementary
};

// At this finite scale (every element of A named by a constant) e is
// elementary iff it is an isomorphism; a bounded-depth corpus transfer is
// run as independent evidence, and a witness sentence is searched when the
// verdict is negative.
ElementaryCheck isElementaryEmbedding(const Homomorphism& e, const SymbolRegistry& reg,
                                      int depth_cap, int corpus_size, std::uint64_t seed);

} // namespace uniclone
