#pragma once

#include "uniclone/json_io.hpp"

namespace uniclone {

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  json params;
  int cases = 0;
  int failures = 0;
  std::vector<std::string> failure_details; // capped at 25 entries
  double seconds = 0;

  bool ok() const { return failures == 0; }
  void pass() { ++cases; }
  void check(bool cond, const std::string& detail);
  json toJson() const;
};

// Theorem 1 round trip: seeded random generated subalgebras of Omega(A)^I,
// each must equal {f | Pi(f) in subalgebra_to_filter(B)} exactly, and the
// kernel-meet membership oracle must agree with the closure on every f.
SuiteReport verifyThm1(int base, int index, int trials, std::uint64_t seed);

// {0} u U F is a Boolean algebra: exhaustive over every filter on Pi(I) for
// |I| <= max_index, closure under union, intersection and complement.
SuiteReport verifyBlockAlgebra(int max_index);

// Theorem 2: Con(Omega(A)^F) and the filters of the block algebra are
// order-isomorphic via the two maps, mutually inverse; congruence
// permutability is folded in.
SuiteReport verifyThm2(int base, int index);

// Theorem 3 pentagon over every (F, Z) with a >=2-element quotient:
// simple <=> SI <=> DI <=> (e isomorphism + corpus transfer) <=> Z ultra,
// with the factorization rebuilt whenever a factor pair exists.
SuiteReport verifyThm3(int base, int index, int depth, std::uint64_t seed);

// Theorem 4 freeness at base 2: for every artifact-built target (carrier
// <= 16) and every assignment, phi_alpha is the unique extending
// homomorphism, against brute-force homomorphism enumeration.
SuiteReport verifyFree(int base, int gens);

// Functoriality of the induced and pullback maps, phi_beta = phi_alpha f*,
// Z-transfer, and the iota square, over seeded random uniformly continuous
// pairs.
SuiteReport verifyFunctor(int trials, std::uint64_t seed);

// Los transfer for every ultra Z over every F, plus a necessity witness on
// some proper non-ultra Z.
SuiteReport verifyLos(int base, int index, int corpus_size, int depth, std::uint64_t seed);

// Directed colimits of seeded random chains rebuild their target.
SuiteReport verifyColimitRandom(int systems, std::uint64_t seed);

// One user-supplied directed system.
SuiteReport verifyColimitSystem(const DirectedSystem& sys);

// Los check on a user-supplied limit reduced power and corpus.
SuiteReport losOnFiles(const json& power_desc, const json& corpus_doc);

} // namespace uniclone
