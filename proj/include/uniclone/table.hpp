#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "uniclone/errors.hpp"
#include "uniclone/rng.hpp"

namespace uniclone {

// Total operation table A^n -> A over A = {0,...,base-1}, entries row-major
// with the first argument as the most significant digit. Arity 0 is a
// constant.
struct FunctionTable {
  int base = 0;
  int arity = 0;
  std::vector<std::uint8_t> entries;

  FunctionTable() = default;
  FunctionTable(int base_, int arity_, std::vector<std::uint8_t> entries_);

  static FunctionTable constant(int base, int value);
  static FunctionTable identity(int base);
  static FunctionTable projection(int base, int arity, int arg); // (x1..xn) -> x_arg
  // decode from an integer code: entry k is digit k of `code` in base `base`,
  // least significant digit first
  static FunctionTable fromCode(int base, int arity, std::uint64_t code);
  static FunctionTable random(int base, int arity, Rng& rng);

  int tableSize() const { return static_cast<int>(entries.size()); }
  std::uint8_t apply(std::span<const int> args) const;
  std::uint8_t applyIndex(std::size_t row) const { return entries[row]; }
};

// row-major index of an argument tuple
std::size_t tupleIndex(int base, std::span<const int> args);
std::size_t tupleIndexU8(int base, std::span<const std::uint8_t> args);
std::vector<int> tupleFromIndex(int base, int arity, std::size_t index);
std::size_t powSize(int base, int arity); // base^arity, cap-checked

// Declared generating set of operation tables for one base size. For base
// <= 3 the set is exhaustive in arities 1 and 2 (closure under those two
// arities drives every construction here). For base 4 exhaustive binaries
// are out of reach (4^16 tables), so the set carries all unary tables, a
// seeded random binary sample, and synthesizes the canonical pairing table
// for each pair it is asked to close over.
class TableSet {
public:
  static TableSet exhaustive(int base); // base <= 3
  static TableSet sampled(int base, int binary_sample, std::uint64_t seed);
  static TableSet forBase(int base, std::uint64_t seed = 0x5eedULL);

  int base() const { return base_; }
  const std::vector<FunctionTable>& unary() const { return unary_; }
  const std::vector<FunctionTable>& binary() const { return binary_; }
  bool exhaustiveBinary() const { return exhaustive_binary_; }
  bool synthesizePairings() const { return !exhaustive_binary_; }
  std::uint64_t seed() const { return seed_; }

private:
  int base_ = 0;
  bool exhaustive_binary_ = false;
  std::uint64_t seed_ = 0;
  std::vector<FunctionTable> unary_;
  std::vector<FunctionTable> binary_;
};

// Lexicographically least binary table that is injective on the pairs
// (f[i], g[i]) actually realized; used to close subalgebras the way an
// injective pairing A^2 -> A would. Fails loudly when more than `base`
// distinct pairs are realized (the finite surrogate for |A| >= |I|).
FunctionTable pairingTable(int base, std::span<const std::uint8_t> f,
                           std::span<const std::uint8_t> g);

} // namespace uniclone
