#include "uniclone/table.hpp"

#include <algorithm>
#include <map>

namespace uniclone {

FunctionTable::FunctionTable(int base_, int arity_, std::vector<std::uint8_t> entries_)
    : base(base_), arity(arity_), entries(std::move(entries_)) {
  if (base < 1) fail(ErrorCode::bad_argument, "table: base must be positive");
  if (arity < 0) fail(ErrorCode::bad_argument, "table: negative arity");
  if (entries.size() != powSize(base, arity))
    fail(ErrorCode::bad_argument, "table: entry count does not match base^arity");
  for (auto v : entries)
    if (v >= base) fail(ErrorCode::bad_argument, "table: entry out of range");
}

FunctionTable FunctionTable::constant(int base, int value) {
  if (value < 0 || value >= base) fail(ErrorCode::bad_argument, "table: constant out of range");
  return FunctionTable(base, 0, {static_cast<std::uint8_t>(value)});
}

FunctionTable FunctionTable::identity(int base) {
  std::vector<std::uint8_t> e(base);
  for (int i = 0; i < base; ++i) e[i] = static_cast<std::uint8_t>(i);
  return FunctionTable(base, 1, std::move(e));
}

FunctionTable FunctionTable::projection(int base, int arity, int arg) {
  if (arg < 0 || arg >= arity) fail(ErrorCode::bad_argument, "table: projection index out of range");
  std::size_t n = powSize(base, arity);
  std::vector<std::uint8_t> e(n);
  for (std::size_t row = 0; row < n; ++row) {
    auto tuple = tupleFromIndex(base, arity, row);
    e[row] = static_cast<std::uint8_t>(tuple[arg]);
  }
  return FunctionTable(base, arity, std::move(e));
}

FunctionTable FunctionTable::fromCode(int base, int arity, std::uint64_t code) {
  std::size_t n = powSize(base, arity);
  std::vector<std::uint8_t> e(n);
  for (std::size_t k = 0; k < n; ++k) {
    e[k] = static_cast<std::uint8_t>(code % base);
    code /= base;
  }
  return FunctionTable(base, arity, std::move(e));
}

FunctionTable FunctionTable::random(int base, int arity, Rng& rng) {
  std::size_t n = powSize(base, arity);
  std::vector<std::uint8_t> e(n);
  for (auto& v : e) v = static_cast<std::uint8_t>(rng.intBelow(base));
  return FunctionTable(base, arity, std::move(e));
}

std::uint8_t FunctionTable::apply(std::span<const int> args) const {
  if (static_cast<int>(args.size()) != arity)
    fail(ErrorCode::arity_mismatch, "table: wrong number of arguments");
  return entries[tupleIndex(base, args)];
}

std::size_t tupleIndex(int base, std::span<const int> args) {
  std::size_t idx = 0;
  for (int a : args) {
    if (a < 0 || a >= base) fail(ErrorCode::bad_argument, "tuple: value out of range");
    idx = idx * base + static_cast<std::size_t>(a);
  }
  return idx;
}

std::size_t tupleIndexU8(int base, std::span<const std::uint8_t> args) {
  std::size_t idx = 0;
  for (auto a : args) idx = idx * base + a;
  return idx;
}

std::vector<int> tupleFromIndex(int base, int arity, std::size_t index) {
  std::vector<int> tuple(arity);
  for (int k = arity - 1; k >= 0; --k) {
    tuple[k] = static_cast<int>(index % base);
    index /= base;
  }
  return tuple;
}

std::size_t powSize(int base, int arity) {
  std::size_t n = 1;
  for (int i = 0; i < arity; ++i) {
    if (n > (1ULL << 40) / static_cast<std::size_t>(base))
      fail(ErrorCode::cap_exceeded, "table: base^arity too large");
    n *= static_cast<std::size_t>(base);
  }
  return n;
}

TableSet TableSet::exhaustive(int base) {
  if (base > 3) fail(ErrorCode::cap_exceeded, "table set: exhaustive binaries need base <= 3");
  TableSet ts;
  ts.base_ = base;
  ts.exhaustive_binary_ = true;
  std::uint64_t unaryCount = 1, binaryCount = 1;
  for (int i = 0; i < base; ++i) unaryCount *= base;
  for (int i = 0; i < base * base; ++i) binaryCount *= base;
  ts.unary_.reserve(unaryCount);
  for (std::uint64_t c = 0; c < unaryCount; ++c) ts.unary_.push_back(FunctionTable::fromCode(base, 1, c));
  ts.binary_.reserve(binaryCount);
  for (std::uint64_t c = 0; c < binaryCount; ++c) ts.binary_.push_back(FunctionTable::fromCode(base, 2, c));
  return ts;
}

TableSet TableSet::sampled(int base, int binary_sample, std::uint64_t seed) {
  TableSet ts;
  ts.base_ = base;
  ts.exhaustive_binary_ = false;
  ts.seed_ = seed;
  std::uint64_t unaryCount = 1;
  for (int i = 0; i < base; ++i) unaryCount *= base;
  ts.unary_.reserve(unaryCount);
  for (std::uint64_t c = 0; c < unaryCount; ++c) ts.unary_.push_back(FunctionTable::fromCode(base, 1, c));
  Rng rng(seed);
  ts.binary_.reserve(binary_sample);
  for (int i = 0; i < binary_sample; ++i) ts.binary_.push_back(FunctionTable::random(base, 2, rng));
  return ts;
}

TableSet TableSet::forBase(int base, std::uint64_t seed) {
  if (base <= 3) return exhaustive(base);
  return sampled(base, 64, seed);
}

FunctionTable pairingTable(int base, std::span<const std::uint8_t> f,
                           std::span<const std::uint8_t> g) {
  if (f.size() != g.size()) fail(ErrorCode::ground_mismatch, "pairing: index sets differ");
  std::map<std::pair<int, int>, int> code; // realized pair -> value, assigned in row-major order
  for (std::size_t i = 0; i < f.size(); ++i) code[{f[i], g[i]}] = 0;
  if (static_cast<int>(code.size()) > base)
    fail(ErrorCode::bad_argument,
         "pairing: more realized pairs than base elements (requires |A| >= |I|)");
  int next = 0;
  for (auto& [pair, v] : code) v = next++;
  std::vector<std::uint8_t> e(static_cast<std::size_t>(base) * base, 0);
  for (auto& [pair, v] : code)
    e[static_cast<std::size_t>(pair.first) * base + pair.second] = static_cast<std::uint8_t>(v);
  return FunctionTable(base, 2, std::move(e));
}

} // namespace uniclone
