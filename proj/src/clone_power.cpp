#include "uniclone/clone_power.hpp"

#include <algorithm>
#include <set>

namespace uniclone {

const int kFreeCarrierCap = 20000;

Algebra buildClonePower(int base, int index_size, const PartitionFilter& filter, int carrier_cap) {
  if (base < 2 || base > 255) fail(ErrorCode::bad_argument, "clone power: base out of range");
  if (filter.ground() != index_size)
    fail(ErrorCode::ground_mismatch, "clone power: filter ground differs from index set");

  // carrier members are exactly the functions constant on the blocks of the
  // generator meet
  const SetPartition& meet = filter.generatorMeet();
  const int k = meet.blockCount();
  std::size_t count = 1;
  for (int i = 0; i < k; ++i) {
    count *= static_cast<std::size_t>(base);
    if (count > static_cast<std::size_t>(carrier_cap))
      fail(ErrorCode::cap_exceeded, "clone power: carrier exceeds cap");
  }

  ClonePowerData data;
  data.base = base;
  data.index_size = index_size;
  data.filter = filter;
  data.carrier.reserve(count);
  data.codes.reserve(count);
  std::vector<std::uint8_t> block_value(k, 0);
  while (true) {
    std::vector<std::uint8_t> f(index_size);
    for (int i = 0; i < index_size; ++i) f[i] = block_value[meet.blockOf(i)];
    data.carrier.push_back(std::move(f));
    int j = k - 1;
    for (; j >= 0; --j) {
      if (++block_value[j] < base) break;
      block_value[j] = 0;
    }
    if (j < 0) break;
  }
  std::sort(data.carrier.begin(), data.carrier.end());
  for (const auto& f : data.carrier)
    data.codes.push_back(tupleIndexU8(base, f));
  return Algebra::makeClonePower(std::move(data));
}

bool clonePowerContains(const Algebra& cp, std::span<const std::uint8_t> f) {
  const ClonePowerData* data = cp.clonePower();
  if (!data) fail(ErrorCode::bad_argument, "clone power membership: not a clone power");
  if (static_cast<int>(f.size()) != data->index_size)
    fail(ErrorCode::ground_mismatch, "clone power membership: wrong index size");
  return data->filter.contains(SetPartition::kernel(f));
}

PartitionFilter subalgebraToFilter(int base, int index_size,
                                   std::span<const std::vector<std::uint8_t>> members) {
  if (base < index_size)
    fail(ErrorCode::bad_argument, "subalgebra-to-filter: requires |A| >= |I|");
  if (members.empty()) fail(ErrorCode::bad_argument, "subalgebra-to-filter: empty subalgebra");

  std::vector<SetPartition> kernels;
  kernels.reserve(members.size());
  std::vector<char> constant_seen(base, 0);
  for (const auto& f : members) {
    if (static_cast<int>(f.size()) != index_size)
      fail(ErrorCode::ground_mismatch, "subalgebra-to-filter: member of wrong index size");
    kernels.push_back(SetPartition::kernel(std::span<const std::uint8_t>(f)));
    if (kernels.back().isSingle()) constant_seen[f[0]] = 1;
  }
  for (int a = 0; a < base; ++a)
    if (!constant_seen[a])
      fail(ErrorCode::bad_argument, "subalgebra-to-filter: missing constant function");

  PartitionFilter f = PartitionFilter::generate(index_size, std::move(kernels));

  // round trip over all of A^I; a mismatch means B was not pointwise closed
  std::set<std::vector<std::uint8_t>> in_b(members.begin(), members.end());
  std::size_t total = powSize(base, index_size);
  if (total > 1u << 20) fail(ErrorCode::cap_exceeded, "subalgebra-to-filter: power too large to verify");
  std::vector<std::uint8_t> g(index_size, 0);
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (int i = index_size - 1; i >= 0; --i) {
      g[i] = static_cast<std::uint8_t>(c % base);
      c /= base;
    }
    bool by_filter = f.contains(SetPartition::kernel(std::span<const std::uint8_t>(g)));
    if (by_filter != (in_b.count(g) > 0))
      fail(ErrorCode::bad_argument,
           "subalgebra-to-filter: round trip failed; input is not a closed subalgebra");
  }
  return f;
}

bool membershipByFilter(int base, int index_size,
                        std::span<const std::vector<std::uint8_t>> generators,
                        std::span<const std::uint8_t> g) {
  if (base < index_size)
    fail(ErrorCode::bad_argument, "membership-by-filter: requires |A| >= |I|");
  if (static_cast<int>(g.size()) != index_size)
    fail(ErrorCode::ground_mismatch, "membership-by-filter: candidate of wrong index size");
  SetPartition acc = SetPartition::single(index_size);
  for (const auto& f : generators) {
    if (static_cast<int>(f.size()) != index_size)
      fail(ErrorCode::ground_mismatch, "membership-by-filter: generator of wrong index size");
    acc = acc.meetWith(SetPartition::kernel(std::span<const std::uint8_t>(f)));
  }
  return acc.refines(SetPartition::kernel(g));
}

std::shared_ptr<const BlockBooleanAlgebra> blockAlgebraOf(const Algebra& cp) {
  const ClonePowerData* data = cp.clonePower();
  if (!data) fail(ErrorCode::bad_argument, "block algebra: not a clone power");
  return std::make_shared<BlockBooleanAlgebra>(BlockBooleanAlgebra::fromFilter(data->filter));
}

namespace {

Subset agreementSet(const std::vector<std::uint8_t>& f, const std::vector<std::uint8_t>& g) {
  Subset s = 0;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i] == g[i]) s |= (1ULL << i);
  return s;
}

} // namespace

BAFilter congruenceToZFilter(const Algebra& cp, const SetPartition& theta) {
  const ClonePowerData* data = cp.clonePower();
  if (!data) fail(ErrorCode::bad_argument, "congruence-to-Z: not a clone power");
  if (data->base < data->index_size)
    fail(ErrorCode::bad_argument, "congruence-to-Z: requires |A| >= |I|");
  if (theta.ground() != cp.size())
    fail(ErrorCode::ground_mismatch, "congruence-to-Z: partition not on the carrier");

  auto ba = blockAlgebraOf(cp);
  const int m = cp.size();
  std::vector<int> members;
  for (int idx = 0; idx < ba->size(); ++idx) {
    const Subset r = ba->element(idx);
    bool in_z = true;
    for (Elem x = 0; x < m && in_z; ++x)
      for (Elem y = x + 1; y < m; ++y) {
        if (theta.sameBlock(x, y)) continue;
        // x,y not related: r must separate them somewhere
        if ((agreementSet(data->carrier[x], data->carrier[y]) & r) == r) {
          in_z = false;
          break;
        }
      }
    if (in_z) members.push_back(idx);
  }
  // Theorem 2 says this is a filter; baFilterFromMembers re-checks it
  return baFilterFromMembers(ba, std::move(members));
}

SetPartition zFilterToCongruence(const Algebra& cp, const BAFilter& z) {
  const ClonePowerData* data = cp.clonePower();
  if (!data) fail(ErrorCode::bad_argument, "Z-to-congruence: not a clone power");
  auto ba = blockAlgebraOf(cp);
  if (ba->elements() != z.parent->elements() || ba->ground() != z.parent->ground())
    fail(ErrorCode::bad_argument, "Z-to-congruence: Z lives on a different block algebra");

  const int m = cp.size();
  std::vector<std::vector<char>> related(m, std::vector<char>(m, 0));
  for (Elem x = 0; x < m; ++x) {
    related[x][x] = 1;
    for (Elem y = x + 1; y < m; ++y) {
      Subset agree = agreementSet(data->carrier[x], data->carrier[y]);
      int idx = z.parent->indexOf(agree);
      if (idx < 0)
        fail(ErrorCode::internal, "Z-to-congruence: agreement set escaped the block algebra");
      related[x][y] = related[y][x] = z.containsIdx(idx) ? 1 : 0;
    }
  }
  // the relation must already be transitive (Z is intersection closed)
  for (Elem x = 0; x < m; ++x)
    for (Elem y = 0; y < m; ++y)
      for (Elem w = 0; w < m; ++w)
        if (related[x][y] && related[y][w] && !related[x][w])
          fail(ErrorCode::internal, "Z-to-congruence: relation not transitive");
  std::vector<int> ids(m);
  for (Elem x = 0; x < m; ++x) {
    int lead = x;
    for (Elem y = 0; y < m; ++y)
      if (related[x][y]) {
        lead = y;
        break;
      }
    ids[x] = lead;
  }
  return SetPartition::fromBlockIds(ids);
}

LimitReducedPower limitReducedPower(const Algebra& cp, const BAFilter& z) {
  LimitReducedPower out;
  out.base_power = cp;
  out.z = z;
  SetPartition theta = zFilterToCongruence(cp, z);
  out.quotient = Algebra::makeQuotient(cp, theta);
  out.ultra = z.ultra;
  return out;
}

LimitReducedPower reducedPowerOverSetFilter(int base, int index_size,
                                            std::span<const Subset> w_members) {
  Algebra cp = buildClonePower(base, index_size, PartitionFilter::full(index_size));
  auto ba = blockAlgebraOf(cp); // the full power set of I
  std::vector<int> members;
  members.reserve(w_members.size());
  for (Subset s : w_members) {
    int idx = ba->indexOf(s);
    if (idx < 0) fail(ErrorCode::not_a_filter, "reduced power: W contains a non-subset of I");
    members.push_back(idx);
  }
  BAFilter z = baFilterFromMembers(ba, std::move(members)); // validates the filter axioms
  return limitReducedPower(cp, z);
}

std::vector<SetPartition> coordinatePartitions(int base, int gens) {
  std::size_t points = powSize(base, gens);
  std::vector<SetPartition> coord;
  coord.reserve(gens);
  for (int i = 0; i < gens; ++i) {
    std::vector<int> ids(points);
    for (std::size_t p = 0; p < points; ++p) ids[p] = tupleFromIndex(base, gens, p)[i];
    coord.push_back(SetPartition::fromBlockIds(ids));
  }
  return coord;
}

FreeAlgebra freeAlgebra(int base, int gens, int carrier_cap) {
  if (gens < 1) fail(ErrorCode::bad_argument, "free algebra: need at least one generator");
  std::size_t points = powSize(base, gens);
  if (points > 63) fail(ErrorCode::cap_exceeded, "free algebra: index set A^I too large");

  PartitionFilter pf =
      PartitionFilter::generate(static_cast<int>(points), coordinatePartitions(base, gens));

  FreeAlgebra f;
  f.gens = gens;
  f.points = static_cast<int>(points);
  Algebra cp = buildClonePower(base, static_cast<int>(points), pf, carrier_cap);
  // re-tag with the free provenance and the projections
  ClonePowerData data = *cp.clonePower();
  data.free_gens = gens;
  for (int i = 0; i < gens; ++i) {
    std::vector<std::uint8_t> pi(points);
    for (std::size_t p = 0; p < points; ++p)
      pi[p] = static_cast<std::uint8_t>(tupleFromIndex(base, gens, p)[i]);
    std::uint64_t code = tupleIndexU8(base, pi);
    auto it = std::lower_bound(data.codes.begin(), data.codes.end(), code);
    if (it == data.codes.end() || *it != code)
      fail(ErrorCode::internal, "free algebra: projection missing from carrier");
    data.projections.push_back(static_cast<Elem>(it - data.codes.begin()));
  }
  f.projections = data.projections;
  f.alg = Algebra::makeClonePower(std::move(data), Algebra::Provenance::free_algebra);
  return f;
}

FunctionTable freeElementTable(const FreeAlgebra& f, Elem x) {
  const ClonePowerData* data = f.alg.clonePower();
  return FunctionTable(data->base, f.gens, data->carrier[x]);
}

Elem freeElementOf(const FreeAlgebra& f, const FunctionTable& t) {
  const ClonePowerData* data = f.alg.clonePower();
  if (t.base != data->base || t.arity != f.gens)
    fail(ErrorCode::bad_argument, "free element: table of wrong shape");
  std::uint64_t code = tupleIndexU8(t.base, t.entries);
  auto it = std::lower_bound(data->codes.begin(), data->codes.end(), code);
  if (it == data->codes.end() || *it != code)
    fail(ErrorCode::internal, "free element: table not in carrier");
  return static_cast<Elem>(it - data->codes.begin());
}

} // namespace uniclone
