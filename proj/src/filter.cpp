#include "uniclone/filter.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace uniclone {

PartitionFilter PartitionFilter::generate(int ground, std::vector<SetPartition> base) {
  if (ground <= 0) fail(ErrorCode::bad_argument, "filter: empty ground set");
  for (const auto& p : base)
    if (p.ground() != ground)
      fail(ErrorCode::ground_mismatch, "filter: generator on a different ground set");
  SetPartition meet = meetAll(ground, base);
  return PartitionFilter(std::move(base), std::move(meet));
}

PartitionFilter PartitionFilter::principal(const SetPartition& p) {
  return generate(p.ground(), {p});
}

PartitionFilter PartitionFilter::full(int ground) {
  return principal(SetPartition::discrete(ground));
}

PartitionFilter PartitionFilter::trivial(int ground) {
  return principal(SetPartition::single(ground));
}

bool PartitionFilter::contains(const SetPartition& p) const {
  requireSameGround(meet_, p, "filter membership");
  return meet_.refines(p);
}

std::vector<SetPartition> PartitionFilter::members() const {
  // coarsenings of the meet: partitions of its block set, lifted pointwise
  const int k = meet_.blockCount();
  std::vector<SetPartition> out;
  for (const auto& grouping : allPartitions(k)) {
    std::vector<int> ids(ground());
    for (int x = 0; x < ground(); ++x) ids[x] = grouping.blockOf(meet_.blockOf(x));
    out.push_back(SetPartition::fromBlockIds(ids));
  }
  std::sort(out.begin(), out.end());
  return out;
}

BlockBooleanAlgebra BlockBooleanAlgebra::fromFilter(const PartitionFilter& f) {
  const int n = f.ground();
  if (n > 63) fail(ErrorCode::cap_exceeded, "block algebra: ground set too large for masks");
  if (f.generatorMeet().blockCount() > 10)
    fail(ErrorCode::cap_exceeded, "block algebra: generator meet has too many blocks");

  std::set<Subset> seen;
  seen.insert(0); // the empty set
  for (const auto& p : f.members()) {
    for (const auto& block : p.blocks()) {
      Subset mask = 0;
      for (int x : block) mask |= (1ULL << x);
      seen.insert(mask);
    }
  }

  BlockBooleanAlgebra ba;
  ba.ground_ = n;
  ba.elements_.assign(seen.begin(), seen.end());

  // closure verification; failure means a bug upstream, not a valid state
  const Subset top = ba.groundMask();
  if (!seen.count(top)) fail(ErrorCode::internal, "block algebra: missing ground set");
  for (Subset a : ba.elements_) {
    if (!seen.count(top & ~a)) fail(ErrorCode::internal, "block algebra: not complement-closed");
    for (Subset b : ba.elements_) {
      if (!seen.count(a & b)) fail(ErrorCode::internal, "block algebra: not intersection-closed");
      if (!seen.count(a | b)) fail(ErrorCode::internal, "block algebra: not union-closed");
    }
  }

  for (int i = 0; i < ba.size(); ++i)
    if (ba.isAtom(i)) {
      ba.atoms_.push_back(i);
      ba.atom_masks_.push_back(ba.elements_[i]);
    }
  return ba;
}

int BlockBooleanAlgebra::indexOf(Subset s) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), s);
  if (it == elements_.end() || *it != s) return -1;
  return static_cast<int>(it - elements_.begin());
}

bool BlockBooleanAlgebra::isAtom(int idx) const {
  Subset e = elements_[idx];
  if (e == 0) return false;
  for (Subset other : elements_) {
    if (other == 0 || other == e) continue;
    if ((other & ~e) == 0) return false; // proper nonempty subset
  }
  return true;
}

bool BAFilter::containsIdx(int idx) const {
  return std::binary_search(members.begin(), members.end(), idx);
}

bool BAFilter::containsSubset(Subset s) const {
  int idx = parent->indexOf(s);
  return idx >= 0 && containsIdx(idx);
}

std::string BAFilter::toString() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i) os << ',';
    os << subsetToString(parent->element(members[i]), parent->ground());
  }
  os << '}';
  return os.str();
}

BAFilter principalBAFilter(std::shared_ptr<const BlockBooleanAlgebra> ba, int generator_idx) {
  BAFilter z;
  z.parent = ba;
  z.generator_idx = generator_idx;
  const Subset g = ba->element(generator_idx);
  for (int i = 0; i < ba->size(); ++i)
    if ((g & ~ba->element(i)) == 0) z.members.push_back(i); // g subset of element i
  z.proper = g != 0;
  // ultrafilter dichotomy, checked literally
  z.ultra = z.proper;
  if (z.ultra) {
    const Subset top = ba->groundMask();
    for (int i = 0; i < ba->size(); ++i) {
      bool has = z.containsIdx(i);
      bool hasComp = z.containsSubset(top & ~ba->element(i));
      if (has == hasComp) { z.ultra = false; break; }
    }
  }
  return z;
}

std::vector<BAFilter> allBAFilters(std::shared_ptr<const BlockBooleanAlgebra> ba) {
  std::vector<BAFilter> out;
  out.reserve(ba->size());
  for (int i = 0; i < ba->size(); ++i) out.push_back(principalBAFilter(ba, i));
  return out;
}

BAFilter baFilterFromMembers(std::shared_ptr<const BlockBooleanAlgebra> ba, std::vector<int> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (members.empty()) fail(ErrorCode::not_a_filter, "BA filter: empty member set");
  for (int idx : members)
    if (idx < 0 || idx >= ba->size()) fail(ErrorCode::not_a_filter, "BA filter: member index out of range");

  Subset gen = ba->groundMask();
  for (int idx : members) gen &= ba->element(idx);
  int gen_idx = ba->indexOf(gen);
  if (gen_idx < 0) fail(ErrorCode::internal, "BA filter: meet of members escaped the algebra");

  BAFilter canonical = principalBAFilter(ba, gen_idx);
  if (canonical.members != members)
    fail(ErrorCode::not_a_filter, "BA filter: member set is not upward closed and intersection closed");
  return canonical;
}

std::string subsetToString(Subset s, int ground) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (int x = 0; x < ground; ++x)
    if (s & (1ULL << x)) {
      if (!first) os << ',';
      os << x;
      first = false;
    }
  os << '}';
  return os.str();
}

namespace {

// cover edges of a finite poset given as elements + leq predicate
template <typename Leq>
std::vector<std::pair<int, int>> coverEdges(int count, Leq leq) {
  std::vector<std::pair<int, int>> covers;
  for (int a = 0; a < count; ++a)
    for (int b = 0; b < count; ++b) {
      if (a == b || !leq(a, b)) continue;
      bool direct = true;
      for (int c = 0; c < count && direct; ++c)
        if (c != a && c != b && leq(a, c) && leq(c, b)) direct = false;
      if (direct) covers.emplace_back(a, b);
    }
  return covers;
}

} // namespace

std::string refinementLatticeDot(int n) {
  if (n > 6) fail(ErrorCode::cap_exceeded, "lattice export: ground set too large");
  auto ps = allPartitions(n);
  auto covers = coverEdges(static_cast<int>(ps.size()),
                           [&](int a, int b) { return ps[a].refines(ps[b]); });
  std::ostringstream os;
  os << "digraph refinement {\n  rankdir=BT;\n  node [shape=box];\n";
  for (std::size_t i = 0; i < ps.size(); ++i)
    os << "  p" << i << " [label=\"" << ps[i].toString() << "\"];\n";
  for (auto [a, b] : covers) os << "  p" << a << " -> p" << b << ";\n";
  os << "}\n";
  return os.str();
}

std::string baFilterLatticeDot(const PartitionFilter& f) {
  auto ba = std::make_shared<BlockBooleanAlgebra>(BlockBooleanAlgebra::fromFilter(f));
  auto filters = allBAFilters(ba);
  std::ostringstream os;
  os << "digraph filters {\n  rankdir=BT;\n  node [shape=box];\n";
  os << "  subgraph cluster_ba {\n    label=\"block algebra\";\n";
  for (int i = 0; i < ba->size(); ++i)
    os << "    e" << i << " [label=\"" << subsetToString(ba->element(i), ba->ground()) << "\"];\n";
  auto baCovers = coverEdges(ba->size(), [&](int a, int b) {
    return (ba->element(a) & ~ba->element(b)) == 0;
  });
  for (auto [a, b] : baCovers) os << "    e" << a << " -> e" << b << ";\n";
  os << "  }\n  subgraph cluster_filters {\n    label=\"filter lattice\";\n";
  for (std::size_t i = 0; i < filters.size(); ++i) {
    os << "    z" << i << " [label=\"up"
       << subsetToString(ba->element(filters[i].generator_idx), ba->ground());
    if (!filters[i].proper) os << " improper";
    if (filters[i].ultra) os << " ultra";
    os << "\"];\n";
  }
  auto zLeq = [&](int a, int b) {
    return std::includes(filters[b].members.begin(), filters[b].members.end(),
                         filters[a].members.begin(), filters[a].members.end());
  };
  auto zCovers = coverEdges(static_cast<int>(filters.size()), zLeq);
  for (auto [a, b] : zCovers) os << "    z" << a << " -> z" << b << ";\n";
  os << "  }\n}\n";
  return os.str();
}

} // namespace uniclone
