#include "uniclone/congruence.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace uniclone {

namespace {

constexpr std::size_t kAssignmentCap = 1u << 18;
constexpr int kEngineCarrierCap = 255;

struct UnionFind {
  std::vector<int> parent;

  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  // returns true when the classes were distinct
  bool merge(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }

  SetPartition toPartition() {
    std::vector<int> ids(parent.size());
    for (std::size_t x = 0; x < parent.size(); ++x) ids[x] = find(static_cast<int>(x));
    return SetPartition::fromBlockIds(ids);
  }
};

// Pointwise view of the algebra underneath a (possibly empty) stack of
// quotients: top elements map down through representatives, bottom results
// map back up through the class maps.
struct StackedView {
  PointwiseView view;
  std::vector<Algebra> chain;   // outermost quotient first; last is the viewable base
  std::vector<const QuotientData*> layers; // parallel to chain minus the base

  Elem down(Elem x) const {
    for (const auto* q : layers) x = q->reps[x];
    return x;
  }
  Elem up(Elem x) const {
    for (auto it = layers.rbegin(); it != layers.rend(); ++it) x = (*it)->class_of[x];
    return x;
  }
};

std::optional<StackedView> tryStackedView(const Algebra& alg) {
  StackedView sv;
  Algebra cur = alg;
  while (cur.provenance() == Algebra::Provenance::quotient) {
    sv.chain.push_back(cur);
    sv.layers.push_back(cur.quotientData());
    cur = *cur.parent();
  }
  sv.chain.push_back(cur);
  auto view = pointwiseView(cur);
  if (!view) return std::nullopt;
  sv.view = std::move(*view);

  // worst-case touched cells for a binary step
  std::size_t tc = std::min<std::size_t>(static_cast<std::size_t>(alg.base()) * alg.base(),
                                         2 * static_cast<std::size_t>(sv.view.points));
  std::size_t assignments = 1;
  for (std::size_t i = 0; i < tc; ++i) {
    assignments *= static_cast<std::size_t>(alg.base());
    if (assignments > kAssignmentCap) return std::nullopt;
  }
  return sv;
}

using PairSink = std::vector<std::pair<Elem, Elem>>;

// (u(x), u(y)) for every unary table u: one free value per realized value
void unaryImagePairs(const StackedView& sv, int base, Elem x, Elem y, PairSink& out) {
  const auto& vx = sv.view.vec[sv.down(x)];
  const auto& vy = sv.view.vec[sv.down(y)];
  const std::size_t pts = vx.size();
  std::vector<int> slot_of(base, -1);
  int k = 0;
  for (std::size_t i = 0; i < pts; ++i) {
    if (slot_of[vx[i]] == -1) slot_of[vx[i]] = k++;
    if (slot_of[vy[i]] == -1) slot_of[vy[i]] = k++;
  }
  std::vector<std::uint8_t> assign(k, 0), w1(pts), w2(pts);
  while (true) {
    for (std::size_t i = 0; i < pts; ++i) {
      w1[i] = assign[slot_of[vx[i]]];
      w2[i] = assign[slot_of[vy[i]]];
    }
    out.emplace_back(sv.up(sv.view.elemOf(w1)), sv.up(sv.view.elemOf(w2)));
    int j = 0;
    for (; j < k; ++j) {
      if (++assign[j] < base) break;
      assign[j] = 0;
    }
    if (j == k) return;
  }
}

// (t(x,z), t(y,z)) for every binary t, for one argument order; one free
// value per realized cell (a,b) of the table
void binaryImagePairsOneSide(const StackedView& sv, int base, Elem x, Elem y, Elem z, bool z_first,
                             PairSink& out) {
  const auto& vx = sv.view.vec[sv.down(x)];
  const auto& vy = sv.view.vec[sv.down(y)];
  const auto& vz = sv.view.vec[sv.down(z)];
  const std::size_t pts = vx.size();
  std::vector<int> slot_of(static_cast<std::size_t>(base) * base, -1);
  std::vector<int> cell1(pts), cell2(pts);
  int k = 0;
  for (std::size_t i = 0; i < pts; ++i) {
    std::size_t c1 = z_first ? static_cast<std::size_t>(vz[i]) * base + vx[i]
                             : static_cast<std::size_t>(vx[i]) * base + vz[i];
    std::size_t c2 = z_first ? static_cast<std::size_t>(vz[i]) * base + vy[i]
                             : static_cast<std::size_t>(vy[i]) * base + vz[i];
    if (slot_of[c1] == -1) slot_of[c1] = k++;
    if (slot_of[c2] == -1) slot_of[c2] = k++;
    cell1[i] = slot_of[c1];
    cell2[i] = slot_of[c2];
  }
  std::vector<std::uint8_t> assign(k, 0), w1(pts), w2(pts);
  while (true) {
    for (std::size_t i = 0; i < pts; ++i) {
      w1[i] = assign[cell1[i]];
      w2[i] = assign[cell2[i]];
    }
    out.emplace_back(sv.up(sv.view.elemOf(w1)), sv.up(sv.view.elemOf(w2)));
    int j = 0;
    for (; j < k; ++j) {
      if (++assign[j] < base) break;
      assign[j] = 0;
    }
    if (j == k) return;
  }
}

} // namespace

struct CongruenceEngine::Impl {
  Algebra alg;
  TableSet tables;
  int m = 0;
  int base = 0;
  std::optional<StackedView> stacked; // fast path; requires exhaustive binaries
  std::optional<std::vector<SetPartition>> lattice;

  Impl(Algebra a, const TableSet& ts) : alg(std::move(a)), tables(ts) {
    m = alg.size();
    base = alg.base();
    if (m > kEngineCarrierCap)
      fail(ErrorCode::cap_exceeded, "congruence engine: carrier exceeds enumeration cap");
    if (tables.exhaustiveBinary()) stacked = tryStackedView(alg);
  }

  // forced one-step merges of a newly identified pair, literal table loop
  void literalStep(Elem x, Elem y, PairSink& out) {
    Elem a1[1], a2[1], b1[2], b2[2];
    for (const auto& t : tables.unary()) {
      a1[0] = x;
      a2[0] = y;
      out.emplace_back(alg.apply(t, std::span<const Elem>(a1, 1)),
                       alg.apply(t, std::span<const Elem>(a2, 1)));
    }
    for (Elem z = 0; z < m; ++z) {
      for (const auto& t : tables.binary()) {
        b1[0] = x; b1[1] = z; b2[0] = y; b2[1] = z;
        out.emplace_back(alg.apply(t, std::span<const Elem>(b1, 2)),
                         alg.apply(t, std::span<const Elem>(b2, 2)));
        b1[0] = z; b1[1] = x; b2[0] = z; b2[1] = y;
        out.emplace_back(alg.apply(t, std::span<const Elem>(b1, 2)),
                         alg.apply(t, std::span<const Elem>(b2, 2)));
      }
    }
  }

  void forcedStep(Elem x, Elem y, PairSink& out) {
    if (stacked) {
      unaryImagePairs(*stacked, base, x, y, out);
      for (Elem z = 0; z < m; ++z) {
        binaryImagePairsOneSide(*stacked, base, x, y, z, false, out);
        binaryImagePairsOneSide(*stacked, base, x, y, z, true, out);
      }
    } else {
      literalStep(x, y, out);
    }
  }

  SetPartition close(std::span<const std::pair<Elem, Elem>> seeds) {
    UnionFind uf(m);
    std::deque<std::pair<Elem, Elem>> work;
    for (auto [a, b] : seeds) {
      if (a < 0 || a >= m || b < 0 || b >= m)
        fail(ErrorCode::bad_argument, "congruence: pair out of carrier");
      if (uf.merge(a, b)) work.emplace_back(a, b);
    }
    PairSink forced;
    while (!work.empty()) {
      auto [x, y] = work.front();
      work.pop_front();
      forced.clear();
      forcedStep(x, y, forced);
      for (auto [p, q] : forced)
        if (uf.merge(p, q)) work.emplace_back(p, q);
    }
    return uf.toPartition();
  }

  bool isCongruence(const SetPartition& theta) {
    if (theta.ground() != m) fail(ErrorCode::ground_mismatch, "compatible: wrong ground");
    PairSink forced;
    for (const auto& block : theta.blocks()) {
      for (std::size_t i = 1; i < block.size(); ++i) {
        forced.clear();
        forcedStep(block[0], block[i], forced);
        for (auto [p, q] : forced)
          if (!theta.sameBlock(p, q)) return false;
      }
    }
    return true;
  }
};

CongruenceEngine::CongruenceEngine(Algebra alg, const TableSet& tables)
    : impl_(std::make_unique<Impl>(std::move(alg), tables)) {}

CongruenceEngine::~CongruenceEngine() = default;

const Algebra& CongruenceEngine::algebra() const { return impl_->alg; }

SetPartition CongruenceEngine::principal(Elem a, Elem b) {
  std::pair<Elem, Elem> seed{a, b};
  return impl_->close(std::span<const std::pair<Elem, Elem>>(&seed, 1));
}

SetPartition CongruenceEngine::generated(std::span<const std::pair<Elem, Elem>> pairs) {
  return impl_->close(pairs);
}

bool CongruenceEngine::compatible(const SetPartition& theta) { return impl_->isCongruence(theta); }

SetPartition CongruenceEngine::congruenceJoin(const SetPartition& a, const SetPartition& b) {
  SetPartition j = a.joinWith(b);
  std::vector<std::pair<Elem, Elem>> seeds;
  for (const auto& block : j.blocks())
    for (std::size_t i = 1; i < block.size(); ++i) seeds.emplace_back(block[0], block[i]);
  return impl_->close(seeds);
}

const std::vector<SetPartition>& CongruenceEngine::lattice() {
  if (impl_->lattice) return *impl_->lattice;
  const int m = impl_->m;
  std::set<SetPartition> found;
  found.insert(SetPartition::discrete(m));
  for (Elem a = 0; a < m; ++a)
    for (Elem b = a + 1; b < m; ++b) found.insert(principal(a, b));
  // join-closure
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<SetPartition> snapshot(found.begin(), found.end());
    for (std::size_t i = 0; i < snapshot.size() && !grew; ++i)
      for (std::size_t j = i + 1; j < snapshot.size(); ++j) {
        SetPartition join = congruenceJoin(snapshot[i], snapshot[j]);
        if (found.insert(join).second) {
          grew = true;
          break;
        }
      }
  }
  std::vector<SetPartition> out(found.begin(), found.end());
  std::sort(out.begin(), out.end(), [](const SetPartition& p, const SetPartition& q) {
    if (p.blockCount() != q.blockCount()) return p.blockCount() > q.blockCount();
    return p < q;
  });
  impl_->lattice = std::move(out);
  return *impl_->lattice;
}

bool isCompatible(const Algebra& alg, const SetPartition& theta, const TableSet& tables) {
  CongruenceEngine engine(alg, tables);
  return engine.compatible(theta);
}

Algebra quotientAlgebra(const Algebra& alg, const SetPartition& theta, const TableSet& tables) {
  if (!isCompatible(alg, theta, tables))
    fail(ErrorCode::bad_argument, "quotient: partition is not a congruence");
  return Algebra::makeQuotient(alg, theta);
}

bool relationalCompositionsEqual(const SetPartition& a, const SetPartition& b) {
  requireSameGround(a, b, "composition");
  const int n = a.ground();
  // x (a o b) z  iff  exists y: x a y and y b z
  auto composes = [&](const SetPartition& p, const SetPartition& q, int x, int z) {
    for (int y = 0; y < n; ++y)
      if (p.sameBlock(x, y) && q.sameBlock(y, z)) return true;
    return false;
  };
  for (int x = 0; x < n; ++x)
    for (int z = 0; z < n; ++z)
      if (composes(a, b, x, z) != composes(b, a, x, z)) return false;
  return true;
}

bool congruencesPermute(CongruenceEngine& engine) {
  const auto& lat = engine.lattice();
  for (std::size_t i = 0; i < lat.size(); ++i)
    for (std::size_t j = i + 1; j < lat.size(); ++j)
      if (!relationalCompositionsEqual(lat[i], lat[j])) return false;
  return true;
}

Classification classify(CongruenceEngine& engine) {
  Classification c;
  const int m = engine.algebra().size();
  if (m <= 1) return c; // the theorem assumes more than one element
  const auto& lat = engine.lattice();
  c.simple = lat.size() == 2;

  // unique minimal nontrivial congruence
  std::vector<const SetPartition*> nontrivial;
  for (const auto& t : lat)
    if (!t.isDiscrete()) nontrivial.push_back(&t);
  int minimal = 0;
  for (const auto* t : nontrivial) {
    bool is_minimal = true;
    for (const auto* u : nontrivial)
      if (u != t && u->refines(*t) && !(*u == *t)) is_minimal = false;
    if (is_minimal) ++minimal;
  }
  c.subdirectly_irreducible = !nontrivial.empty() && minimal == 1;

  c.directly_indecomposable = !findFactorPair(engine).has_value();
  return c;
}

std::optional<std::pair<SetPartition, SetPartition>> findFactorPair(CongruenceEngine& engine) {
  const int m = engine.algebra().size();
  if (m <= 1) return std::nullopt;
  const auto& lat = engine.lattice();
  for (std::size_t i = 0; i < lat.size(); ++i) {
    const auto& t1 = lat[i];
    if (t1.isDiscrete() || t1.isSingle()) continue;
    for (std::size_t j = i + 1; j < lat.size(); ++j) {
      const auto& t2 = lat[j];
      if (t2.isDiscrete() || t2.isSingle()) continue;
      if (!t1.meetWith(t2).isDiscrete()) continue;
      if (!engine.congruenceJoin(t1, t2).isSingle()) continue;
      if (!relationalCompositionsEqual(t1, t2)) continue;
      return std::make_pair(t1, t2);
    }
  }
  return std::nullopt;
}

} // namespace uniclone
