#include "uniclone/uniform.hpp"

#include <algorithm>
#include <numeric>

namespace uniclone {

UniformSpace UniformSpace::make(int points, PartitionFilter f) {
  if (f.ground() != points)
    fail(ErrorCode::ground_mismatch, "uniform space: filter ground differs from point count");
  return UniformSpace{points, std::move(f)};
}

bool isUniformlyContinuous(std::span<const int> map, const PartitionFilter& source,
                           const PartitionFilter& target) {
  for (const auto& p : target.generators())
    if (!source.contains(preimagePartition(map, p))) return false;
  return true;
}

UniformMap UniformMap::make(UniformSpace source, UniformSpace target, std::vector<int> map) {
  if (static_cast<int>(map.size()) != source.points)
    fail(ErrorCode::bad_argument, "uniform map: wrong domain size");
  for (int v : map)
    if (v < 0 || v >= target.points)
      fail(ErrorCode::bad_argument, "uniform map: value outside the target");
  if (!isUniformlyContinuous(map, source.filter, target.filter))
    fail(ErrorCode::bad_argument, "uniform map: not uniformly continuous");
  return UniformMap{std::move(source), std::move(target), std::move(map)};
}

UniformMap composeUniform(const UniformMap& g, const UniformMap& f) {
  if (f.target.points != g.source.points)
    fail(ErrorCode::ground_mismatch, "compose: inner target differs from outer source");
  std::vector<int> m(f.map.size());
  for (std::size_t i = 0; i < f.map.size(); ++i) m[i] = g.map[f.map[i]];
  return UniformMap::make(f.source, g.target, std::move(m));
}

UniformSpace powerSpace(int base, int gens) {
  std::size_t points = powSize(base, gens);
  if (points > 4096) fail(ErrorCode::cap_exceeded, "power space: too many points");
  return UniformSpace::make(static_cast<int>(points),
                            PartitionFilter::generate(static_cast<int>(points),
                                                      coordinatePartitions(base, gens)));
}

PowerMap PowerMap::identity(int base, int gens) {
  PowerMap f;
  f.base = base;
  f.dom_gens = f.cod_gens = gens;
  f.point_map.resize(powSize(base, gens));
  std::iota(f.point_map.begin(), f.point_map.end(), 0);
  return f;
}

PowerMap PowerMap::fromCoordinates(int base, int dom_gens, std::span<const FunctionTable> coords) {
  PowerMap f;
  f.base = base;
  f.dom_gens = dom_gens;
  f.cod_gens = static_cast<int>(coords.size());
  std::size_t dom = powSize(base, dom_gens);
  for (const auto& c : coords)
    if (c.base != base || c.arity != dom_gens)
      fail(ErrorCode::bad_argument, "power map: coordinate table of wrong shape");
  f.point_map.resize(dom);
  for (std::size_t p = 0; p < dom; ++p) {
    std::uint32_t code = 0;
    for (const auto& c : coords) code = code * base + c.entries[p];
    f.point_map[p] = code;
  }
  return f;
}

PowerMap PowerMap::random(int base, int dom_gens, int cod_gens, Rng& rng) {
  PowerMap f;
  f.base = base;
  f.dom_gens = dom_gens;
  f.cod_gens = cod_gens;
  std::size_t dom = powSize(base, dom_gens);
  std::size_t cod = powSize(base, cod_gens);
  f.point_map.resize(dom);
  for (auto& v : f.point_map) v = static_cast<std::uint32_t>(rng.below(cod));
  return f;
}

int PowerMap::codPoints() const { return static_cast<int>(powSize(base, cod_gens)); }

FunctionTable PowerMap::coordinate(int j) const {
  if (j < 0 || j >= cod_gens) fail(ErrorCode::bad_argument, "power map: coordinate out of range");
  std::vector<std::uint8_t> e(point_map.size());
  for (std::size_t p = 0; p < point_map.size(); ++p)
    e[p] = static_cast<std::uint8_t>(tupleFromIndex(base, cod_gens, point_map[p])[j]);
  return FunctionTable(base, dom_gens, std::move(e));
}

UniformMap PowerMap::asUniformMap() const {
  std::vector<int> m(point_map.begin(), point_map.end());
  return UniformMap::make(powerSpace(base, dom_gens), powerSpace(base, cod_gens), std::move(m));
}

PowerMap composePower(const PowerMap& g, const PowerMap& f) {
  if (f.base != g.base || f.cod_gens != g.dom_gens)
    fail(ErrorCode::ground_mismatch, "compose: power maps do not chain");
  PowerMap h;
  h.base = f.base;
  h.dom_gens = f.dom_gens;
  h.cod_gens = g.cod_gens;
  h.point_map.resize(f.point_map.size());
  for (std::size_t p = 0; p < f.point_map.size(); ++p)
    h.point_map[p] = g.point_map[f.point_map[p]];
  return h;
}

FunctionTable pullback(const PowerMap& f, const FunctionTable& ell) {
  if (ell.base != f.base || ell.arity != f.cod_gens)
    fail(ErrorCode::bad_argument, "pullback: element of wrong shape");
  std::vector<std::uint8_t> e(f.point_map.size());
  for (std::size_t p = 0; p < f.point_map.size(); ++p) e[p] = ell.entries[f.point_map[p]];
  return FunctionTable(f.base, f.dom_gens, std::move(e));
}

Homomorphism pullbackHom(const PowerMap& f, const FreeAlgebra& free_j, const FreeAlgebra& free_i) {
  if (free_j.gens != f.cod_gens || free_i.gens != f.dom_gens ||
      free_j.alg.base() != f.base || free_i.alg.base() != f.base)
    fail(ErrorCode::bad_argument, "pullback: free algebras do not match the map");
  Homomorphism h;
  h.source = free_j.alg;
  h.target = free_i.alg;
  h.map.resize(free_j.alg.size());
  for (Elem x = 0; x < free_j.alg.size(); ++x)
    h.map[x] = freeElementOf(free_i, pullback(f, freeElementTable(free_j, x)));
  return h;
}

Elem inducedCoordinate(const PowerMap& f, const Algebra& target, std::span<const Elem> tuple,
                       int j) {
  return target.apply(f.coordinate(j), tuple);
}

std::vector<Elem> inducedTuple(const PowerMap& f, const Algebra& target,
                               std::span<const Elem> tuple) {
  if (static_cast<int>(tuple.size()) != f.dom_gens)
    fail(ErrorCode::arity_mismatch, "induced map: tuple length differs from |I|");
  std::vector<Elem> out(f.cod_gens);
  for (int j = 0; j < f.cod_gens; ++j) out[j] = inducedCoordinate(f, target, tuple, j);
  return out;
}

GeneratorAssignment inducedAssignment(const PowerMap& f, const GeneratorAssignment& alpha) {
  GeneratorAssignment beta;
  beta.target = alpha.target;
  beta.alpha = inducedTuple(f, alpha.target, alpha.alpha);
  return beta;
}

LeqResult generatorLeq(const GeneratorAssignment& beta, const GeneratorAssignment& alpha,
                       const TableSet& tables) {
  if (!beta.target.sameObject(alpha.target))
    fail(ErrorCode::bad_argument, "leq: assignments into different targets");
  const Algebra& L = alpha.target;
  const int b = L.base();
  const int icount = alpha.gens();

  // the definition: <beta''(J)> inside <alpha''(I)>
  std::vector<Elem> gen_a = generateSubalgebra(L, alpha.alpha, tables);
  bool contained = true;
  for (Elem x : beta.alpha)
    if (!std::binary_search(gen_a.begin(), gen_a.end(), x)) contained = false;

  LeqResult out;
  out.leq = contained;
  if (!contained) return out;

  // witness coordinates: smallest arity first, tuples lexicographic,
  // canonically least table
  std::vector<FunctionTable> coords;
  for (int j = 0; j < beta.gens(); ++j) {
    Elem want = beta.alpha[j];
    std::optional<FunctionTable> full; // lifted to arity |I|
    bool solver_usable = true;
    for (int n = 0; n <= icount && !full; ++n) {
      std::vector<int> tuple(n, 0);
      while (true) {
        std::vector<Elem> args(n);
        for (int k = 0; k < n; ++k) args[k] = alpha.alpha[tuple[k]];
        FunctionTable t;
        TableSearch r = leastTableMapping(L, args, want, n, &t);
        if (r == TableSearch::unsupported) {
          solver_usable = false;
          break;
        }
        if (r == TableSearch::found) {
          // widen t to an |I|-ary table reading the chosen coordinates
          std::size_t rows = powSize(b, icount);
          std::vector<std::uint8_t> e(rows);
          for (std::size_t p = 0; p < rows; ++p) {
            auto pt = tupleFromIndex(b, icount, p);
            std::vector<int> sub(n);
            for (int k = 0; k < n; ++k) sub[k] = pt[tuple[k]];
            e[p] = t.apply(sub);
          }
          full = FunctionTable(b, icount, std::move(e));
          break;
        }
        int adv = n - 1;
        for (; adv >= 0; --adv) {
          if (++tuple[adv] < icount) break;
          tuple[adv] = 0;
        }
        if (adv < 0) break;
      }
      if (!solver_usable) break;
    }
    if (!full && solver_usable)
      fail(ErrorCode::internal, "leq: containment holds but no witness coordinate was found");
    if (!full) {
      // fallback for shapes the solver cannot unwrap: take the closure
      // witness, which is |I|-ary by construction
      GeneratedWithWitnesses gw = generateWithWitnesses(L, alpha.alpha, tables);
      for (std::size_t i = 0; i < gw.members.size(); ++i)
        if (gw.members[i] == want) {
          full = gw.witnesses[i];
          break;
        }
      if (!full) fail(ErrorCode::internal, "leq: closure witness missing");
    }
    coords.push_back(std::move(*full));
  }
  out.witness = PowerMap::fromCoordinates(b, icount, coords);

  // beta really is the induced image of alpha along the witness
  GeneratorAssignment check = inducedAssignment(*out.witness, alpha);
  if (check.alpha != beta.alpha)
    fail(ErrorCode::internal, "leq: witness does not induce beta");
  return out;
}

ConnectingMap connectingMap(const FreeQuotient& dom_beta, const FreeQuotient& cod_alpha,
                            const PowerMap& witness) {
  const GeneratorAssignment& beta = dom_beta.assignment();
  const GeneratorAssignment& alpha = cod_alpha.assignment();
  if (witness.cod_gens != beta.gens() || witness.dom_gens != alpha.gens())
    fail(ErrorCode::bad_argument, "connecting map: witness shape mismatch");
  ConnectingMap e;
  e.map.resize(dom_beta.size());
  for (int c = 0; c < dom_beta.size(); ++c) {
    FunctionTable moved = pullback(witness, dom_beta.representative(c));
    e.map[c] = cod_alpha.classOf(moved);
    // iota_{beta,alpha} iota_beta = iota_alpha E^{beta,alpha}
    if (cod_alpha.iota(e.map[c]) != dom_beta.iota(c))
      fail(ErrorCode::internal, "connecting map: iota square does not commute");
  }
  return e;
}

namespace {

// reflexive-transitive closure of the stage ordering
std::vector<std::vector<char>> closeLeq(int n, std::span<const std::pair<int, int>> edges) {
  std::vector<std::vector<char>> leq(n, std::vector<char>(n, 0));
  for (int d = 0; d < n; ++d) leq[d][d] = 1;
  for (auto [d, e] : edges) {
    if (d < 0 || d >= n || e < 0 || e >= n)
      fail(ErrorCode::bad_argument, "directed system: edge stage out of range");
    leq[d][e] = 1;
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (leq[i][k] && leq[k][j]) leq[i][j] = 1;
  return leq;
}

} // namespace

ColimitResult directedColimit(const DirectedSystem& sys, const TableSet& tables) {
  const int n = static_cast<int>(sys.alphas.size());
  if (n == 0) fail(ErrorCode::bad_argument, "directed system: no stages");
  auto leq = closeLeq(n, sys.leq_edges);

  // directedness plus a maximum stage (any finite directed poset has one)
  int max_stage = 0;
  for (int d = 0; d < n; ++d) {
    int upper = -1;
    for (int e = 0; e < n; ++e)
      if (leq[max_stage][e] && leq[d][e]) {
        upper = e;
        break;
      }
    if (upper == -1) fail(ErrorCode::bad_argument, "directed system: stages are not directed");
    max_stage = upper;
  }

  // assignments must grow along the order
  std::vector<GeneratorAssignment> assigns(n);
  for (int d = 0; d < n; ++d) assigns[d] = GeneratorAssignment{sys.target, sys.alphas[d]};
  std::vector<std::vector<std::optional<PowerMap>>> witness(
      n, std::vector<std::optional<PowerMap>>(n));
  for (int d = 0; d < n; ++d)
    for (int e = 0; e < n; ++e) {
      if (!leq[d][e] || d == e) continue;
      LeqResult r = generatorLeq(assigns[d], assigns[e], tables);
      if (!r.leq)
        fail(ErrorCode::bad_argument, "directed system: alpha_d <= alpha_e fails on an edge");
      witness[d][e] = std::move(r.witness);
    }

  // covering: the union of the generated subalgebras is the whole target
  std::vector<char> covered(sys.target.size(), 0);
  for (int d = 0; d < n; ++d)
    for (Elem x : generateSubalgebra(sys.target, assigns[d].alpha, tables)) covered[x] = 1;
  for (Elem x = 0; x < sys.target.size(); ++x)
    if (!covered[x])
      fail(ErrorCode::bad_argument, "directed system: stages do not cover the target");

  std::vector<FreeQuotient> stages;
  stages.reserve(n);
  for (int d = 0; d < n; ++d) stages.emplace_back(assigns[d], tables);

  // connecting maps into the maximum; E^{d,d} is the identity
  std::vector<ConnectingMap> into_max(n);
  for (int d = 0; d < n; ++d) {
    if (d == max_stage) {
      into_max[d].map.resize(stages[d].size());
      std::iota(into_max[d].map.begin(), into_max[d].map.end(), 0);
    } else {
      into_max[d] = connectingMap(stages[d], stages[max_stage], *witness[d][max_stage]);
    }
  }
  // functoriality along every ordered pair: E^{d,m} = E^{e,m} o E^{d,e}
  for (int d = 0; d < n; ++d)
    for (int e = 0; e < n; ++e) {
      if (!leq[d][e] || d == e || e == max_stage) continue;
      ConnectingMap de = connectingMap(stages[d], stages[e], *witness[d][e]);
      for (int c = 0; c < stages[d].size(); ++c)
        if (into_max[e].map[de.map[c]] != into_max[d].map[c])
          fail(ErrorCode::internal, "directed colimit: connecting maps do not compose");
    }

  // classes of the colimit are the classes of the maximal stage; covering
  // makes iota_m onto the whole target
  const FreeQuotient& top = stages[max_stage];
  if (top.size() != sys.target.size())
    fail(ErrorCode::internal, "directed colimit: maximal stage does not cover the target");

  std::vector<Elem> members(top.size());
  for (int c = 0; c < top.size(); ++c) members[c] = top.iota(c);
  ColimitResult out;
  out.colimit = Algebra::makeSubalgebra(sys.target, members, Algebra::Provenance::colimit);
  out.max_stage = max_stage;
  for (int d = 0; d < n; ++d) out.stage_to_colimit.push_back(into_max[d].map);

  out.iso.source = out.colimit;
  out.iso.target = sys.target;
  out.iso.map = members;
  std::string why;
  if (!isBijective(out.iso) || !isHomomorphism(out.iso, tables, &why))
    fail(ErrorCode::internal, "directed colimit: the map onto the target is not an isomorphism: " + why);
  return out;
}

} // namespace uniclone
