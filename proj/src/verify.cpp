#include "uniclone/verify.hpp"

#include <algorithm>
#include <chrono>
#include <set>

#include "uniclone/congruence.hpp"

namespace uniclone {

namespace {

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

std::vector<PartitionFilter> allPartitionFilters(int index) {
  // on a finite lattice every filter is principal
  std::vector<PartitionFilter> out;
  for (const auto& p : allPartitions(index)) out.push_back(PartitionFilter::principal(p));
  return out;
}

// the sampled-element homomorphism probe for maps out of a free algebra too
// large to materialize: check phi(t(l1,l2)) = t(phi l1, phi l2) pointwise
bool phiSampledHomCheck(const GeneratorAssignment& a, int samples, Rng& rng, std::string* why) {
  const int b = a.target.base();
  const int g = a.gens();
  const std::size_t rows = powSize(b, g);
  for (int s = 0; s < samples; ++s) {
    FunctionTable l1 = FunctionTable::random(b, g, rng);
    FunctionTable l2 = FunctionTable::random(b, g, rng);
    FunctionTable t = FunctionTable::random(b, 2, rng);
    std::vector<std::uint8_t> comp(rows);
    for (std::size_t r = 0; r < rows; ++r)
      comp[r] = t.entries[static_cast<std::size_t>(l1.entries[r]) * b + l2.entries[r]];
    Elem lhs = phiAlpha(a, FunctionTable(b, g, std::move(comp)));
    Elem args[2] = {phiAlpha(a, l1), phiAlpha(a, l2)};
    Elem rhs = a.target.apply(t, std::span<const Elem>(args, 2));
    if (lhs != rhs) {
      if (why) *why = "phi is not a homomorphism on a sampled pair";
      return false;
    }
  }
  return true;
}

} // namespace

void SuiteReport::check(bool cond, const std::string& detail) {
  ++cases;
  if (!cond) {
    ++failures;
    if (failure_details.size() < 25) failure_details.push_back(detail);
  }
}

json SuiteReport::toJson() const {
  return json{{"suite", suite},         {"seed", seed},       {"params", params},
              {"cases", cases},         {"failures", failures}, {"seconds", seconds},
              {"failure_details", failure_details}, {"ok", ok()}};
}

SuiteReport verifyThm1(int base, int index, int trials, std::uint64_t seed) {
  Timer timer;
  SuiteReport rep;
  rep.suite = "thm1";
  rep.seed = seed;
  rep.params = json{{"base", base}, {"index", index}, {"trials", trials}};

  TableSet tables = TableSet::forBase(base, seed ^ 0x7ab1e5ULL);
  Algebra full = buildClonePower(base, index, PartitionFilter::full(index));
  const ClonePowerData* data = full.clonePower();
  Rng rng(seed);

  for (int trial = 0; trial < trials; ++trial) {
    int nseeds = 1 + rng.intBelow(2);
    std::vector<Elem> seeds;
    for (int s = 0; s < nseeds; ++s) seeds.push_back(rng.intBelow(full.size()));

    std::vector<Elem> closure = generateSubalgebra(full, seeds, tables);
    std::vector<std::vector<std::uint8_t>> members;
    members.reserve(closure.size());
    for (Elem x : closure) members.push_back(data->carrier[x]);

    std::string tag = "trial " + std::to_string(trial);
    try {
      PartitionFilter f = subalgebraToFilter(base, index, members);
      // the round trip again, recorded per element
      bool exact = true;
      std::vector<std::vector<std::uint8_t>> gens;
      for (Elem s : seeds) gens.push_back(data->carrier[s]);
      for (Elem x = 0; x < full.size(); ++x) {
        bool in_b = std::binary_search(closure.begin(), closure.end(), x);
        if (f.contains(SetPartition::kernel(std::span<const std::uint8_t>(data->carrier[x]))) != in_b)
          exact = false;
        // the kernel-meet oracle agrees with the closure
        if (membershipByFilter(base, index, gens, data->carrier[x]) != in_b) exact = false;
      }
      rep.check(exact, tag + ": round trip or membership oracle mismatch");
    } catch (const Error& e) {
      rep.check(false, tag + ": " + e.what());
    }
  }
  rep.seconds = timer.elapsed();
  return rep;
}

SuiteReport verifyBlockAlgebra(int max_index) {
  Timer timer;
  SuiteReport rep;
  rep.suite = "block-algebra";
  rep.params = json{{"max_index", max_index}};

  for (int n = 1; n <= max_index; ++n) {
    auto filters = allPartitionFilters(n);
    // a few multi-generator bases as well; they land on the same meets
    auto parts = allPartitions(n);
    for (std::size_t i = 0; i < parts.size(); ++i)
      for (std::size_t j = i + 1; j < parts.size(); ++j)
        filters.push_back(PartitionFilter::generate(n, {parts[i], parts[j]}));

    for (const auto& f : filters) {
      std::string tag = "I=" + std::to_string(n) + " F=" + f.generatorMeet().toString();
      try {
        BlockBooleanAlgebra ba = BlockBooleanAlgebra::fromFilter(f); // closure verified inside
        bool ok = ba.indexOf(0) >= 0 && ba.indexOf(ba.groundMask()) >= 0;
        for (int a = 0; a < ba.size() && ok; ++a) {
          if (ba.complementIdx(a) < 0) ok = false;
          for (int b = 0; b < ba.size() && ok; ++b)
            if (ba.meetIdx(a, b) < 0 || ba.joinIdx(a, b) < 0) ok = false;
        }
        rep.check(ok, tag + ": closure violated");
      } catch (const Error& e) {
        rep.check(false, tag + ": " + e.what());
      }
    }
  }
  rep.seconds = timer.elapsed();
  return rep;
}

SuiteReport verifyThm2(int base, int index) {
  Timer timer;
  SuiteReport rep;
  rep.suite = "thm2";
  rep.params = json{{"base", base}, {"index", index}};
  TableSet tables = TableSet::forBase(base);
  int permutability_checks = 0;

  for (const auto& f : allPartitionFilters(index)) {
    std::string ftag = "F=" + f.generatorMeet().toString();
    Algebra cp = buildClonePower(base, index, f);
    auto ba = blockAlgebraOf(cp);
    auto zs = allBAFilters(ba);
    CongruenceEngine engine(cp, tables);
    const auto& lat = engine.lattice();

    rep.check(lat.size() == zs.size(),
              ftag + ": |Con| = " + std::to_string(lat.size()) + " but " +
                  std::to_string(zs.size()) + " filters");

    // theta -> Z -> theta is the identity
    std::vector<BAFilter> z_of_theta;
    for (const auto& theta : lat) {
      BAFilter z = congruenceToZFilter(cp, theta);
      SetPartition back = zFilterToCongruence(cp, z);
      rep.check(back == theta, ftag + ": theta->Z->theta moved " + theta.toString());
      z_of_theta.push_back(std::move(z));
    }

    // Z -> theta -> Z is the identity, and theta lands inside Con
    for (const auto& z : zs) {
      SetPartition theta = zFilterToCongruence(cp, z);
      bool in_lattice = std::find(lat.begin(), lat.end(), theta) != lat.end();
      rep.check(in_lattice, ftag + ": Z-congruence missing from the lattice");
      BAFilter back = congruenceToZFilter(cp, theta);
      rep.check(back.members == z.members, ftag + ": Z->theta->Z moved " + z.toString());
    }

    // both directions preserve and reflect order
    for (std::size_t i = 0; i < lat.size(); ++i)
      for (std::size_t j = 0; j < lat.size(); ++j) {
        bool finer = lat[i].refines(lat[j]);
        bool smaller = std::includes(z_of_theta[j].members.begin(), z_of_theta[j].members.end(),
                                     z_of_theta[i].members.begin(), z_of_theta[i].members.end());
        rep.check(finer == smaller, ftag + ": order correspondence broken");
      }

    // congruence permutability, folded in
    rep.check(congruencesPermute(engine), ftag + ": congruences do not permute");
    ++permutability_checks;
  }
  rep.params["permutability_checks"] = permutability_checks;
  rep.seconds = timer.elapsed();
  return rep;
}

SuiteReport verifyThm3(int base, int index, int depth, std::uint64_t seed) {
  Timer timer;
  SuiteReport rep;
  rep.suite = "thm3";
  rep.seed = seed;
  rep.params = json{{"base", base}, {"index", index}, {"depth", depth}, {"corpus", 100}};
  TableSet tables = TableSet::forBase(base);
  SymbolRegistry reg = SymbolRegistry::standard(base);
  int permutability_checks = 0;

  for (const auto& f : allPartitionFilters(index)) {
    Algebra cp = buildClonePower(base, index, f);
    auto ba = blockAlgebraOf(cp);
    for (const auto& z : allBAFilters(ba)) {
      LimitReducedPower lrp = limitReducedPower(cp, z);
      if (lrp.quotient.size() < 2) continue;
      std::string tag = "F=" + f.generatorMeet().toString() + " Z=" + z.toString();

      CongruenceEngine engine(lrp.quotient, tables);
      Classification cls = classify(engine);
      Homomorphism e = canonicalEmbedding(lrp.quotient, tables);
      ElementaryCheck ec = isElementaryEmbedding(e, reg, depth, 100, seed);

      bool pentagon = cls.simple == cls.subdirectly_irreducible &&
                      cls.simple == cls.directly_indecomposable &&
                      cls.simple == ec.elementary && cls.simple == z.ultra;
      rep.check(pentagon, tag + ": pentagon broken (simple=" + std::to_string(cls.simple) +
                              " si=" + std::to_string(cls.subdirectly_irreducible) +
                              " di=" + std::to_string(cls.directly_indecomposable) +
                              " elem=" + std::to_string(ec.elementary) +
                              " ultra=" + std::to_string(z.ultra) + ")");

      rep.check(congruencesPermute(engine), tag + ": congruences do not permute");
      ++permutability_checks;

      if (auto pair = findFactorPair(engine)) {
        // rebuild the product decomposition and check the pair map
        Algebra q1 = Algebra::makeQuotient(lrp.quotient, pair->first);
        Algebra q2 = Algebra::makeQuotient(lrp.quotient, pair->second);
        bool ok = q1.size() * q2.size() == lrp.quotient.size();
        if (ok) {
          Algebra prod = Algebra::makeProduct(q1, q2);
          Homomorphism h;
          h.source = lrp.quotient;
          h.target = prod;
          h.map.resize(lrp.quotient.size());
          for (Elem x = 0; x < lrp.quotient.size(); ++x)
            h.map[x] = pair->first.blockOf(x) * q2.size() + pair->second.blockOf(x);
          ok = isBijective(h) && isHomomorphism(h, tables);
        }
        rep.check(ok, tag + ": factorization through the factor pair failed");
      }
    }
  }
  rep.params["permutability_checks"] = permutability_checks;
  rep.seconds = timer.elapsed();
  return rep;
}

namespace {

// every algebra this artifact builds at base 2 with carrier <= 16
std::vector<Algebra> smallTargetZoo(int base, int carrier_cap) {
  std::vector<Algebra> zoo;
  zoo.push_back(Algebra::omega(base));
  for (int idx = 2; idx <= 3; ++idx)
    for (const auto& f : allPartitionFilters(idx)) {
      Algebra cp = buildClonePower(base, idx, f);
      if (cp.size() <= carrier_cap) zoo.push_back(cp);
      auto ba = blockAlgebraOf(cp);
      for (const auto& z : allBAFilters(ba)) {
        LimitReducedPower lrp = limitReducedPower(cp, z);
        if (lrp.quotient.size() <= carrier_cap && lrp.quotient.size() < cp.size())
          zoo.push_back(lrp.quotient);
      }
    }
  Algebra omega = Algebra::omega(base);
  zoo.push_back(Algebra::makeProduct(omega, omega));
  Algebra sq = Algebra::makeProduct(omega, omega);
  if (sq.size() * omega.size() <= carrier_cap)
    zoo.push_back(Algebra::makeProduct(sq, omega));
  for (int g = 1; g <= 2; ++g) {
    FreeAlgebra fr = freeAlgebra(base, g);
    if (fr.alg.size() <= carrier_cap) zoo.push_back(fr.alg);
  }
  // deduplicate by size+provenance signature only; repeats are harmless
  return zoo;
}

} // namespace

SuiteReport verifyFree(int base, int gens) {
  Timer timer;
  SuiteReport rep;
  rep.suite = "free";
  rep.params = json{{"base", base}, {"gens", gens}, {"target_cap", 16}};
  TableSet tables = TableSet::forBase(base);
  FreeAlgebra free = freeAlgebra(base, gens);

  for (const auto& target : smallTargetZoo(base, 16)) {
    std::string ttag = "target size " + std::to_string(target.size());
    std::vector<Homomorphism> homs =
        enumerateHomomorphisms(free.alg, target, free.projections, tables);

    // freeness: generator images biject homs with target^gens
    std::size_t expect = 1;
    for (int g = 0; g < gens; ++g) expect *= static_cast<std::size_t>(target.size());
    rep.check(homs.size() == expect,
              ttag + ": " + std::to_string(homs.size()) + " homs, expected " +
                  std::to_string(expect));

    std::set<std::vector<Elem>> images_seen;
    for (const auto& h : homs) {
      std::vector<Elem> img;
      for (Elem pi : free.projections) img.push_back(h.map[pi]);
      images_seen.insert(img);

      GeneratorAssignment a{target, img};
      Homomorphism phi = phiAlphaHom(free, a);
      rep.check(phi.map == h.map, ttag + ": phi differs from the enumerated homomorphism");
    }
    rep.check(images_seen.size() == homs.size(), ttag + ": two homs share generator images");

    // every assignment is reached, phi extends it, and representations agree
    std::vector<Elem> alpha(gens, 0);
    while (true) {
      GeneratorAssignment a{target, alpha};
      Homomorphism phi = phiAlphaHom(free, a);
      bool extends = true;
      for (int g = 0; g < gens; ++g)
        if (phi.map[free.projections[g]] != alpha[g]) extends = false;
      rep.check(extends, ttag + ": phi does not extend alpha");
      rep.check(isHomomorphism(phi, tables), ttag + ": phi is not a homomorphism");
      std::string why;
      rep.check(phiRepresentationsAgree(free, a, &why), ttag + ": " + why);

      int g = gens - 1;
      for (; g >= 0; --g) {
        if (++alpha[g] < target.size()) break;
        alpha[g] = 0;
      }
      if (g < 0) break;
    }
  }
  rep.seconds = timer.elapsed();
  return rep;
}

SuiteReport verifyFunctor(int trials, std::uint64_t seed) {
  Timer timer;
  SuiteReport rep;
  rep.suite = "functor";
  rep.seed = seed;
  rep.params = json{{"trials", trials}, {"base", 3}};
  const int base = 3;
  TableSet tables = TableSet::forBase(base);
  Rng rng(seed);

  std::vector<Algebra> pool;
  pool.push_back(Algebra::omega(base));
  for (const auto& f : allPartitionFilters(3)) pool.push_back(buildClonePower(base, 3, f));
  pool.push_back(Algebra::makeProduct(Algebra::omega(base), Algebra::omega(base)));
  pool.push_back(Algebra::makeProduct(pool[2], Algebra::omega(base))); // 9 x 3

  for (int trial = 0; trial < trials; ++trial) {
    std::string tag = "trial " + std::to_string(trial);
    int i = 1 + rng.intBelow(3);
    int j = 1 + rng.intBelow(3);
    int k = 1 + rng.intBelow(3);
    PowerMap f = PowerMap::random(base, i, j, rng);
    PowerMap g = PowerMap::random(base, j, k, rng);
    PowerMap gf = composePower(g, f);
    const Algebra& L = pool[rng.intBelow(static_cast<int>(pool.size()))];

    // composition law for the induced maps, on every tuple of L^I
    {
      bool ok = true;
      std::vector<Elem> tuple(i, 0);
      while (ok) {
        std::vector<Elem> via = inducedTuple(g, L, inducedTuple(f, L, tuple));
        std::vector<Elem> direct = inducedTuple(gf, L, tuple);
        if (via != direct) ok = false;
        int adv = i - 1;
        for (; adv >= 0; --adv) {
          if (++tuple[adv] < L.size()) break;
          tuple[adv] = 0;
        }
        if (adv < 0) break;
      }
      rep.check(ok, tag + ": induced composition law failed");
    }

    // (g o f)* = f* o g* on sampled elements of F(A,K)
    {
      bool ok = true;
      for (int s = 0; s < 30 && ok; ++s) {
        FunctionTable ell = FunctionTable::random(base, k, rng);
        if (!(pullback(gf, ell).entries == pullback(f, pullback(g, ell)).entries)) ok = false;
      }
      rep.check(ok, tag + ": pullback composition law failed");
    }

    // phi_beta = phi_alpha f* and the Z transfer
    {
      std::vector<Elem> alpha_vals(i);
      for (auto& v : alpha_vals) v = rng.intBelow(L.size());
      GeneratorAssignment alpha{L, alpha_vals};
      GeneratorAssignment beta = inducedAssignment(f, alpha);

      bool ok = true;
      for (int jj = 0; jj < j && ok; ++jj)
        if (phiAlpha(beta, FunctionTable::projection(base, j, jj)) !=
            phiAlpha(alpha, pullback(f, FunctionTable::projection(base, j, jj))))
          ok = false;
      for (int s = 0; s < 30 && ok; ++s) {
        FunctionTable ell = FunctionTable::random(base, j, rng);
        if (phiAlpha(beta, ell) != phiAlpha(alpha, pullback(f, ell))) ok = false;
      }
      rep.check(ok, tag + ": phi_beta = phi_alpha f* failed");

      ZAlphaPredicate z_alpha(alpha), z_beta(beta);
      int points_j = static_cast<int>(powSize(base, j));
      bool transfer_ok = true;
      auto preimage = [&](Subset r) {
        Subset s = 0;
        for (int p = 0; p < f.domPoints(); ++p)
          if (r & (1ULL << f.point_map[p])) s |= (1ULL << p);
        return s;
      };
      if (points_j <= 12) {
        for (Subset r = 0; r < (1ULL << points_j) && transfer_ok; ++r)
          if (z_beta.contains(r) != z_alpha.contains(preimage(r))) transfer_ok = false;
      } else {
        for (int s = 0; s < 256 && transfer_ok; ++s) {
          Subset r = rng.next() & ((1ULL << points_j) - 1);
          if (z_beta.contains(r) != z_alpha.contains(preimage(r))) transfer_ok = false;
        }
        Subset full = (1ULL << points_j) - 1;
        for (Subset r : {Subset(0), full})
          if (z_beta.contains(r) != z_alpha.contains(preimage(r))) transfer_ok = false;
      }
      rep.check(transfer_ok, tag + ": Z transfer failed");

      // iota square and witness independence
      try {
        FreeQuotient qb(beta, tables);
        FreeQuotient qa(alpha, tables);
        ConnectingMap e1 = connectingMap(qb, qa, f); // square checked inside
        rep.pass();
        LeqResult lr = generatorLeq(beta, alpha, tables);
        rep.check(lr.leq && lr.witness.has_value(), tag + ": leq lost the witness");
        if (lr.witness) {
          ConnectingMap e2 = connectingMap(qb, qa, *lr.witness);
          rep.check(e1.map == e2.map, tag + ": connecting map depends on the witness");
        }
        std::string why;
        Rng hom_rng(seed ^ (0x51ab00ULL + trial));
        rep.check(phiSampledHomCheck(alpha, 20, hom_rng, &why), tag + ": " + why);
      } catch (const Error& e) {
        rep.check(false, tag + ": " + std::string(e.what()));
      }
    }
  }
  rep.seconds = timer.elapsed();
  return rep;
}

SuiteReport verifyLos(int base, int index, int corpus_size, int depth, std::uint64_t seed) {
  Timer timer;
  SuiteReport rep;
  rep.suite = "los";
  rep.seed = seed;
  rep.params = json{{"base", base}, {"index", index}, {"corpus", corpus_size}, {"depth", depth}};
  SymbolRegistry reg = SymbolRegistry::withRandom(base, 4, seed ^ 0xc09b05ULL);
  std::vector<Formula> corpus = generateCorpus(reg, corpus_size, depth, seed);

  // necessity search corpus: the theorem-3 sentences plus the generated ones
  std::vector<Formula> necessity = corpus;
  for (int a = 0; a < base; ++a)
    for (int b = a + 1; b < base; ++b) necessity.push_back(thmThreeSentence(a, b));

  bool witness_found = false;
  std::string witness_where;
  for (const auto& f : allPartitionFilters(index)) {
    Algebra cp = buildClonePower(base, index, f);
    auto ba = blockAlgebraOf(cp);
    for (const auto& z : allBAFilters(ba)) {
      LimitReducedPower lrp = limitReducedPower(cp, z);
      std::string tag = "F=" + f.generatorMeet().toString() + " Z=" + z.toString();
      if (z.ultra) {
        TransferReport tr = losCheck(lrp, reg, corpus);
        rep.cases += tr.checked;
        rep.failures += tr.violations;
        for (const auto& item : tr.failures)
          if (rep.failure_details.size() < 25)
            rep.failure_details.push_back(tag + ": transfer failed for " + item.sentence);
      } else if (z.proper && lrp.quotient.size() >= 2 && !witness_found) {
        TransferReport tr = transferReport(lrp.quotient, reg, necessity);
        if (tr.violations > 0) {
          witness_found = true;
          witness_where = tag + " sentence: " + tr.failures.front().sentence;
        }
      }
    }
  }
  rep.check(witness_found, "no proper non-ultra Z exhibited a transfer failure");
  if (witness_found) rep.params["necessity_witness"] = witness_where;
  rep.seconds = timer.elapsed();
  return rep;
}

namespace {

Algebra colimitTargetPool(int which, int base) {
  Algebra omega = Algebra::omega(base);
  switch (which % 4) {
    case 0:
      return buildClonePower(base, 3, PartitionFilter::full(3));
    case 1:
      return Algebra::makeProduct(omega, omega);
    case 2: {
      auto parts = allPartitions(3);
      return buildClonePower(base, 3, PartitionFilter::principal(parts[1]));
    }
    default:
      return Algebra::makeProduct(Algebra::makeProduct(omega, omega), omega);
  }
}

} // namespace

SuiteReport verifyColimitRandom(int systems, std::uint64_t seed) {
  Timer timer;
  SuiteReport rep;
  rep.suite = "colimit";
  rep.seed = seed;
  rep.params = json{{"systems", systems}, {"max_chain", 4}};
  Rng rng(seed);

  for (int s = 0; s < systems; ++s) {
    std::string tag = "system " + std::to_string(s);
    int base = (s % 2 == 0) ? 3 : 2;
    TableSet tables = TableSet::forBase(base);
    Algebra target = colimitTargetPool(rng.intBelow(4), base);
    if (target.size() > 27) target = Algebra::makeProduct(Algebra::omega(base), Algebra::omega(base));

    // top assignment must generate the whole target
    std::vector<Elem> top;
    bool generated = false;
    for (int attempt = 0; attempt < 60 && !generated; ++attempt) {
      int gens = 1 + rng.intBelow(3);
      top.clear();
      for (int g = 0; g < gens; ++g) top.push_back(rng.intBelow(target.size()));
      generated = static_cast<int>(generateSubalgebra(target, top, tables).size()) == target.size();
    }
    if (!generated) {
      if (auto single = findSingleGenerator(target, tables)) {
        top = {*single};
        generated = true;
      }
    }
    if (!generated) {
      rep.check(false, tag + ": could not find a generating assignment");
      continue;
    }

    // chain below the top via random induced images (beta <= alpha holds by
    // construction); constant and single-stage systems appear for s < 2
    int length = (s == 0) ? 1 : 1 + rng.intBelow(4);
    DirectedSystem sys;
    sys.target = target;
    std::vector<std::vector<Elem>> chain(length);
    chain[length - 1] = top;
    for (int d = length - 2; d >= 0; --d) {
      if (s == 1) {
        chain[d] = chain[d + 1]; // constant system
      } else {
        int gens_d = 1 + rng.intBelow(3);
        PowerMap down = PowerMap::random(base, static_cast<int>(chain[d + 1].size()), gens_d, rng);
        GeneratorAssignment upper{target, chain[d + 1]};
        chain[d] = inducedAssignment(down, upper).alpha;
      }
    }
    sys.alphas = chain;
    for (int d = 0; d + 1 < length; ++d) sys.leq_edges.emplace_back(d, d + 1);

    try {
      ColimitResult res = directedColimit(sys, tables);
      bool ok = isBijective(res.iso) && res.colimit.size() == target.size();
      // cocone consistency: stage maps agree with iota through the colimit
      for (int d = 0; d < length && ok; ++d) {
        FreeQuotient q(GeneratorAssignment{target, sys.alphas[d]}, tables);
        for (int c = 0; c < q.size() && ok; ++c) {
          int cls = res.stage_to_colimit[d][c];
          if (res.iso.map[cls] != q.iota(c)) ok = false;
        }
      }
      rep.check(ok, tag + ": colimit disagreed with the stage iotas");
    } catch (const Error& e) {
      rep.check(false, tag + ": " + std::string(e.what()));
    }
  }
  rep.seconds = timer.elapsed();
  return rep;
}

SuiteReport verifyColimitSystem(const DirectedSystem& sys) {
  Timer timer;
  SuiteReport rep;
  rep.suite = "colimit";
  rep.params = json{{"stages", sys.alphas.size()}};
  TableSet tables = TableSet::forBase(sys.target.base());
  try {
    ColimitResult res = directedColimit(sys, tables);
    rep.check(isBijective(res.iso), "colimit map is not bijective");
    rep.params["max_stage"] = res.max_stage;
    rep.params["carrier"] = res.colimit.size();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::internal)
      rep.check(false, e.what());
    else
      throw; // malformed input is a usage error, not a property violation
  }
  rep.seconds = timer.elapsed();
  return rep;
}

SuiteReport losOnFiles(const json& power_desc, const json& corpus_doc) {
  Timer timer;
  SuiteReport rep;
  rep.suite = "los";

  if (!power_desc.contains("provenance") ||
      power_desc.at("provenance").get<std::string>() != "limit_reduced_power")
    fail(ErrorCode::bad_argument, "los: the power file must describe a limit_reduced_power");
  int base = power_desc.at("base").get<int>();
  PartitionFilter f = filterFromJson(power_desc.at("filter"));
  Algebra cp = buildClonePower(base, power_desc.at("index").get<int>(), f);
  auto ba = blockAlgebraOf(cp);
  std::vector<int> members;
  for (const auto& m : power_desc.at("Z").at("members")) {
    Subset s = 0;
    for (const auto& x : m) s |= (1ULL << x.get<int>());
    int idx = ba->indexOf(s);
    if (idx < 0) fail(ErrorCode::parse_error, "los: Z member outside the block algebra");
    members.push_back(idx);
  }
  LimitReducedPower lrp = limitReducedPower(cp, baFilterFromMembers(ba, std::move(members)));

  std::uint64_t seed = corpus_doc.value("seed", 0);
  SymbolRegistry reg = corpus_doc.contains("random_symbols")
                           ? SymbolRegistry::withRandom(base, corpus_doc.at("random_symbols").get<int>(), seed)
                           : SymbolRegistry::standard(base);
  std::vector<Formula> corpus;
  if (corpus_doc.contains("sentences"))
    for (const auto& s : corpus_doc.at("sentences"))
      corpus.push_back(parseFormula(s.get<std::string>(), reg));
  else
    corpus = generateCorpus(reg, corpus_doc.value("count", 100), corpus_doc.value("depth", 2), seed);

  rep.seed = seed;
  rep.params = json{{"sentences", corpus.size()}, {"ultra", lrp.ultra}};
  TransferReport tr = losCheck(lrp, reg, corpus);
  rep.cases = tr.checked;
  rep.failures = tr.violations;
  for (const auto& fail_item : tr.failures)
    if (rep.failure_details.size() < 25)
      rep.failure_details.push_back("transfer failed: " + fail_item.sentence);
  rep.seconds = timer.elapsed();
  return rep;
}

} // namespace uniclone
