#include "uniclone/generators.hpp"

#include <algorithm>
#include <map>

namespace uniclone {

Elem phiAlpha(const GeneratorAssignment& a, const FunctionTable& ell) {
  if (ell.arity != a.gens())
    fail(ErrorCode::arity_mismatch, "phi: element arity differs from the assignment");
  return a.target.apply(ell, a.alpha);
}

Homomorphism phiAlphaHom(const FreeAlgebra& free, const GeneratorAssignment& a) {
  if (a.gens() != free.gens) fail(ErrorCode::bad_argument, "phi: generator count mismatch");
  if (a.target.base() != free.alg.base()) fail(ErrorCode::bad_argument, "phi: base mismatch");
  Homomorphism h;
  h.source = free.alg;
  h.target = a.target;
  h.map.resize(free.alg.size());
  for (Elem x = 0; x < free.alg.size(); ++x) h.map[x] = phiAlpha(a, freeElementTable(free, x));
  return h;
}

BAFilter zAlphaFilter(const FreeAlgebra& free, const GeneratorAssignment& a) {
  Homomorphism phi = phiAlphaHom(free, a);
  return congruenceToZFilter(free.alg, kernelPartition(phi));
}

ZAlphaPredicate::ZAlphaPredicate(GeneratorAssignment a) : a_(std::move(a)) {
  std::size_t pts = powSize(a_.target.base(), a_.gens());
  if (pts > 63) fail(ErrorCode::cap_exceeded, "Z predicate: index set too large for masks");
  points_ = static_cast<int>(pts);
}

bool ZAlphaPredicate::contains(Subset r) const {
  const int b = a_.target.base();
  std::vector<std::uint8_t> e1(points_, 0), e2(points_);
  for (int p = 0; p < points_; ++p) e2[p] = (r & (1ULL << p)) ? 0 : 1;
  FunctionTable l1(b, a_.gens(), std::move(e1));
  FunctionTable l2(b, a_.gens(), std::move(e2));
  return phiAlpha(a_, l1) == phiAlpha(a_, l2);
}

FreeQuotient::FreeQuotient(GeneratorAssignment a, const TableSet& tables) : a_(std::move(a)) {
  GeneratedWithWitnesses gw = generateWithWitnesses(a_.target, a_.alpha, tables);
  std::vector<std::size_t> order(gw.members.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return gw.members[i] < gw.members[j]; });
  for (std::size_t i : order) {
    carrier_.push_back(gw.members[i]);
    reps_.push_back(gw.witnesses[i]);
  }
  for (std::size_t c = 0; c < carrier_.size(); ++c)
    if (phiAlpha(a_, reps_[c]) != carrier_[c])
      fail(ErrorCode::internal, "free quotient: representative does not map to its class");
}

int FreeQuotient::classOfTarget(Elem x) const {
  auto it = std::lower_bound(carrier_.begin(), carrier_.end(), x);
  if (it == carrier_.end() || *it != x)
    fail(ErrorCode::bad_argument, "free quotient: element outside <alpha''(I)>");
  return static_cast<int>(it - carrier_.begin());
}

int FreeQuotient::classOf(const FunctionTable& ell) const {
  return classOfTarget(phiAlpha(a_, ell));
}

namespace {

// entry constraints "t.entries[row] = v" for t(args) = value on pointwise
// structure; unachievable on conflict, unsupported when a quotient sits
// below a product or subalgebra
TableSearch collectConstraints(const Algebra& target, std::span<const Elem> args, Elem value,
                               std::map<std::size_t, std::uint8_t>& cs) {
  switch (target.provenance()) {
    case Algebra::Provenance::omega: {
      std::size_t row = 0;
      for (Elem x : args) row = row * target.base() + x;
      auto [it, fresh] = cs.try_emplace(row, static_cast<std::uint8_t>(value));
      return (fresh || it->second == value) ? TableSearch::found : TableSearch::unachievable;
    }
    case Algebra::Provenance::clone_power:
    case Algebra::Provenance::free_algebra: {
      const ClonePowerData* cp = target.clonePower();
      for (int i = 0; i < cp->index_size; ++i) {
        std::size_t row = 0;
        for (Elem x : args) row = row * cp->base + cp->carrier[x][i];
        auto [it, fresh] = cs.try_emplace(row, cp->carrier[value][i]);
        if (!fresh && it->second != cp->carrier[value][i]) return TableSearch::unachievable;
      }
      return TableSearch::found;
    }
    case Algebra::Provenance::product: {
      const int rs = target.productRight()->size();
      std::vector<Elem> la(args.size()), ra(args.size());
      for (std::size_t k = 0; k < args.size(); ++k) {
        la[k] = args[k] / rs;
        ra[k] = args[k] % rs;
      }
      TableSearch l = collectConstraints(*target.productLeft(), la, value / rs, cs);
      if (l != TableSearch::found) return l;
      return collectConstraints(*target.productRight(), ra, value % rs, cs);
    }
    case Algebra::Provenance::subalgebra:
    case Algebra::Provenance::colimit: {
      const auto& members = target.subalgebraData()->members;
      std::vector<Elem> up(args.size());
      for (std::size_t k = 0; k < args.size(); ++k) up[k] = members[args[k]];
      return collectConstraints(*target.parent(), up, members[value], cs);
    }
    case Algebra::Provenance::quotient:
      return TableSearch::unsupported; // only outermost quotient layers unwrap
  }
  return TableSearch::unsupported;
}

TableSearch solveLeast(const Algebra& target, std::span<const Elem> args, Elem value, int arity,
                       FunctionTable* out) {
  if (target.provenance() == Algebra::Provenance::quotient) {
    const QuotientData* q = target.quotientData();
    std::vector<Elem> reps(args.size());
    for (std::size_t k = 0; k < args.size(); ++k) reps[k] = q->reps[args[k]];
    // first class member (ascending) that is reachable wins
    for (Elem y = 0; y < target.parent()->size(); ++y) {
      if (q->class_of[y] != value) continue;
      TableSearch r = solveLeast(*target.parent(), reps, y, arity, out);
      if (r != TableSearch::unachievable) return r;
    }
    return TableSearch::unachievable;
  }
  std::map<std::size_t, std::uint8_t> cs;
  TableSearch r = collectConstraints(target, args, value, cs);
  if (r != TableSearch::found) return r;
  std::vector<std::uint8_t> entries(powSize(target.base(), arity), 0);
  for (auto [row, v] : cs) entries[row] = v;
  if (out) *out = FunctionTable(target.base(), arity, std::move(entries));
  return TableSearch::found;
}

} // namespace

TableSearch leastTableMapping(const Algebra& target, std::span<const Elem> args, Elem value,
                              int arity, FunctionTable* out) {
  if (static_cast<int>(args.size()) != arity)
    fail(ErrorCode::arity_mismatch, "least table: argument count differs from arity");
  FunctionTable t;
  TableSearch r = solveLeast(target, args, value, arity, out ? out : &t);
  if (r == TableSearch::found) {
    const FunctionTable& got = out ? *out : t;
    if (target.apply(got, args) != value)
      fail(ErrorCode::internal, "least table: solved table does not map to the value");
  }
  return r;
}

bool phiRepresentationsAgree(const FreeAlgebra& free, const GeneratorAssignment& a,
                             std::string* what) {
  if (free.alg.size() > 1024)
    fail(ErrorCode::cap_exceeded, "phi representations: free algebra too large for the sweep");
  const int b = free.alg.base();
  const int g = free.gens;
  for (Elem x = 0; x < free.alg.size(); ++x) {
    Elem expected = phiAlpha(a, freeElementTable(free, x));
    for (int n = 0; n <= g; ++n) {
      std::size_t tables = 1;
      for (std::size_t r = 0; r < powSize(b, n); ++r) tables *= static_cast<std::size_t>(b);
      if (tables > (1u << 20)) continue;
      std::vector<int> tuple(n, 0);
      while (true) {
        std::vector<Elem> pis(n), alphas(n);
        for (int k = 0; k < n; ++k) {
          pis[k] = free.projections[tuple[k]];
          alphas[k] = a.alpha[tuple[k]];
        }
        for (std::size_t code = 0; code < tables; ++code) {
          FunctionTable t = FunctionTable::fromCode(b, n, code);
          if (free.alg.apply(t, pis) != x) continue;
          if (a.target.apply(t, alphas) != expected) {
            if (what)
              *what = "element " + free.alg.describeElem(x) + " has representations with images " +
                      a.target.describeElem(expected) + " and " +
                      a.target.describeElem(a.target.apply(t, alphas));
            return false;
          }
        }
        int j = n - 1;
        for (; j >= 0; --j) {
          if (++tuple[j] < g) break;
          tuple[j] = 0;
        }
        if (j < 0) break;
      }
    }
  }
  return true;
}

} // namespace uniclone
