#include "uniclone/algebra.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace uniclone {

const int kDefaultCarrierCap = 4096;

struct Algebra::Impl {
  Provenance tag = Provenance::omega;
  int base = 0;
  int size = 0;
  std::optional<ClonePowerData> clone;
  std::optional<QuotientData> quot;
  std::optional<SubalgebraData> sub;
  Algebra parent;      // quotient / subalgebra
  Algebra left, right; // product
};

Algebra Algebra::omega(int base) {
  if (base < 2) fail(ErrorCode::bad_argument, "omega: base must be at least 2");
  if (base > 255) fail(ErrorCode::cap_exceeded, "omega: base too large");
  auto impl = std::make_shared<Impl>();
  impl->tag = Provenance::omega;
  impl->base = base;
  impl->size = base;
  Algebra a;
  a.impl_ = std::move(impl);
  return a;
}

Algebra Algebra::makeClonePower(ClonePowerData data, Provenance tag) {
  if (data.carrier.empty()) fail(ErrorCode::internal, "clone power: empty carrier");
  if (data.codes.size() != data.carrier.size())
    fail(ErrorCode::internal, "clone power: codes out of sync");
  if (!std::is_sorted(data.codes.begin(), data.codes.end()))
    fail(ErrorCode::internal, "clone power: carrier not sorted");
  auto impl = std::make_shared<Impl>();
  impl->tag = tag;
  impl->base = data.base;
  impl->size = static_cast<int>(data.carrier.size());
  impl->clone = std::move(data);
  Algebra a;
  a.impl_ = std::move(impl);
  return a;
}

Algebra Algebra::makeQuotient(const Algebra& parent, const SetPartition& theta) {
  if (theta.ground() != parent.size())
    fail(ErrorCode::ground_mismatch, "quotient: partition not on the parent carrier");
  QuotientData q;
  q.theta = theta;
  q.reps.assign(theta.blockCount(), -1);
  q.class_of.resize(parent.size());
  for (Elem x = 0; x < parent.size(); ++x) {
    int c = theta.blockOf(x);
    q.class_of[x] = c;
    if (q.reps[c] == -1) q.reps[c] = x; // canonical: minimum carrier index
  }
  auto impl = std::make_shared<Impl>();
  impl->tag = Provenance::quotient;
  impl->base = parent.base();
  impl->size = theta.blockCount();
  impl->quot = std::move(q);
  impl->parent = parent;
  Algebra a;
  a.impl_ = std::move(impl);
  return a;
}

Algebra Algebra::makeProduct(const Algebra& left, const Algebra& right) {
  if (left.base() != right.base())
    fail(ErrorCode::bad_argument, "product: factors over different base sets");
  if (static_cast<long long>(left.size()) * right.size() > kDefaultCarrierCap)
    fail(ErrorCode::cap_exceeded, "product: carrier exceeds cap");
  auto impl = std::make_shared<Impl>();
  impl->tag = Provenance::product;
  impl->base = left.base();
  impl->size = left.size() * right.size();
  impl->left = left;
  impl->right = right;
  Algebra a;
  a.impl_ = std::move(impl);
  return a;
}

Algebra Algebra::makeSubalgebra(const Algebra& parent, std::vector<Elem> members, Provenance tag) {
  if (members.empty()) fail(ErrorCode::bad_argument, "subalgebra: empty carrier");
  SubalgebraData s;
  s.to_sub.assign(parent.size(), -1);
  for (std::size_t i = 0; i < members.size(); ++i) {
    Elem x = members[i];
    if (x < 0 || x >= parent.size()) fail(ErrorCode::bad_argument, "subalgebra: member out of range");
    if (s.to_sub[x] != -1) fail(ErrorCode::bad_argument, "subalgebra: duplicate member");
    s.to_sub[x] = static_cast<int>(i);
  }
  for (int a = 0; a < parent.base(); ++a)
    if (s.to_sub[parent.constantElem(a)] == -1)
      fail(ErrorCode::bad_argument, "subalgebra: missing a constant");
  s.members = std::move(members);
  auto impl = std::make_shared<Impl>();
  impl->tag = tag;
  impl->base = parent.base();
  impl->size = static_cast<int>(s.members.size());
  impl->sub = std::move(s);
  impl->parent = parent;
  Algebra a;
  a.impl_ = std::move(impl);
  return a;
}

int Algebra::base() const { return impl_->base; }
int Algebra::size() const { return impl_->size; }
Algebra::Provenance Algebra::provenance() const { return impl_->tag; }

const ClonePowerData* Algebra::clonePower() const {
  return impl_->clone ? &*impl_->clone : nullptr;
}
const QuotientData* Algebra::quotientData() const {
  return impl_->quot ? &*impl_->quot : nullptr;
}
const Algebra* Algebra::parent() const {
  return impl_->parent.valid() ? &impl_->parent : nullptr;
}
const Algebra* Algebra::productLeft() const {
  return impl_->left.valid() ? &impl_->left : nullptr;
}
const Algebra* Algebra::productRight() const {
  return impl_->right.valid() ? &impl_->right : nullptr;
}
const SubalgebraData* Algebra::subalgebraData() const {
  return impl_->sub ? &*impl_->sub : nullptr;
}

namespace {

Elem lookupCode(const ClonePowerData& cp, std::uint64_t code, const char* what) {
  auto it = std::lower_bound(cp.codes.begin(), cp.codes.end(), code);
  if (it == cp.codes.end() || *it != code)
    fail(ErrorCode::internal, std::string(what) + ": result escaped the carrier");
  return static_cast<Elem>(it - cp.codes.begin());
}

} // namespace

Elem Algebra::apply(const FunctionTable& t, std::span<const Elem> args) const {
  if (t.base != base()) fail(ErrorCode::bad_argument, "apply: table over a different base");
  if (static_cast<int>(args.size()) != t.arity)
    fail(ErrorCode::arity_mismatch, "apply: wrong argument count");
  for (Elem x : args)
    if (x < 0 || x >= size()) fail(ErrorCode::bad_argument, "apply: argument out of carrier");

  const Impl& im = *impl_;
  switch (im.tag) {
    case Provenance::omega:
      return t.entries[tupleIndex(base(), args)];
    case Provenance::clone_power:
    case Provenance::free_algebra: {
      const ClonePowerData& cp = *im.clone;
      std::uint64_t code = 0;
      const int b = cp.base;
      for (int i = 0; i < cp.index_size; ++i) {
        std::size_t row = 0;
        for (Elem x : args) row = row * b + cp.carrier[x][i];
        code = code * b + t.entries[row];
      }
      return lookupCode(cp, code, "apply");
    }
    case Provenance::quotient: {
      const QuotientData& q = *im.quot;
      std::vector<Elem> reps(args.size());
      for (std::size_t k = 0; k < args.size(); ++k) reps[k] = q.reps[args[k]];
      return q.class_of[im.parent.apply(t, reps)];
    }
    case Provenance::product: {
      const int rs = im.right.size();
      std::vector<Elem> ls(args.size()), rsv(args.size());
      for (std::size_t k = 0; k < args.size(); ++k) {
        ls[k] = args[k] / rs;
        rsv[k] = args[k] % rs;
      }
      return im.left.apply(t, ls) * rs + im.right.apply(t, rsv);
    }
    case Provenance::subalgebra:
    case Provenance::colimit: {
      const SubalgebraData& s = *im.sub;
      std::vector<Elem> up(args.size());
      for (std::size_t k = 0; k < args.size(); ++k) up[k] = s.members[args[k]];
      Elem y = im.parent.apply(t, up);
      int idx = s.to_sub[y];
      if (idx < 0) fail(ErrorCode::internal, "subalgebra: not closed under the applied table");
      return idx;
    }
  }
  fail(ErrorCode::internal, "apply: unhandled provenance");
}

Elem Algebra::constantElem(int a) const {
  if (a < 0 || a >= base()) fail(ErrorCode::bad_argument, "constant: value out of base range");
  const Impl& im = *impl_;
  switch (im.tag) {
    case Provenance::omega:
      return a;
    case Provenance::clone_power:
    case Provenance::free_algebra: {
      const ClonePowerData& cp = *im.clone;
      std::uint64_t code = 0;
      for (int i = 0; i < cp.index_size; ++i) code = code * cp.base + a;
      return lookupCode(cp, code, "constant");
    }
    case Provenance::quotient:
      return im.quot->class_of[im.parent.constantElem(a)];
    case Provenance::product:
      return im.left.constantElem(a) * im.right.size() + im.right.constantElem(a);
    case Provenance::subalgebra:
    case Provenance::colimit: {
      int idx = im.sub->to_sub[im.parent.constantElem(a)];
      if (idx < 0) fail(ErrorCode::internal, "subalgebra: missing constant");
      return idx;
    }
  }
  fail(ErrorCode::internal, "constant: unhandled provenance");
}

std::string Algebra::describeElem(Elem x) const {
  const Impl& im = *impl_;
  switch (im.tag) {
    case Provenance::omega:
      return std::to_string(x);
    case Provenance::clone_power:
    case Provenance::free_algebra: {
      const auto& v = im.clone->carrier[x];
      std::ostringstream os;
      os << '(';
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ',';
        os << int(v[i]);
      }
      os << ')';
      return os.str();
    }
    case Provenance::quotient:
      return "[" + im.parent.describeElem(im.quot->reps[x]) + "]";
    case Provenance::product:
      return "(" + im.left.describeElem(x / im.right.size()) + "|" +
             im.right.describeElem(x % im.right.size()) + ")";
    case Provenance::subalgebra:
    case Provenance::colimit:
      return im.parent.describeElem(im.sub->members[x]);
  }
  return "?";
}

Elem PointwiseView::elemOf(const std::vector<std::uint8_t>& v) const {
  if (!dense.empty()) {
    Elem e = dense[tupleIndexU8(base, v)];
    if (e < 0) fail(ErrorCode::internal, "pointwise view: value vector not in carrier");
    return e;
  }
  auto it = std::lower_bound(index.begin(), index.end(), v,
                             [](const auto& a, const auto& b) { return a.first < b; });
  if (it == index.end() || it->first != v)
    fail(ErrorCode::internal, "pointwise view: value vector not in carrier");
  return it->second;
}

namespace {

bool buildView(const Algebra& alg, std::vector<std::vector<std::uint8_t>>& out) {
  switch (alg.provenance()) {
    case Algebra::Provenance::omega:
      out.assign(alg.size(), {});
      for (Elem x = 0; x < alg.size(); ++x) out[x] = {static_cast<std::uint8_t>(x)};
      return true;
    case Algebra::Provenance::clone_power:
    case Algebra::Provenance::free_algebra:
      out = alg.clonePower()->carrier;
      return true;
    case Algebra::Provenance::product: {
      std::vector<std::vector<std::uint8_t>> lv, rv;
      if (!buildView(*alg.productLeft(), lv) || !buildView(*alg.productRight(), rv)) return false;
      const int rs = alg.productRight()->size();
      out.resize(alg.size());
      for (Elem x = 0; x < alg.size(); ++x) {
        out[x] = lv[x / rs];
        const auto& r = rv[x % rs];
        out[x].insert(out[x].end(), r.begin(), r.end());
      }
      return true;
    }
    case Algebra::Provenance::subalgebra:
    case Algebra::Provenance::colimit: {
      std::vector<std::vector<std::uint8_t>> pv;
      if (!buildView(*alg.parent(), pv)) return false;
      const auto& members = alg.subalgebraData()->members;
      out.resize(alg.size());
      for (Elem x = 0; x < alg.size(); ++x) out[x] = pv[members[x]];
      return true;
    }
    case Algebra::Provenance::quotient:
      return false;
  }
  return false;
}

} // namespace

std::optional<PointwiseView> pointwiseView(const Algebra& alg) {
  PointwiseView view;
  if (!buildView(alg, view.vec)) return std::nullopt;
  view.base = alg.base();
  view.points = view.vec.empty() ? 0 : static_cast<int>(view.vec[0].size());
  view.index.reserve(view.vec.size());
  for (Elem x = 0; x < static_cast<int>(view.vec.size()); ++x) view.index.push_back({view.vec[x], x});
  std::sort(view.index.begin(), view.index.end());
  std::size_t codes = 1;
  bool small = true;
  for (int i = 0; i < view.points && small; ++i) {
    codes *= static_cast<std::size_t>(view.base);
    if (codes > (1u << 20)) small = false;
  }
  if (small) {
    view.dense.assign(codes, -1);
    for (Elem x = 0; x < static_cast<int>(view.vec.size()); ++x)
      view.dense[tupleIndexU8(view.base, view.vec[x])] = x;
  }
  return view;
}

namespace {

struct ClosureState {
  std::vector<char> in;
  std::vector<Elem> members;
  std::deque<Elem> queue;

  explicit ClosureState(int size) : in(size, 0) {}
  void add(Elem x) {
    if (!in[x]) {
      in[x] = 1;
      members.push_back(x);
      queue.push_back(x);
    }
  }
};

void seedClosure(const Algebra& alg, std::span<const Elem> seeds, ClosureState& st) {
  for (int a = 0; a < alg.base(); ++a) st.add(alg.constantElem(a));
  for (Elem s : seeds) {
    if (s < 0 || s >= alg.size()) fail(ErrorCode::bad_argument, "generate: seed out of carrier");
    st.add(s);
  }
}

// All images u(x) over every unary table u, read off the distinct values of
// x in the view: assign an arbitrary base value to each distinct value.
template <typename Emit>
void forEachUnaryImage(const PointwiseView& view, int base, Elem x, Emit emit) {
  const auto& xv = view.vec[x];
  std::vector<int> value_class(base, -1);
  int k = 0;
  for (auto a : xv)
    if (value_class[a] == -1) value_class[a] = k++;
  std::vector<std::uint8_t> assign(k, 0), z(xv.size());
  while (true) {
    for (std::size_t i = 0; i < xv.size(); ++i) z[i] = assign[value_class[xv[i]]];
    emit(z);
    int j = 0;
    for (; j < k; ++j) {
      if (++assign[j] < base) break;
      assign[j] = 0;
    }
    if (j == k) return;
  }
}

// All images t(x,y) over every binary table t: one value per distinct
// realized pair (x_i, y_i).
template <typename Emit>
void forEachBinaryImage(const PointwiseView& view, int base, Elem x, Elem y, Emit emit) {
  const auto& xv = view.vec[x];
  const auto& yv = view.vec[y];
  std::vector<int> pair_class(static_cast<std::size_t>(base) * base, -1);
  int k = 0;
  for (std::size_t i = 0; i < xv.size(); ++i) {
    std::size_t p = static_cast<std::size_t>(xv[i]) * base + yv[i];
    if (pair_class[p] == -1) pair_class[p] = k++;
  }
  std::vector<std::uint8_t> assign(k, 0), z(xv.size());
  while (true) {
    for (std::size_t i = 0; i < xv.size(); ++i)
      z[i] = assign[pair_class[static_cast<std::size_t>(xv[i]) * base + yv[i]]];
    emit(z);
    int j = 0;
    for (; j < k; ++j) {
      if (++assign[j] < base) break;
      assign[j] = 0;
    }
    if (j == k) return;
  }
}

} // namespace

std::vector<Elem> generateSubalgebraLiteral(const Algebra& alg, std::span<const Elem> seeds,
                                            const TableSet& tables) {
  if (tables.base() != alg.base())
    fail(ErrorCode::bad_argument, "generate: table set over a different base");
  ClosureState st(alg.size());
  seedClosure(alg, seeds, st);

  const bool pair_synth = tables.synthesizePairings() && alg.clonePower() != nullptr;
  const ClonePowerData* cp = alg.clonePower();

  while (!st.queue.empty()) {
    Elem x = st.queue.front();
    st.queue.pop_front();
    Elem xy[2];
    for (const auto& t : tables.unary()) {
      xy[0] = x;
      st.add(alg.apply(t, std::span<const Elem>(xy, 1)));
    }
    // members grows while iterating; indices stay valid
    for (std::size_t yi = 0; yi < st.members.size(); ++yi) {
      Elem y = st.members[yi];
      for (const auto& t : tables.binary()) {
        xy[0] = x; xy[1] = y;
        st.add(alg.apply(t, std::span<const Elem>(xy, 2)));
        xy[0] = y; xy[1] = x;
        st.add(alg.apply(t, std::span<const Elem>(xy, 2)));
      }
      if (pair_synth) {
        FunctionTable pt = pairingTable(alg.base(), cp->carrier[x], cp->carrier[y]);
        xy[0] = x; xy[1] = y;
        st.add(alg.apply(pt, std::span<const Elem>(xy, 2)));
      }
    }
  }
  std::sort(st.members.begin(), st.members.end());
  return st.members;
}

std::vector<Elem> generateSubalgebra(const Algebra& alg, std::span<const Elem> seeds,
                                     const TableSet& tables) {
  if (!tables.exhaustiveBinary()) return generateSubalgebraLiteral(alg, seeds, tables);
  auto view = pointwiseView(alg);
  if (!view) return generateSubalgebraLiteral(alg, seeds, tables);

  if (tables.base() != alg.base())
    fail(ErrorCode::bad_argument, "generate: table set over a different base");
  ClosureState st(alg.size());
  seedClosure(alg, seeds, st);
  const int b = alg.base();
  while (!st.queue.empty()) {
    Elem x = st.queue.front();
    st.queue.pop_front();
    forEachUnaryImage(*view, b, x, [&](const std::vector<std::uint8_t>& z) {
      st.add(view->elemOf(z));
    });
    for (std::size_t yi = 0; yi < st.members.size(); ++yi) {
      forEachBinaryImage(*view, b, x, st.members[yi], [&](const std::vector<std::uint8_t>& z) {
        st.add(view->elemOf(z));
      });
    }
  }
  std::sort(st.members.begin(), st.members.end());
  return st.members;
}

bool isHomomorphism(const Homomorphism& h, const TableSet& tables, std::string* first_violation) {
  const Algebra& s = h.source;
  const Algebra& t = h.target;
  if (static_cast<int>(h.map.size()) != s.size())
    fail(ErrorCode::bad_argument, "homomorphism: map size does not match source carrier");
  auto report = [&](const std::string& msg) {
    if (first_violation) *first_violation = msg;
    return false;
  };
  for (int a = 0; a < s.base(); ++a)
    if (h.map[s.constantElem(a)] != t.constantElem(a))
      return report("constant " + std::to_string(a) + " is not preserved");
  Elem sa[2], ta[2];
  for (const auto& tab : tables.unary()) {
    for (Elem x = 0; x < s.size(); ++x) {
      sa[0] = x;
      ta[0] = h.map[x];
      if (h.map[s.apply(tab, std::span<const Elem>(sa, 1))] !=
          t.apply(tab, std::span<const Elem>(ta, 1)))
        return report("unary table violated at " + s.describeElem(x));
    }
  }
  for (const auto& tab : tables.binary()) {
    for (Elem x = 0; x < s.size(); ++x)
      for (Elem y = 0; y < s.size(); ++y) {
        sa[0] = x; sa[1] = y;
        ta[0] = h.map[x]; ta[1] = h.map[y];
        if (h.map[s.apply(tab, std::span<const Elem>(sa, 2))] !=
            t.apply(tab, std::span<const Elem>(ta, 2)))
          return report("binary table violated at (" + s.describeElem(x) + "," + s.describeElem(y) + ")");
      }
  }
  return true;
}

bool isBijective(const Homomorphism& h) {
  if (h.source.size() != h.target.size()) return false;
  std::vector<char> hit(h.target.size(), 0);
  for (Elem y : h.map) {
    if (y < 0 || y >= h.target.size() || hit[y]) return false;
    hit[y] = 1;
  }
  return true;
}

Homomorphism canonicalEmbedding(const Algebra& target, const TableSet& tables) {
  Homomorphism e;
  e.source = Algebra::omega(target.base());
  e.target = target;
  e.map.resize(target.base());
  for (int a = 0; a < target.base(); ++a) e.map[a] = target.constantElem(a);
  std::string why;
  if (!isHomomorphism(e, tables, &why))
    fail(ErrorCode::internal, "canonical embedding is not a homomorphism: " + why);
  return e;
}

SetPartition kernelPartition(const Homomorphism& h) {
  return SetPartition::kernel(std::span<const int>(h.map));
}

namespace {

// Assign images to generators, then force the rest of the map along the
// closure; returns the total map or nothing on conflict.
std::optional<std::vector<Elem>> propagateHom(const Algebra& s, const Algebra& t,
                                              std::span<const Elem> gens,
                                              std::span<const Elem> images,
                                              const TableSet& tables) {
  std::vector<Elem> map(s.size(), -1);
  std::vector<Elem> known;
  std::deque<Elem> queue;
  auto assign = [&](Elem x, Elem y) {
    if (map[x] == -1) {
      map[x] = y;
      known.push_back(x);
      queue.push_back(x);
      return true;
    }
    return map[x] == y;
  };
  for (int a = 0; a < s.base(); ++a)
    if (!assign(s.constantElem(a), t.constantElem(a))) return std::nullopt;
  for (std::size_t j = 0; j < gens.size(); ++j)
    if (!assign(gens[j], images[j])) return std::nullopt;

  Elem sa[2], ta[2];
  while (!queue.empty()) {
    Elem x = queue.front();
    queue.pop_front();
    for (const auto& tab : tables.unary()) {
      sa[0] = x;
      ta[0] = map[x];
      if (!assign(s.apply(tab, std::span<const Elem>(sa, 1)),
                  t.apply(tab, std::span<const Elem>(ta, 1))))
        return std::nullopt;
    }
    for (std::size_t yi = 0; yi < known.size(); ++yi) {
      Elem y = known[yi];
      for (const auto& tab : tables.binary()) {
        sa[0] = x; sa[1] = y;
        ta[0] = map[x]; ta[1] = map[y];
        if (!assign(s.apply(tab, std::span<const Elem>(sa, 2)),
                    t.apply(tab, std::span<const Elem>(ta, 2))))
          return std::nullopt;
        sa[0] = y; sa[1] = x;
        ta[0] = map[y]; ta[1] = map[x];
        if (!assign(s.apply(tab, std::span<const Elem>(sa, 2)),
                    t.apply(tab, std::span<const Elem>(ta, 2))))
          return std::nullopt;
      }
    }
  }
  for (Elem x = 0; x < s.size(); ++x)
    if (map[x] == -1)
      fail(ErrorCode::bad_argument,
           "homomorphism enumeration: generators and constants do not generate the source");
  return map;
}

} // namespace

std::vector<Homomorphism> enumerateHomomorphisms(const Algebra& source, const Algebra& target,
                                                 std::span<const Elem> generators,
                                                 const TableSet& tables) {
  std::vector<Homomorphism> out;
  const std::size_t k = generators.size();
  std::vector<Elem> images(k, 0);
  while (true) {
    if (auto map = propagateHom(source, target, generators, images, tables)) {
      Homomorphism h{source, target, std::move(*map)};
      if (isHomomorphism(h, tables)) out.push_back(std::move(h));
    }
    // next image tuple
    std::size_t j = 0;
    for (; j < k; ++j) {
      if (++images[j] < target.size()) break;
      images[j] = 0;
    }
    if (j == k) break;
  }
  return out;
}

std::optional<Elem> findSingleGenerator(const Algebra& alg, const TableSet& tables) {
  for (Elem x = 0; x < alg.size(); ++x) {
    Elem seed[1] = {x};
    if (static_cast<int>(generateSubalgebra(alg, seed, tables).size()) == alg.size()) return x;
  }
  return std::nullopt;
}

GeneratedWithWitnesses generateWithWitnesses(const Algebra& alg, std::span<const Elem> gens,
                                             const TableSet& tables) {
  const int b = alg.base();
  const int n = static_cast<int>(gens.size());
  const std::size_t rows = powSize(b, n);

  GeneratedWithWitnesses out;
  std::vector<int> index_of(alg.size(), -1);
  std::deque<int> queue;
  auto add = [&](Elem x, FunctionTable w) {
    if (index_of[x] != -1) return;
    index_of[x] = static_cast<int>(out.members.size());
    out.members.push_back(x);
    out.witnesses.push_back(std::move(w));
    queue.push_back(index_of[x]);
  };
  for (int a = 0; a < b; ++a) {
    std::vector<std::uint8_t> e(rows, static_cast<std::uint8_t>(a));
    add(alg.constantElem(a), FunctionTable(b, n, std::move(e)));
  }
  for (int j = 0; j < n; ++j) add(gens[j], FunctionTable::projection(b, n, j));

  auto compose1 = [&](const FunctionTable& t, const FunctionTable& w) {
    std::vector<std::uint8_t> e(rows);
    for (std::size_t r = 0; r < rows; ++r) e[r] = t.entries[w.entries[r]];
    return FunctionTable(b, n, std::move(e));
  };
  auto compose2 = [&](const FunctionTable& t, const FunctionTable& u, const FunctionTable& v) {
    std::vector<std::uint8_t> e(rows);
    for (std::size_t r = 0; r < rows; ++r)
      e[r] = t.entries[static_cast<std::size_t>(u.entries[r]) * b + v.entries[r]];
    return FunctionTable(b, n, std::move(e));
  };

  std::optional<PointwiseView> view;
  if (tables.exhaustiveBinary()) view = pointwiseView(alg);

  Elem xy[2];
  while (!queue.empty()) {
    int xi = queue.front();
    queue.pop_front();
    Elem x = out.members[xi];
    if (view) {
      forEachUnaryImage(*view, b, x, [&](const std::vector<std::uint8_t>& zv) {
        Elem z = view->elemOf(zv);
        if (index_of[z] != -1) return;
        // recover a unary table sending x's values to z's values
        std::vector<std::uint8_t> u(b, 0);
        const auto& xv = view->vec[x];
        for (std::size_t i = 0; i < xv.size(); ++i) u[xv[i]] = zv[i];
        add(z, compose1(FunctionTable(b, 1, std::move(u)), out.witnesses[xi]));
      });
      for (std::size_t yi = 0; yi < out.members.size(); ++yi) {
        Elem y = out.members[yi];
        forEachBinaryImage(*view, b, x, y, [&](const std::vector<std::uint8_t>& zv) {
          Elem z = view->elemOf(zv);
          if (index_of[z] != -1) return;
          std::vector<std::uint8_t> t(static_cast<std::size_t>(b) * b, 0);
          const auto& xv = view->vec[x];
          const auto& yv = view->vec[y];
          for (std::size_t i = 0; i < xv.size(); ++i)
            t[static_cast<std::size_t>(xv[i]) * b + yv[i]] = zv[i];
          add(z, compose2(FunctionTable(b, 2, std::move(t)), out.witnesses[xi], out.witnesses[yi]));
        });
      }
      continue;
    }
    for (const auto& t : tables.unary()) {
      xy[0] = x;
      Elem y = alg.apply(t, std::span<const Elem>(xy, 1));
      if (index_of[y] == -1) add(y, compose1(t, out.witnesses[xi]));
    }
    for (std::size_t yi = 0; yi < out.members.size(); ++yi) {
      Elem y = out.members[yi];
      for (const auto& t : tables.binary()) {
        xy[0] = x; xy[1] = y;
        Elem z = alg.apply(t, std::span<const Elem>(xy, 2));
        if (index_of[z] == -1) add(z, compose2(t, out.witnesses[xi], out.witnesses[yi]));
        xy[0] = y; xy[1] = x;
        z = alg.apply(t, std::span<const Elem>(xy, 2));
        if (index_of[z] == -1) add(z, compose2(t, out.witnesses[yi], out.witnesses[xi]));
      }
    }
  }
  return out;
}

} // namespace uniclone
