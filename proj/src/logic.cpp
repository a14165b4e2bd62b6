#include "uniclone/logic.hpp"

#include <algorithm>
#include <sstream>

#include "uniclone/algebra.hpp"

namespace uniclone {

Term Term::variable(std::string name) {
  Term t;
  t.kind = Kind::variable;
  t.var = std::move(name);
  return t;
}

Term Term::constant(int value) {
  Term t;
  t.kind = Kind::constant;
  t.value = value;
  return t;
}

Term Term::apply(std::string symbol, std::vector<Term> args) {
  Term t;
  t.kind = Kind::application;
  t.symbol = std::move(symbol);
  t.args = std::move(args);
  return t;
}

Formula Formula::equation(Term l, Term r) {
  Formula f;
  f.kind = Kind::equation;
  f.lhs = std::move(l);
  f.rhs = std::move(r);
  return f;
}

Formula Formula::negation(Formula g) {
  Formula f;
  f.kind = Kind::negation;
  f.children.push_back(std::move(g));
  return f;
}

namespace {
Formula binary(Formula::Kind k, Formula a, Formula b) {
  Formula f;
  f.kind = k;
  f.children.push_back(std::move(a));
  f.children.push_back(std::move(b));
  return f;
}
Formula quantifier(Formula::Kind k, std::string var, Formula body) {
  Formula f;
  f.kind = k;
  f.var = std::move(var);
  f.children.push_back(std::move(body));
  return f;
}
} // namespace

Formula Formula::conjunction(Formula a, Formula b) { return binary(Kind::conjunction, std::move(a), std::move(b)); }
Formula Formula::disjunction(Formula a, Formula b) { return binary(Kind::disjunction, std::move(a), std::move(b)); }
Formula Formula::implication(Formula a, Formula b) { return binary(Kind::implication, std::move(a), std::move(b)); }
Formula Formula::forall(std::string var, Formula body) { return quantifier(Kind::forall, std::move(var), std::move(body)); }
Formula Formula::exists(std::string var, Formula body) { return quantifier(Kind::exists, std::move(var), std::move(body)); }

void SymbolRegistry::add(const std::string& name, FunctionTable t) {
  if (t.base != base) fail(ErrorCode::bad_argument, "registry: table over a different base");
  if (name.empty() || !(name[0] >= 'a' && name[0] <= 'z'))
    fail(ErrorCode::bad_argument, "registry: symbol must start with a lowercase letter");
  for (char c : name)
    if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_'))
      fail(ErrorCode::bad_argument, "registry: symbol has an invalid character");
  if (!tables.emplace(name, std::move(t)).second)
    fail(ErrorCode::bad_argument, "registry: duplicate symbol " + name);
}

const FunctionTable& SymbolRegistry::lookup(const std::string& name) const {
  auto it = tables.find(name);
  if (it == tables.end()) fail(ErrorCode::unknown_symbol, "unknown symbol " + name);
  return it->second;
}

FunctionTable twoValuedIdempotent(int base, int a, int b) {
  if (a == b || a < 0 || b < 0 || a >= base || b >= base)
    fail(ErrorCode::bad_argument, "idempotent table: need two distinct base elements");
  std::vector<std::uint8_t> e(base, static_cast<std::uint8_t>(a));
  e[a] = static_cast<std::uint8_t>(a);
  e[b] = static_cast<std::uint8_t>(b);
  return FunctionTable(base, 1, std::move(e));
}

Formula thmThreeSentence(int a, int b) {
  std::string sym = "op_i" + std::to_string(std::min(a, b)) + std::to_string(std::max(a, b));
  Term x = Term::variable("x");
  Formula body = Formula::disjunction(
      Formula::equation(Term::apply(sym, {x}), Term::constant(a)),
      Formula::equation(Term::apply(sym, {x}), Term::constant(b)));
  return Formula::forall("x", std::move(body));
}

SymbolRegistry SymbolRegistry::standard(int base) {
  SymbolRegistry reg(base);
  reg.add("op_id", FunctionTable::identity(base));
  {
    std::vector<std::uint8_t> e(base);
    for (int i = 0; i < base; ++i) e[i] = static_cast<std::uint8_t>((i + 1) % base);
    reg.add("op_succ", FunctionTable(base, 1, std::move(e)));
  }
  {
    std::vector<std::uint8_t> mn(base * base), mx(base * base);
    for (int i = 0; i < base; ++i)
      for (int j = 0; j < base; ++j) {
        mn[i * base + j] = static_cast<std::uint8_t>(std::min(i, j));
        mx[i * base + j] = static_cast<std::uint8_t>(std::max(i, j));
      }
    reg.add("op_min", FunctionTable(base, 2, std::move(mn)));
    reg.add("op_max", FunctionTable(base, 2, std::move(mx)));
  }
  for (int a = 0; a < base; ++a)
    for (int b = a + 1; b < base; ++b)
      reg.add("op_i" + std::to_string(a) + std::to_string(b), twoValuedIdempotent(base, a, b));
  return reg;
}

SymbolRegistry SymbolRegistry::withRandom(int base, int extra, std::uint64_t seed) {
  SymbolRegistry reg = standard(base);
  Rng rng(seed);
  for (int k = 0; k < extra; ++k) {
    int arity = 1 + (k % 2);
    reg.add("op_r" + std::to_string(k), FunctionTable::random(base, arity, rng));
  }
  return reg;
}

// ---------------------------------------------------------------- parsing

namespace {

struct Parser {
  const std::string& text;
  const SymbolRegistry& reg;
  std::size_t pos = 0;

  [[noreturn]] void error(const std::string& what, std::size_t at) {
    fail(ErrorCode::parse_error, what + " at position " + std::to_string(at));
  }

  void skipSpace() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n'))
      ++pos;
  }

  bool eat(char c) {
    skipSpace();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect(char c) {
    skipSpace();
    if (pos >= text.size() || text[pos] != c)
      error(std::string("expected '") + c + "'", pos);
    ++pos;
  }

  bool peekWordChar(std::size_t p) const {
    if (p >= text.size()) return false;
    char c = text[p];
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  }

  std::string word() {
    skipSpace();
    std::size_t start = pos;
    if (pos >= text.size() || !(text[pos] >= 'a' && text[pos] <= 'z'))
      error("expected an identifier", pos);
    while (peekWordChar(pos)) ++pos;
    return text.substr(start, pos - start);
  }

  bool peekWord(const char* w) {
    skipSpace();
    std::size_t len = std::string(w).size();
    if (text.compare(pos, len, w) != 0) return false;
    return !peekWordChar(pos + len);
  }

  static bool isVariableName(const std::string& w) {
    if (w.empty() || !(w[0] >= 'a' && w[0] <= 'z')) return false;
    for (char c : w)
      if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'))) return false;
    return true;
  }

  static bool isConstantName(const std::string& w) {
    if (w.size() < 2 || w[0] != 'c') return false;
    for (std::size_t i = 1; i < w.size(); ++i)
      if (!(w[i] >= '0' && w[i] <= '9')) return false;
    return true;
  }

  Term term() {
    skipSpace();
    std::size_t at = pos;
    std::string w = word();
    skipSpace();
    if (pos < text.size() && text[pos] == '(') {
      ++pos;
      const FunctionTable& t = reg.lookup(w); // throws unknown_symbol
      std::vector<Term> args;
      args.push_back(term());
      while (eat(',')) args.push_back(term());
      expect(')');
      if (static_cast<int>(args.size()) != t.arity)
        fail(ErrorCode::arity_mismatch,
             w + " expects " + std::to_string(t.arity) + " arguments, got " +
                 std::to_string(args.size()));
      return Term::apply(w, std::move(args));
    }
    if (isConstantName(w)) {
      int v = std::stoi(w.substr(1));
      if (v >= reg.base) error("constant " + w + " outside the base set", at);
      return Term::constant(v);
    }
    if (!isVariableName(w)) error("invalid variable name '" + w + "'", at);
    return Term::variable(w);
  }

  Formula unit() {
    skipSpace();
    if (eat('!')) return Formula::negation(unit());
    if (eat('(')) {
      Formula f = formula();
      expect(')');
      return f;
    }
    Term l = term();
    expect('=');
    Term r = term();
    return Formula::equation(std::move(l), std::move(r));
  }

  Formula conj() {
    Formula f = unit();
    while (eat('&')) f = Formula::conjunction(std::move(f), unit());
    return f;
  }

  Formula disj() {
    Formula f = conj();
    while (eat('|')) f = Formula::disjunction(std::move(f), conj());
    return f;
  }

  Formula formula() {
    if (peekWord("forall") || peekWord("exists")) {
      std::string kw = word();
      std::string v = word();
      if (!isVariableName(v)) error("invalid bound variable '" + v + "'", pos);
      expect('.');
      Formula body = formula();
      return kw == "forall" ? Formula::forall(v, std::move(body))
                            : Formula::exists(v, std::move(body));
    }
    return disj();
  }
};

} // namespace

Formula parseFormula(const std::string& text, const SymbolRegistry& reg) {
  Parser p{text, reg};
  Formula f = p.formula();
  p.skipSpace();
  if (p.pos != text.size()) p.error("trailing input", p.pos);
  return f;
}

namespace {

void printTerm(const Term& t, std::ostringstream& os) {
  switch (t.kind) {
    case Term::Kind::variable:
      os << t.var;
      break;
    case Term::Kind::constant:
      os << 'c' << t.value;
      break;
    case Term::Kind::application:
      os << t.symbol << '(';
      for (std::size_t i = 0; i < t.args.size(); ++i) {
        if (i) os << ',';
        printTerm(t.args[i], os);
      }
      os << ')';
      break;
  }
}

// precedence levels: formula/quant = 0, disj = 1, conj = 2, unit = 3
void printAt(const Formula& f, int level, std::ostringstream& os) {
  switch (f.kind) {
    case Formula::Kind::forall:
    case Formula::Kind::exists:
      if (level > 0) {
        os << '(';
        printAt(f, 0, os);
        os << ')';
        return;
      }
      os << (f.kind == Formula::Kind::forall ? "forall " : "exists ") << f.var << ". ";
      printAt(f.children[0], 0, os);
      return;
    case Formula::Kind::disjunction:
      if (level > 1) {
        os << '(';
        printAt(f, 0, os);
        os << ')';
        return;
      }
      printAt(f.children[0], 1, os);
      os << " | ";
      printAt(f.children[1], 2, os);
      return;
    case Formula::Kind::implication:
      // not part of the grammar; print the or/not expansion
      if (level > 1) {
        os << '(';
        printAt(f, 0, os);
        os << ')';
        return;
      }
      os << "!(";
      printAt(f.children[0], 0, os);
      os << ") | (";
      printAt(f.children[1], 0, os);
      os << ')';
      return;
    case Formula::Kind::conjunction:
      if (level > 2) {
        os << '(';
        printAt(f, 0, os);
        os << ')';
        return;
      }
      printAt(f.children[0], 2, os);
      os << " & ";
      printAt(f.children[1], 3, os);
      return;
    case Formula::Kind::negation:
      os << '!';
      printAt(f.children[0], 3, os);
      return;
    case Formula::Kind::equation:
      printTerm(f.lhs, os);
      os << " = ";
      printTerm(f.rhs, os);
      return;
  }
}

} // namespace

std::string printFormula(const Formula& f) {
  std::ostringstream os;
  printAt(f, 0, os);
  return os.str();
}

namespace {

void freeVars(const Term& t, std::vector<std::string>& bound, std::vector<std::string>& out) {
  switch (t.kind) {
    case Term::Kind::variable:
      if (std::find(bound.begin(), bound.end(), t.var) == bound.end() &&
          std::find(out.begin(), out.end(), t.var) == out.end())
        out.push_back(t.var);
      break;
    case Term::Kind::application:
      for (const auto& a : t.args) freeVars(a, bound, out);
      break;
    case Term::Kind::constant:
      break;
  }
}

void freeVars(const Formula& f, std::vector<std::string>& bound, std::vector<std::string>& out) {
  switch (f.kind) {
    case Formula::Kind::equation:
      freeVars(f.lhs, bound, out);
      freeVars(f.rhs, bound, out);
      break;
    case Formula::Kind::forall:
    case Formula::Kind::exists:
      bound.push_back(f.var);
      freeVars(f.children[0], bound, out);
      bound.pop_back();
      break;
    default:
      for (const auto& c : f.children) freeVars(c, bound, out);
  }
}

} // namespace

bool isSentence(const Formula& f) {
  std::vector<std::string> bound, out;
  freeVars(f, bound, out);
  return out.empty();
}

int quantifierDepth(const Formula& f) {
  int inner = 0;
  for (const auto& c : f.children) inner = std::max(inner, quantifierDepth(c));
  if (f.kind == Formula::Kind::forall || f.kind == Formula::Kind::exists) return inner + 1;
  return inner;
}

Elem evalTerm(const Algebra& alg, const SymbolRegistry& reg, const Term& t,
              const Environment& env) {
  switch (t.kind) {
    case Term::Kind::variable:
      for (auto it = env.rbegin(); it != env.rend(); ++it)
        if (it->first == t.var) return it->second;
      fail(ErrorCode::bad_argument, "unbound variable " + t.var);
    case Term::Kind::constant:
      return alg.constantElem(t.value);
    case Term::Kind::application: {
      const FunctionTable& tab = reg.lookup(t.symbol);
      if (static_cast<int>(t.args.size()) != tab.arity)
        fail(ErrorCode::arity_mismatch, "arity mismatch for " + t.symbol);
      std::vector<Elem> vals(t.args.size());
      for (std::size_t i = 0; i < t.args.size(); ++i)
        vals[i] = evalTerm(alg, reg, t.args[i], env);
      return alg.apply(tab, vals);
    }
  }
  fail(ErrorCode::internal, "evalTerm: unhandled kind");
}

namespace {

bool evalAt(const Algebra& alg, const SymbolRegistry& reg, const Formula& f, Environment& env) {
  switch (f.kind) {
    case Formula::Kind::equation:
      return evalTerm(alg, reg, f.lhs, env) == evalTerm(alg, reg, f.rhs, env);
    case Formula::Kind::negation:
      return !evalAt(alg, reg, f.children[0], env);
    case Formula::Kind::conjunction:
      return evalAt(alg, reg, f.children[0], env) && evalAt(alg, reg, f.children[1], env);
    case Formula::Kind::disjunction:
      return evalAt(alg, reg, f.children[0], env) || evalAt(alg, reg, f.children[1], env);
    case Formula::Kind::implication:
      return !evalAt(alg, reg, f.children[0], env) || evalAt(alg, reg, f.children[1], env);
    case Formula::Kind::forall:
    case Formula::Kind::exists: {
      const bool want_all = f.kind == Formula::Kind::forall;
      env.emplace_back(f.var, 0);
      for (Elem x = 0; x < alg.size(); ++x) {
        env.back().second = x;
        bool v = evalAt(alg, reg, f.children[0], env);
        if (want_all && !v) {
          env.pop_back();
          return false;
        }
        if (!want_all && v) {
          env.pop_back();
          return true;
        }
      }
      env.pop_back();
      return want_all;
    }
  }
  fail(ErrorCode::internal, "evalFormula: unhandled kind");
}

} // namespace

bool evalFormula(const Algebra& alg, const SymbolRegistry& reg, const Formula& f) {
  if (!isSentence(f)) fail(ErrorCode::bad_argument, "evaluation requires a sentence");
  if (alg.size() > kDefaultCarrierCap)
    fail(ErrorCode::cap_exceeded, "evaluation: carrier exceeds cap");
  Environment env;
  return evalAt(alg, reg, f, env);
}

namespace {

Term randomTerm(const SymbolRegistry& reg, std::span<const std::string> vars, int depth, Rng& rng) {
  std::vector<std::string> names;
  for (const auto& [name, tab] : reg.tables) names.push_back(name);
  while (true) {
    int pick = rng.intBelow(depth > 0 && !names.empty() ? 3 : 2);
    if (pick == 0 && !vars.empty()) return Term::variable(vars[rng.intBelow(static_cast<int>(vars.size()))]);
    if (pick == 1) return Term::constant(rng.intBelow(reg.base));
    if (pick == 2) {
      const std::string& name = names[rng.intBelow(static_cast<int>(names.size()))];
      const FunctionTable& tab = reg.tables.at(name);
      std::vector<Term> args;
      for (int i = 0; i < tab.arity; ++i) args.push_back(randomTerm(reg, vars, depth - 1, rng));
      return Term::apply(name, std::move(args));
    }
  }
}

Formula randomBody(const SymbolRegistry& reg, std::span<const std::string> vars, int conn_depth,
                   Rng& rng) {
  if (conn_depth == 0 || rng.intBelow(3) == 0)
    return Formula::equation(randomTerm(reg, vars, 2, rng), randomTerm(reg, vars, 2, rng));
  switch (rng.intBelow(3)) {
    case 0:
      return Formula::negation(randomBody(reg, vars, conn_depth - 1, rng));
    case 1:
      return Formula::conjunction(randomBody(reg, vars, conn_depth - 1, rng),
                                  randomBody(reg, vars, conn_depth - 1, rng));
    default:
      return Formula::disjunction(randomBody(reg, vars, conn_depth - 1, rng),
                                  randomBody(reg, vars, conn_depth - 1, rng));
  }
}

} // namespace

std::vector<Formula> generateCorpus(const SymbolRegistry& reg, int count, int depth_cap,
                                    std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Formula> out;
  out.reserve(count);
  const std::vector<std::string> pool{"x", "y", "z", "w"};
  while (static_cast<int>(out.size()) < count) {
    int q = 1 + rng.intBelow(std::max(1, depth_cap));
    std::vector<std::string> vars(pool.begin(), pool.begin() + q);
    Formula f = randomBody(reg, vars, 2, rng);
    for (int i = q - 1; i >= 0; --i)
      f = rng.coin() ? Formula::forall(vars[i], std::move(f))
                     : Formula::exists(vars[i], std::move(f));
    if (!isSentence(f) || quantifierDepth(f) > depth_cap)
      fail(ErrorCode::internal, "corpus generator produced an out-of-spec sentence");
    out.push_back(std::move(f));
  }
  return out;
}

TransferReport transferReport(const Algebra& quotient, const SymbolRegistry& reg,
                              std::span<const Formula> corpus) {
  TransferReport rep;
  Algebra omega = Algebra::omega(quotient.base());
  for (const auto& f : corpus) {
    TransferItem item;
    item.sentence = printFormula(f);
    item.holds_in_power = evalFormula(quotient, reg, f);
    item.holds_in_omega = evalFormula(omega, reg, f);
    ++rep.checked;
    if (!item.transfers()) {
      ++rep.violations;
      rep.failures.push_back(std::move(item));
    }
  }
  return rep;
}

TransferReport losCheck(const LimitReducedPower& lrp, const SymbolRegistry& reg,
                        std::span<const Formula> corpus) {
  if (!lrp.ultra) fail(ErrorCode::bad_argument, "los: Z is not an ultrafilter");
  return transferReport(lrp.quotient, reg, corpus);
}

ElementaryCheck isElementaryEmbedding(const Homomorphism& e, const SymbolRegistry& reg,
                                      int depth_cap, int corpus_size, std::uint64_t seed) {
  if (e.source.provenance() != Algebra::Provenance::omega)
    fail(ErrorCode::bad_argument, "elementary check: source must be Omega(A)");
  for (int a = 0; a < e.source.base(); ++a)
    if (e.map[a] != e.target.constantElem(a))
      fail(ErrorCode::bad_argument, "elementary check: not the canonical embedding");
  ElementaryCheck out;
  out.elementary = isBijective(e);

  std::vector<Formula> corpus = generateCorpus(reg, corpus_size, depth_cap, seed);
  for (int a = 0; a < e.source.base(); ++a)
    for (int b = a + 1; b < e.source.base(); ++b) {
      if (reg.tables.count("op_i" + std::to_string(a) + std::to_string(b)))
        corpus.push_back(thmThreeSentence(a, b));
      corpus.push_back(Formula::negation(
          Formula::equation(Term::constant(a), Term::constant(b))));
    }

  TransferReport rep = transferReport(e.target, reg, corpus);
  out.corpus_checked = rep.checked;
  if (out.elementary && rep.violations > 0)
    fail(ErrorCode::internal,
         "elementary check: isomorphic image disagreed on " + rep.failures.front().sentence);
  if (!out.elementary && rep.violations > 0) out.witness = rep.failures.front().sentence;
  return out;
}

} // namespace uniclone
