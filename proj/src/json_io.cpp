#include "uniclone/json_io.hpp"

#include <fstream>

namespace uniclone {

json partitionToJson(const SetPartition& p) {
  json out = json::array();
  for (const auto& block : p.blocks()) out.push_back(block);
  return out;
}

SetPartition partitionFromJson(const json& j, int ground) {
  if (!j.is_array()) fail(ErrorCode::parse_error, "partition: expected a list of blocks");
  std::vector<std::vector<int>> blocks;
  int max_seen = -1;
  for (const auto& b : j) {
    if (!b.is_array()) fail(ErrorCode::parse_error, "partition: block must be a list");
    std::vector<int> block;
    for (const auto& x : b) {
      if (!x.is_number_integer()) fail(ErrorCode::parse_error, "partition: element must be an integer");
      block.push_back(x.get<int>());
      max_seen = std::max(max_seen, block.back());
    }
    blocks.push_back(std::move(block));
  }
  int n = ground >= 0 ? ground : max_seen + 1;
  return SetPartition::fromBlocks(n, blocks);
}

json filterToJson(const PartitionFilter& f) {
  json gens = json::array();
  for (const auto& p : f.generators()) gens.push_back(partitionToJson(p));
  return json{{"ground", f.ground()}, {"generators", gens}};
}

PartitionFilter filterFromJson(const json& j) {
  if (!j.is_object() || !j.contains("ground") || !j.contains("generators"))
    fail(ErrorCode::parse_error, "filter: expected {ground, generators}");
  int ground = j.at("ground").get<int>();
  std::vector<SetPartition> gens;
  for (const auto& g : j.at("generators")) gens.push_back(partitionFromJson(g, ground));
  return PartitionFilter::generate(ground, std::move(gens));
}

namespace {

json subsetToJson(Subset s, int ground) {
  json out = json::array();
  for (int x = 0; x < ground; ++x)
    if (s & (1ULL << x)) out.push_back(x);
  return out;
}

Subset subsetFromJson(const json& j, int ground) {
  if (!j.is_array()) fail(ErrorCode::parse_error, "subset: expected a list of indices");
  Subset s = 0;
  for (const auto& x : j) {
    int v = x.get<int>();
    if (v < 0 || v >= ground) fail(ErrorCode::parse_error, "subset: index out of range");
    s |= (1ULL << v);
  }
  return s;
}

} // namespace

json blockAlgebraToJson(const BlockBooleanAlgebra& ba) {
  json out = json::array();
  for (Subset s : ba.elements()) out.push_back(subsetToJson(s, ba.ground()));
  return out;
}

json baFilterToJson(const BAFilter& z) {
  json members = json::array();
  for (int idx : z.members) members.push_back(subsetToJson(z.parent->element(idx), z.parent->ground()));
  return json{{"members", members}, {"proper", z.proper}, {"ultra", z.ultra}};
}

json tableToJson(const FunctionTable& t) {
  return json{{"base", t.base}, {"arity", t.arity}, {"entries", t.entries}};
}

FunctionTable tableFromJson(const json& j) {
  if (!j.is_object() || !j.contains("base") || !j.contains("arity") || !j.contains("entries"))
    fail(ErrorCode::parse_error, "table: expected {base, arity, entries}");
  std::vector<std::uint8_t> entries;
  for (const auto& e : j.at("entries")) entries.push_back(static_cast<std::uint8_t>(e.get<int>()));
  return FunctionTable(j.at("base").get<int>(), j.at("arity").get<int>(), std::move(entries));
}

Algebra algebraFromJson(const json& j) {
  if (!j.is_object() || !j.contains("provenance"))
    fail(ErrorCode::parse_error, "algebra: expected an object with a provenance");
  std::string prov = j.at("provenance").get<std::string>();
  if (prov == "omega") return Algebra::omega(j.at("base").get<int>());
  if (prov == "clone_power") {
    int base = j.at("base").get<int>();
    PartitionFilter f = filterFromJson(j.at("filter"));
    return buildClonePower(base, j.at("index").get<int>(), f);
  }
  if (prov == "limit_reduced_power") {
    int base = j.at("base").get<int>();
    PartitionFilter f = filterFromJson(j.at("filter"));
    Algebra cp = buildClonePower(base, j.at("index").get<int>(), f);
    auto ba = blockAlgebraOf(cp);
    std::vector<int> members;
    for (const auto& m : j.at("Z").at("members")) {
      int idx = ba->indexOf(subsetFromJson(m, ba->ground()));
      if (idx < 0) fail(ErrorCode::parse_error, "limit reduced power: Z member outside the block algebra");
      members.push_back(idx);
    }
    return limitReducedPower(cp, baFilterFromMembers(ba, std::move(members))).quotient;
  }
  if (prov == "free") {
    return freeAlgebra(j.at("base").get<int>(), j.at("gens").get<int>()).alg;
  }
  if (prov == "product") {
    return Algebra::makeProduct(algebraFromJson(j.at("left")), algebraFromJson(j.at("right")));
  }
  if (prov == "quotient") {
    Algebra parent = algebraFromJson(j.at("parent"));
    SetPartition theta = partitionFromJson(j.at("partition"), parent.size());
    return quotientAlgebra(parent, theta, TableSet::forBase(parent.base()));
  }
  fail(ErrorCode::parse_error, "algebra: unknown provenance " + prov);
}

json algebraToJson(const Algebra& a) {
  switch (a.provenance()) {
    case Algebra::Provenance::omega:
      return json{{"base", a.base()}, {"provenance", "omega"}};
    case Algebra::Provenance::clone_power: {
      const ClonePowerData* cp = a.clonePower();
      return json{{"base", a.base()},
                  {"provenance", "clone_power"},
                  {"index", cp->index_size},
                  {"filter", filterToJson(cp->filter)}};
    }
    case Algebra::Provenance::free_algebra: {
      const ClonePowerData* cp = a.clonePower();
      return json{{"base", a.base()}, {"provenance", "free"}, {"gens", cp->free_gens}};
    }
    case Algebra::Provenance::product:
      return json{{"provenance", "product"},
                  {"left", algebraToJson(*a.productLeft())},
                  {"right", algebraToJson(*a.productRight())}};
    case Algebra::Provenance::quotient:
      return json{{"provenance", "quotient"},
                  {"parent", algebraToJson(*a.parent())},
                  {"partition", partitionToJson(a.quotientData()->theta)}};
    case Algebra::Provenance::subalgebra:
    case Algebra::Provenance::colimit: {
      json members = json::array();
      for (Elem x : a.subalgebraData()->members) members.push_back(x);
      return json{{"provenance", a.provenance() == Algebra::Provenance::colimit ? "colimit" : "subalgebra"},
                  {"parent", algebraToJson(*a.parent())},
                  {"members", members}};
    }
  }
  fail(ErrorCode::internal, "algebraToJson: unhandled provenance");
}

DirectedSystem directedSystemFromJson(const json& j) {
  if (!j.is_object() || !j.contains("target") || !j.contains("stages"))
    fail(ErrorCode::parse_error, "directed system: expected {target, stages, poset}");
  DirectedSystem sys;
  sys.target = algebraFromJson(j.at("target"));
  for (const auto& st : j.at("stages")) {
    std::vector<Elem> alpha;
    for (const auto& v : st.at("alpha")) alpha.push_back(v.get<int>());
    if (st.contains("index_size") && st.at("index_size").get<int>() != static_cast<int>(alpha.size()))
      fail(ErrorCode::parse_error, "directed system: index_size disagrees with alpha length");
    for (Elem x : alpha)
      if (x < 0 || x >= sys.target.size())
        fail(ErrorCode::parse_error, "directed system: alpha value outside the target");
    sys.alphas.push_back(std::move(alpha));
  }
  if (j.contains("poset") && j.at("poset").contains("edges"))
    for (const auto& e : j.at("poset").at("edges"))
      sys.leq_edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  return sys;
}

json directedSystemToJson(const DirectedSystem& sys) {
  json stages = json::array();
  for (const auto& alpha : sys.alphas)
    stages.push_back(json{{"index_size", alpha.size()}, {"alpha", alpha}});
  json edges = json::array();
  for (auto [d, e] : sys.leq_edges) edges.push_back(json::array({d, e}));
  return json{{"target", algebraToJson(sys.target)},
              {"stages", stages},
              {"poset", json{{"edges", edges}}}};
}

json parseJsonText(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(ErrorCode::parse_error, "malformed JSON");
  return j;
}

json loadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::bad_argument, "cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parseJsonText(text);
}

} // namespace uniclone
