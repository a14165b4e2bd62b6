#pragma once

#include "json.hpp"

#include "uniclone/logic.hpp"
#include "uniclone/uniform.hpp"

namespace uniclone {

using nlohmann::json;

// partitions are lists of blocks: [[0,1],[2]]
json partitionToJson(const SetPartition& p);
SetPartition partitionFromJson(const json& j, int ground = -1); // ground inferred when -1

// {"ground": 3, "generators": [[[0,1],[2]]]}
json filterToJson(const PartitionFilter& f);
PartitionFilter filterFromJson(const json& j);

// sorted list of subsets, each a sorted list of indices
json blockAlgebraToJson(const BlockBooleanAlgebra& ba);
json baFilterToJson(const BAFilter& z);

// {"base": 3, "arity": 2, "entries": [...]} row-major
json tableToJson(const FunctionTable& t);
FunctionTable tableFromJson(const json& j);

// algebra descriptors, dispatched on "provenance":
//   {"base":3,"provenance":"omega"}
//   {"base":3,"provenance":"clone_power","index":3,"filter":{...}}
//   {"base":3,"provenance":"limit_reduced_power","index":3,"filter":{...},
//    "Z":{"members":[[...],...]}}
//   {"base":2,"provenance":"free","gens":1}
//   {"provenance":"product","left":{...},"right":{...}}
//   {"provenance":"quotient","parent":{...},"partition":[[...],...]}
Algebra algebraFromJson(const json& j);
json algebraToJson(const Algebra& a);

// {"target": {...}, "stages": [{"index_size":2,"alpha":[0,1]},...],
//  "poset": {"edges": [[0,1],...]}}
DirectedSystem directedSystemFromJson(const json& j);
json directedSystemToJson(const DirectedSystem& sys);

json parseJsonText(const std::string& text); // parse_error on bad input
json loadJsonFile(const std::string& path);

} // namespace uniclone
