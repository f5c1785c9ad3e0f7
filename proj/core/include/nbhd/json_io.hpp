#ifndef NBHD_JSON_IO_HPP
#define NBHD_JSON_IO_HPP

#include <nlohmann/json.hpp>
#include <string>

#include "nbhd/classes.hpp"
#include "nbhd/constructions.hpp"
#include "nbhd/decision.hpp"
#include "nbhd/equivalence.hpp"
#include "nbhd/fol.hpp"
#include "nbhd/model.hpp"

namespace nbhd::io {

using nlohmann::json;

/// Model format:
///   {"states": ["t1","t2"], "atoms": ["p0"],
///    "neighbourhoods": {"t1": [["t2"]]}, "valuation": {"p0": ["t1"]}}
/// Omitted state keys mean the empty collection; [[]] is the collection
/// containing the empty set. Unknown state names, unknown atoms, and
/// duplicate sets are load errors.
json model_to_json(const Model& m);
Model model_from_json(const json& j);

/// Kripke format: {"states": [...], "edges": [["a","b"], ...],
///                 "valuation": {...}, "atoms": [...]}.
json kripke_to_json(const KripkeModel& k);
KripkeModel kripke_from_json(const json& j);

/// Relations are arrays of name pairs sorted by carrier order; partitions
/// are arrays of arrays of names.
json relation_to_json(const Relation& r);
Relation relation_from_json(const json& j, const Carrier& dom, const Carrier& cod);
json partition_to_json(const Partition& p);

json set_to_json(const StateSet& s, const Carrier& c);
json function_to_json(const StateFunction& f);
StateFunction function_from_json(const json& j, const Carrier& dom, const Carrier& cod);

json violation_to_json(const Violation& v, const Carrier& dom, const Carrier& cod);
json report_to_json(const CheckReport& r, const Relation& checked);

json structure_to_json(const TwoSortedStructure& f);

json decision_to_json(const DecisionResult& r);

std::string read_file(const std::string& path);
json load_json(const std::string& path);

int atom_index_of(const std::string& name);       // "p0" -> 0
std::string atom_name_of(int index);              // 0 -> "p0"

} // namespace nbhd::io

#endif
