#include "nbhd/json_io.hpp"

#include <fstream>
#include <sstream>

#include "nbhd/error.hpp"

namespace nbhd::io {

namespace {

void require_keys(const json& j, std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional, const char* what) {
    if (!j.is_object()) throw InputError(std::string(what) + ": expected a JSON object");
    for (const char* k : required)
        if (!j.contains(k)) throw InputError(std::string(what) + ": missing key '" + k + "'");
    for (auto& [key, value] : j.items()) {
        bool known = false;
        for (const char* k : required) known = known || key == k;
        for (const char* k : optional) known = known || key == k;
        if (!known) throw InputError(std::string(what) + ": unknown key '" + key + "'");
    }
}

std::vector<std::string> string_list(const json& j, const std::string& what) {
    if (!j.is_array()) throw InputError(what + ": expected an array");
    std::vector<std::string> out;
    for (const auto& e : j) {
        if (!e.is_string()) throw InputError(what + ": expected strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

StateSet set_from_names(const Carrier& c, const json& j, const std::string& what) {
    StateSet s(c.size());
    for (const std::string& name : string_list(j, what)) {
        std::size_t i = c.index_of(name);
        if (s.contains(i)) throw InputError(what + ": duplicate state '" + name + "'");
        s.insert(i);
    }
    return s;
}

} // namespace

int atom_index_of(const std::string& name) {
    if (name.size() < 2 || name[0] != 'p')
        throw InputError("bad atom name '" + name + "' (expected p<index>)");
    for (std::size_t i = 1; i < name.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(name[i])))
            throw InputError("bad atom name '" + name + "'");
    return std::stoi(name.substr(1));
}

std::string atom_name_of(int index) { return "p" + std::to_string(index); }

json model_to_json(const Model& m) {
    json j;
    j["states"] = m.states().names();
    json atoms = json::array();
    for (int a : m.atom_support()) atoms.push_back(atom_name_of(a));
    j["atoms"] = atoms;
    json nb = json::object();
    for (std::size_t s = 0; s < m.size(); ++s) {
        if (m.neighbourhoods(s).empty()) continue;
        json sets = json::array();
        for (const auto& u : m.neighbourhoods(s)) sets.push_back(m.states().names_of(u));
        nb[m.states().name(s)] = sets;
    }
    j["neighbourhoods"] = nb;
    json val = json::object();
    for (int a : m.atom_support()) val[atom_name_of(a)] = m.states().names_of(m.valuation(a));
    j["valuation"] = val;
    return j;
}

Model model_from_json(const json& j) {
    require_keys(j, {"states"}, {"atoms", "neighbourhoods", "valuation"}, "model");
    Carrier carrier(string_list(j.at("states"), "model states"));

    std::vector<int> atoms;
    if (j.contains("atoms"))
        for (const std::string& name : string_list(j.at("atoms"), "model atoms"))
            atoms.push_back(atom_index_of(name));

    std::vector<std::vector<StateSet>> table(carrier.size());
    if (j.contains("neighbourhoods")) {
        const json& nb = j.at("neighbourhoods");
        if (!nb.is_object()) throw InputError("model neighbourhoods: expected an object");
        for (auto& [name, sets] : nb.items()) {
            std::size_t s = carrier.index_of(name);
            if (!sets.is_array()) throw InputError("model neighbourhoods: expected arrays");
            for (const auto& set : sets) {
                StateSet u = set_from_names(carrier, set, "neighbourhood set");
                for (const auto& prev : table[s])
                    if (prev == u)
                        throw InputError("duplicate neighbourhood set at state '" + name + "'");
                table[s].push_back(u);
            }
        }
    }

    std::map<int, StateSet> vals;
    for (int a : atoms) vals.emplace(a, StateSet(carrier.size()));
    if (j.contains("valuation")) {
        const json& val = j.at("valuation");
        if (!val.is_object()) throw InputError("model valuation: expected an object");
        for (auto& [name, members] : val.items()) {
            int a = atom_index_of(name);
            auto it = vals.find(a);
            if (it == vals.end())
                throw InputError("valuation mentions undeclared atom '" + name + "'");
            it->second = set_from_names(carrier, members, "valuation of " + name);
        }
    }
    return Model(std::move(carrier), std::move(table), std::move(vals));
}

json kripke_to_json(const KripkeModel& k) {
    json j;
    j["states"] = k.states().names();
    json edges = json::array();
    for (auto& [a, b] : k.edges().pairs())
        edges.push_back(json::array({k.states().name(a), k.states().name(b)}));
    j["edges"] = edges;
    json atoms = json::array();
    for (int a : k.atom_support()) atoms.push_back(atom_name_of(a));
    j["atoms"] = atoms;
    json val = json::object();
    for (int a : k.atom_support()) val[atom_name_of(a)] = k.states().names_of(k.valuation(a));
    j["valuation"] = val;
    return j;
}

KripkeModel kripke_from_json(const json& j) {
    require_keys(j, {"states"}, {"edges", "atoms", "valuation"}, "kripke model");
    Carrier carrier(string_list(j.at("states"), "kripke states"));

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    if (j.contains("edges")) {
        for (const auto& e : j.at("edges")) {
            auto names = string_list(e, "kripke edge");
            if (names.size() != 2) throw InputError("kripke edge: expected a pair");
            pairs.emplace_back(carrier.index_of(names[0]), carrier.index_of(names[1]));
        }
    }

    std::vector<int> atoms;
    if (j.contains("atoms"))
        for (const std::string& name : string_list(j.at("atoms"), "kripke atoms"))
            atoms.push_back(atom_index_of(name));
    std::map<int, StateSet> vals;
    for (int a : atoms) vals.emplace(a, StateSet(carrier.size()));
    if (j.contains("valuation")) {
        for (auto& [name, members] : j.at("valuation").items()) {
            int a = atom_index_of(name);
            auto it = vals.find(a);
            if (it == vals.end())
                throw InputError("valuation mentions undeclared atom '" + name + "'");
            it->second = set_from_names(carrier, members, "valuation of " + name);
        }
    }
    Relation edges(carrier, carrier, std::move(pairs));
    return KripkeModel(std::move(carrier), std::move(edges), std::move(vals));
}

json relation_to_json(const Relation& r) {
    json out = json::array();
    for (auto& [a, b] : r.pairs())
        out.push_back(json::array({r.dom().name(a), r.cod().name(b)}));
    return out;
}

Relation relation_from_json(const json& j, const Carrier& dom, const Carrier& cod) {
    if (!j.is_array()) throw InputError("relation: expected an array of pairs");
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (const auto& e : j) {
        auto names = string_list(e, "relation pair");
        if (names.size() != 2) throw InputError("relation pair: expected two names");
        pairs.emplace_back(dom.index_of(names[0]), cod.index_of(names[1]));
    }
    return Relation(dom, cod, std::move(pairs));
}

json partition_to_json(const Partition& p) {
    json out = json::array();
    for (const auto& block : p.blocks) out.push_back(p.carrier.names_of(block));
    return out;
}

json set_to_json(const StateSet& s, const Carrier& c) { return json(c.names_of(s)); }

json function_to_json(const StateFunction& f) {
    json out = json::object();
    for (std::size_t i = 0; i < f.dom().size(); ++i)
        out[f.dom().name(i)] = f.cod().name(f(i));
    return out;
}

StateFunction function_from_json(const json& j, const Carrier& dom, const Carrier& cod) {
    if (!j.is_object()) throw InputError("state function: expected an object");
    std::map<std::string, std::string> map;
    for (auto& [a, b] : j.items()) {
        if (!b.is_string()) throw InputError("state function: expected string values");
        map.emplace(a, b.get<std::string>());
    }
    return StateFunction::from_names(dom, cod, map);
}

json violation_to_json(const Violation& v, const Carrier& dom, const Carrier& cod) {
    json j;
    j["pair"] = json::array({dom.name(v.pair.first), cod.name(v.pair.second)});
    switch (v.kind) {
        case Violation::Kind::AtomMismatch:
            j["kind"] = "atom-mismatch";
            j["atom"] = atom_name_of(v.atom);
            break;
        case Violation::Kind::BaseLeft:
            j["kind"] = "base-condition-left";
            j["in_nbhd"] = dom.names_of(v.set_a);
            j["out_nbhd"] = dom.names_of(v.set_b);
            break;
        case Violation::Kind::BaseRight:
            j["kind"] = "base-condition-right";
            j["in_nbhd"] = cod.names_of(v.set_a);
            j["out_nbhd"] = cod.names_of(v.set_b);
            break;
        case Violation::Kind::CoherentPair:
            j["kind"] = "coherent-pair";
            j["left_set"] = dom.names_of(v.set_a);
            j["right_set"] = cod.names_of(v.set_b);
            break;
        case Violation::Kind::CoherentSet:
            j["kind"] = "coherent-set";
            j["set"] = dom.names_of(v.set_a);
            break;
    }
    return j;
}

json report_to_json(const CheckReport& r, const Relation& checked) {
    json j;
    j["kind"] = r.kind;
    j["holds"] = r.ok;
    j["pairs"] = relation_to_json(checked);
    json certs = json::array();
    for (const auto& v : r.violations) certs.push_back(violation_to_json(v, checked.dom(), checked.cod()));
    j["certificates"] = certs;
    return j;
}

json structure_to_json(const TwoSortedStructure& f) {
    json j;
    j["states"] = f.ds.names();
    j["neighbourhoods"] = f.dn.names();
    json preds = json::object();
    for (auto& [atom, set] : f.preds) preds[atom_name_of(atom)] = f.ds.names_of(set);
    j["P"] = preds;
    json n = json::array();
    for (auto& [s, u] : f.rel_n) n.push_back(json::array({f.ds.name(s), f.dn.name(u)}));
    j["N"] = n;
    json e = json::array();
    for (auto& [u, s] : f.rel_e) e.push_back(json::array({f.dn.name(u), f.ds.name(s)}));
    j["E"] = e;
    return j;
}

json decision_to_json(const DecisionResult& r) {
    json j;
    switch (r.verdict) {
        case DecisionResult::Verdict::Sat: j["verdict"] = "SAT"; break;
        case DecisionResult::Verdict::Unsat: j["verdict"] = "UNSAT"; break;
        case DecisionResult::Verdict::Valid: j["verdict"] = "VALID"; break;
        case DecisionResult::Verdict::Invalid: j["verdict"] = "INVALID"; break;
    }
    if (r.certificate) {
        j["model"] = model_to_json(r.certificate->model);
        j["witness"] = r.certificate->witness;
    }
    return j;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

json load_json(const std::string& path) {
    try {
        return json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw InputError("JSON parse error in '" + path + "': " + e.what());
    }
}

} // namespace nbhd::io
