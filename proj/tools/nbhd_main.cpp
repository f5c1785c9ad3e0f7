// Command-line front end: model checking, equivalence computation,
// quotients, ultrafilter extensions, translations, and the decision
// procedures, with JSON on stdout.
//
// Exit codes: 0 success, 1 checked property is false, 2 input error,
// 3 resource cap exceeded.

#include <CLI11.hpp>
#include <iostream>
#include <nlohmann/json.hpp>

#include "nbhd/classes.hpp"
#include "nbhd/constructions.hpp"
#include "nbhd/decision.hpp"
#include "nbhd/equivalence.hpp"
#include "nbhd/error.hpp"
#include "nbhd/examples.hpp"
#include "nbhd/fol.hpp"
#include "nbhd/json_io.hpp"
#include "nbhd/model.hpp"
#include "nbhd/runtime.hpp"
#include "nbhd/ufext.hpp"

using nlohmann::json;
using namespace nbhd;

namespace {

bool g_pretty = false;

void emit(const json& j) {
    if (g_pretty)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << j.dump() << "\n";
}

Model load_model_file(const std::string& path) { return io::model_from_json(io::load_json(path)); }

json equiv_report(const Model& left, const Model& right, EquivalenceKind kind) {
    if (kind == EquivalenceKind::Behavioural) {
        Relation rel = behavioural_equivalence(left, right);
        json certs = json::array();
        for (std::size_t a = 0; a < left.size(); ++a)
            for (std::size_t b = 0; b < right.size(); ++b) {
                if (rel.contains(a, b)) continue;
                auto witness = distinguishing_formula(left, a, right, b);
                certs.push_back(json{{"pair", {left.states().name(a), right.states().name(b)}},
                                     {"formula", witness ? render(*witness) : ""}});
            }
        return json{{"kind", "behavioural"}, {"pairs", io::relation_to_json(rel)},
                    {"certificates", certs}};
    }
    const char* name = kind == EquivalenceKind::Bisimulation ? "bisimulation" : "precocongruence";
    Relation rel = kind == EquivalenceKind::Bisimulation ? largest_bisimulation(left, right)
                                                         : largest_precocongruence(left, right);
    json certs = json::array();
    for (const Violation& v : rejection_certificates(rel, left, right, kind))
        certs.push_back(io::violation_to_json(v, left.states(), right.states()));
    return json{{"kind", name}, {"pairs", io::relation_to_json(rel)}, {"certificates", certs}};
}

json example_report(const ExamplePair& ex) {
    json fixtures;
    fixtures["left"] = io::model_to_json(ex.left);
    fixtures["right"] = io::model_to_json(ex.right);
    fixtures["target"] = io::model_to_json(ex.target);
    fixtures["f_left"] = io::function_to_json(ex.f_left);
    fixtures["f_right"] = io::function_to_json(ex.f_right);

    json facts;
    facts["f_left_bounded"] = is_bounded_morphism(ex.f_left, ex.left, ex.target);
    facts["f_right_bounded"] = is_bounded_morphism(ex.f_right, ex.right, ex.target);
    facts["largest_bisimulation"] = io::relation_to_json(largest_bisimulation(ex.left, ex.right));
    facts["largest_precocongruence"] =
        io::relation_to_json(largest_precocongruence(ex.left, ex.right));
    facts["behavioural_equivalence"] =
        io::relation_to_json(behavioural_equivalence(ex.left, ex.right));
    facts["cocongruence"] = io::relation_to_json(
        cocongruence_check(ex.left, ex.right, ex.target, ex.f_left, ex.f_right));
    Relation collapse = Relation::from_names(ex.left.states(), ex.left.states(), {{"t1", "t2"}});
    facts["collapse_t1_t2_precongruence"] = is_precongruence(collapse, ex.left).ok;
    facts["collapse_t1_t2_precocongruence"] = is_precocongruence(collapse, ex.left, ex.left).ok;
    auto witness = distinguishing_formula(ex.left, std::size_t{2}, ex.right, std::size_t{0});
    facts["t3_vs_s_distinguished_by"] = witness ? render(*witness) : "";
    return json{{"fixtures", fixtures}, {"facts", facts}};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite neighbourhood structures: model checking, equivalences, translations"};
    app.require_subcommand(1);
    int jobs_flag = 1;
    app.add_flag("--pretty", g_pretty, "indent JSON output");
    app.add_option("--jobs", jobs_flag, "worker threads for the fixpoint engines")
        ->check(CLI::PositiveNumber);

    std::string model_path, left_path, right_path, map_path, relation_path;
    std::string state_name, formula_text, left_formula, right_formula, kind = "all";
    std::string fol_var = "x";
    std::string which_example;
    int max_size = 9;

    auto* cmd_check = app.add_subcommand("check", "evaluate a formula at a state");
    cmd_check->add_option("--model", model_path)->required();
    cmd_check->add_option("--state", state_name)->required();
    cmd_check->add_option("--formula", formula_text)->required();

    auto* cmd_equiv = app.add_subcommand("equiv", "compute equivalences between two models");
    cmd_equiv->add_option("--left", left_path)->required();
    cmd_equiv->add_option("--right", right_path)->required();
    cmd_equiv->add_option("--kind", kind)->check(CLI::IsMember({"bis", "precocong", "beh", "all"}));

    auto* cmd_morphism = app.add_subcommand("morphism", "verify a bounded morphism");
    cmd_morphism->add_option("--left", left_path)->required();
    cmd_morphism->add_option("--right", right_path)->required();
    cmd_morphism->add_option("--map", map_path)->required();

    auto* cmd_quotient = app.add_subcommand("quotient", "quotient a model by a congruence");
    cmd_quotient->add_option("--model", model_path)->required();
    cmd_quotient->add_option("--relation", relation_path)->required();

    auto* cmd_minimize =
        app.add_subcommand("minimize", "quotient by the largest congruence");
    cmd_minimize->add_option("--model", model_path)->required();

    auto* cmd_ufext = app.add_subcommand("ufext", "ultrafilter extension");
    cmd_ufext->add_option("--model", model_path)->required();

    auto* cmd_translate =
        app.add_subcommand("translate", "model to two-sorted structure / formula to FOL");
    cmd_translate->add_option("--model", model_path);
    cmd_translate->add_option("--formula", formula_text);
    cmd_translate->add_option("--var", fol_var, "free state variable for the translation");

    auto* cmd_sat = app.add_subcommand("sat", "satisfiability with certificate");
    cmd_sat->add_option("--formula", formula_text)->required();

    auto* cmd_valid = app.add_subcommand("valid", "validity with countermodel");
    cmd_valid->add_option("--formula", formula_text)->required();

    auto* cmd_interpolate = app.add_subcommand("interpolate", "bounded interpolant search");
    cmd_interpolate->add_option("--left", left_formula)->required();
    cmd_interpolate->add_option("--right", right_formula)->required();
    cmd_interpolate->add_option("--max-size", max_size)->check(CLI::PositiveNumber);

    auto* cmd_examples = app.add_subcommand("examples", "bundled example frames and their facts");
    cmd_examples->add_option("which", which_example)->required()->check(CLI::IsMember({"ex1", "ex2"}));

    for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();
    CLI11_PARSE(app, argc, argv);
    set_jobs(jobs_flag);

    try {
        if (cmd_check->parsed()) {
            Model m = load_model_file(model_path);
            Formula f = parse(formula_text);
            const bool verdict = m.satisfies(state_name, f);
            emit(json{{"formula", render(f)}, {"state", state_name}, {"verdict", verdict}});
            return verdict ? 0 : 1;
        }
        if (cmd_equiv->parsed()) {
            Model left = load_model_file(left_path), right = load_model_file(right_path);
            if (kind == "bis")
                emit(equiv_report(left, right, EquivalenceKind::Bisimulation));
            else if (kind == "precocong")
                emit(equiv_report(left, right, EquivalenceKind::Precocongruence));
            else if (kind == "beh")
                emit(equiv_report(left, right, EquivalenceKind::Behavioural));
            else
                emit(json{{"bisimulation", equiv_report(left, right, EquivalenceKind::Bisimulation)},
                          {"precocongruence",
                           equiv_report(left, right, EquivalenceKind::Precocongruence)},
                          {"behavioural", equiv_report(left, right, EquivalenceKind::Behavioural)}});
            return 0;
        }
        if (cmd_morphism->parsed()) {
            Model left = load_model_file(left_path), right = load_model_file(right_path);
            StateFunction f =
                io::function_from_json(io::load_json(map_path), left.states(), right.states());
            MorphismReport rep = check_bounded_morphism(f, left, right);
            json j{{"holds", rep.ok}};
            if (!rep.ok) {
                json v{{"state", left.states().name(rep.violation->state)}};
                if (rep.violation->atom) v["atom"] = io::atom_name_of(*rep.violation->atom);
                if (rep.violation->set)
                    v["set"] = io::set_to_json(*rep.violation->set, right.states());
                j["violation"] = v;
            }
            emit(j);
            return rep.ok ? 0 : 1;
        }
        if (cmd_quotient->parsed()) {
            Model m = load_model_file(model_path);
            Relation r = eq_closure(io::relation_from_json(io::load_json(relation_path),
                                                           m.states(), m.states()));
            Quotient q = quotient(m, r);
            emit(json{{"model", io::model_to_json(q.model)},
                      {"map", io::function_to_json(q.map)}});
            return 0;
        }
        if (cmd_minimize->parsed()) {
            Model m = load_model_file(model_path);
            Quotient q = quotient(m, largest_congruence(m));
            emit(json{{"model", io::model_to_json(q.model)},
                      {"map", io::function_to_json(q.map)}});
            return 0;
        }
        if (cmd_ufext->parsed()) {
            Model m = load_model_file(model_path);
            UltrafilterExtension ext = ultrafilter_extension(m);
            emit(json{{"model", io::model_to_json(ext.model)},
                      {"principal", io::function_to_json(ext.principal)}});
            return 0;
        }
        if (cmd_translate->parsed()) {
            if (model_path.empty() == formula_text.empty())
                throw InputError("translate: give exactly one of --model or --formula");
            if (!model_path.empty()) {
                emit(json{{"structure", io::structure_to_json(fotrans(load_model_file(model_path)))}});
            } else {
                Formula f = parse(formula_text);
                emit(json{{"formula", render(f)}, {"fol", render(st(f, fol_var))}});
            }
            return 0;
        }
        if (cmd_sat->parsed()) {
            DecisionResult r = satisfiable(parse(formula_text));
            emit(io::decision_to_json(r));
            return r.verdict == DecisionResult::Verdict::Sat ? 0 : 1;
        }
        if (cmd_valid->parsed()) {
            DecisionResult r = valid(parse(formula_text));
            emit(io::decision_to_json(r));
            return r.verdict == DecisionResult::Verdict::Valid ? 0 : 1;
        }
        if (cmd_interpolate->parsed()) {
            Formula a = parse(left_formula), b = parse(right_formula);
            auto chi = interpolant(a, b, static_cast<std::size_t>(max_size));
            if (!chi) {
                emit(json{{"verdict", "NOT_FOUND_WITHIN_BOUND"}});
                return 3;
            }
            emit(json{{"verdict", "FOUND"}, {"interpolant", render(*chi)}});
            return 0;
        }
        if (cmd_examples->parsed()) {
            emit(example_report(which_example == "ex1" ? example_one() : example_two()));
            return 0;
        }
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const PropertyError& e) {
        emit(json{{"error", e.tag()}, {"message", e.what()}});
        return 1;
    } catch (const CapExceeded& e) {
        emit(json{{"error", "cap-exceeded"}, {"message", e.what()}});
        return 3;
    }
    return 0;
}
