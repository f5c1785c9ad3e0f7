// Acceptance suite: one criterion per function, one pass/fail line each.
// Returns nonzero when any criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "helpers.hpp"
#include "naive_decision.hpp"
#include "nbhd/classes.hpp"
#include "nbhd/constructions.hpp"
#include "nbhd/decision.hpp"
#include "nbhd/equivalence.hpp"
#include "nbhd/examples.hpp"
#include "nbhd/fol.hpp"
#include "nbhd/ufext.hpp"

using namespace nbhd;
using nbhd::testing::depth_bounded_equivalent;
using nbhd::testing::naive_satisfiable;
using nbhd::testing::random_equivalence;
using nbhd::testing::random_formula;
using nbhd::testing::random_formula_for;
using nbhd::testing::random_model;

namespace {

struct Harness {
    int failures = 0;
    int index = 0;

    void run(const std::string& label, const std::function<void()>& body) {
        ++index;
        const auto start = std::chrono::steady_clock::now();
        std::string error;
        try {
            body();
        } catch (const std::exception& e) {
            error = e.what();
        }
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
        if (error.empty()) {
            std::cout << "[PASS] criterion " << index << ": " << label << " (" << ms << " ms)\n";
        } else {
            ++failures;
            std::cout << "[FAIL] criterion " << index << ": " << label << " — " << error << "\n";
        }
    }
};

void expect(bool condition, const std::string& message) {
    if (!condition) throw std::runtime_error(message);
}

Relation named(const Model& a, const Model& b,
               std::vector<std::pair<std::string, std::string>> pairs) {
    return Relation::from_names(a.states(), b.states(), std::move(pairs));
}

// --------------------------------------------------------------------------

void criterion_1_first_example() {
    const auto start = std::chrono::steady_clock::now();
    const ExamplePair ex = example_one();
    expect(is_bounded_morphism(ex.f_left, ex.left, ex.target), "f1 must be bounded");
    expect(is_bounded_morphism(ex.f_right, ex.right, ex.target), "f2 must be bounded");
    expect(largest_bisimulation(ex.left, ex.right).pairs().empty(),
           "largest bisimulation must be empty");
    expect(largest_precocongruence(ex.left, ex.right) ==
               named(ex.left, ex.right, {{"t1", "s"}, {"t2", "s"}}),
           "largest precocongruence must be {(t1,s),(t2,s)}");
    expect(behavioural_equivalence(ex.left, ex.right).contains(0, 0),
           "behavioural equivalence must relate (t1,s)");
    Relation collapse = named(ex.left, ex.left, {{"t1", "t2"}});
    expect(is_precongruence(collapse, ex.left).ok, "{(t1,t2)} must be a precongruence");
    expect(!is_precocongruence(collapse, ex.left, ex.left).ok,
           "{(t1,t2)} must not be a precocongruence");
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    expect(ms < 1000, "must finish within one second");
}

void criterion_2_second_example() {
    const auto start = std::chrono::steady_clock::now();
    const ExamplePair ex = example_two();
    expect(is_bounded_morphism(ex.f_left, ex.left, ex.target), "f1' must be bounded");
    expect(largest_precocongruence(ex.left, ex.right).pairs().empty(),
           "largest precocongruence must be empty");
    expect(behavioural_equivalence(ex.left, ex.right) == named(ex.left, ex.right, {{"t1", "s"}}),
           "behavioural equivalence must relate exactly (t1,s)");
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    expect(ms < 1000, "must finish within one second");
}

void criterion_3_oracle_equivalence() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937 rng(1009);
    for (int round = 0; round < 200; ++round) {
        Model m1 = random_model(rng, 3, 2);
        Model m2 = random_model(rng, 3, 2);
        expect(largest_bisimulation(m1, m2) == brute_force(m1, m2, EquivalenceKind::Bisimulation),
               "bisimulation gfp must equal the brute-force union");
        expect(largest_precocongruence(m1, m2) ==
                   brute_force(m1, m2, EquivalenceKind::Precocongruence),
               "precocongruence gfp must equal the brute-force union");
        expect(behavioural_equivalence(m1, m2) ==
                   brute_force(m1, m2, EquivalenceKind::Behavioural),
               "behavioural equivalence must equal the congruence-enumeration oracle");
    }
    const auto minutes = std::chrono::duration_cast<std::chrono::minutes>(
                             std::chrono::steady_clock::now() - start)
                             .count();
    expect(minutes < 5, "must finish within five minutes");
}

void criterion_4_hennessy_milner() {
    std::mt19937 rng(1013);
    for (int round = 0; round < 100; ++round) {
        Model m1 = random_model(rng, 4, 2);
        Model m2 = random_model(rng, 4, 2);
        Relation beh = behavioural_equivalence(m1, m2);
        const int depth_bound = static_cast<int>(m1.size() + m2.size());
        for (std::size_t a = 0; a < m1.size(); ++a)
            for (std::size_t b = 0; b < m2.size(); ++b) {
                const bool related = beh.contains(a, b);
                auto witness = distinguishing_formula(m1, a, m2, b);
                expect(witness.has_value() != related,
                       "distinguishing formula must exist exactly off the relation");
                expect(depth_bounded_equivalent(m1, a, m2, b, depth_bound) == related,
                       "depth-bounded modal equivalence must match behavioural equivalence");
                if (witness)
                    expect(m1.satisfies(a, *witness) != m2.satisfies(b, *witness),
                           "returned witness must verify");
            }
    }
}

void criterion_5_single_model_collapse() {
    std::mt19937 rng(1019);
    for (int round = 0; round < 100; ++round) {
        Model m = random_model(rng, 4, 2);
        Relation r = random_equivalence(rng, m.states());
        const bool bis = is_bisimulation(r, m, m).ok;
        const bool pre = is_precocongruence(r, m, m).ok;
        const bool con = is_congruence(r, m).ok;
        expect(bis == pre && pre == con, "the three checkers must agree on equivalences");
        expect(largest_bisimulation(m, m) == behavioural_equivalence(m, m),
               "largest bisimulation must equal behavioural equivalence on one model");
    }
}

void criterion_6_st_truth() {
    std::mt19937 rng(1021);
    int triples = 0;
    while (triples < 500) {
        Model m = random_model(rng, 4, 2);
        TwoSortedStructure f = fotrans(m);
        for (int i = 0; i < 5 && triples < 500; ++i) {
            Formula phi = random_formula_for(rng, m, 3);
            for (std::size_t s = 0; s < m.size() && triples < 500; ++s) {
                Assignment env;
                env.state_vars["x"] = s;
                expect(fol_eval(f, st(phi, "x"), env) == m.satisfies(s, phi),
                       "st-truth must hold");
                ++triples;
            }
        }
    }
}

void criterion_7_nax_round_trip() {
    std::vector<Model> models = {example_one().left, example_one().right, example_one().target,
                                 example_two().left};
    std::mt19937 rng(1031);
    for (int round = 0; round < 100; ++round) models.push_back(random_model(rng, 3, 2, true));
    for (const Model& m : models) {
        TwoSortedStructure f = fotrans(m);
        expect(nax_check(f).ok, "translated models must satisfy NAX");
        NbmResult back = nbm(f);
        expect(back.model == m, "nbm must invert fotrans");
        expect(structures_isomorphic(f, fotrans(back.model), back.state_iso, back.nbhd_iso),
               "the returned maps must be an isomorphism");
    }
}

void criterion_8_ultrafilter_extension() {
    std::mt19937 rng(1033);
    std::vector<Model> models = {example_one().left, example_one().right, example_one().target};
    for (int round = 0; round < 40; ++round) models.push_back(random_model(rng, 4, 2));
    for (const Model& m : models) {
        auto ufs = ultrafilters(m);
        expect(ufs.size() == m.size(), "finite carriers have one ultrafilter per state");
        UltrafilterExtension ext = ultrafilter_extension(m);
        for (int i = 0; i < 5; ++i) {
            Formula phi = random_formula_for(rng, m, 3);
            StateSet truth = m.truth_set(phi);
            for (std::size_t u = 0; u < ufs.size(); ++u)
                expect(ext.model.satisfies(u, phi) == ufs[u].contains(truth),
                       "the truth lemma must hold in the extension");
        }
        expect(ext.principal.is_bijection(), "the principal map must be a bijection");
        expect(is_bounded_morphism(ext.principal, m, ext.model),
               "the principal map must be bounded");
        std::vector<std::size_t> inv(m.size());
        for (std::size_t s = 0; s < m.size(); ++s) inv[ext.principal(s)] = s;
        expect(is_bounded_morphism(StateFunction(ext.model.states(), m.states(), std::move(inv)),
                                   ext.model, m),
               "the inverse of the principal map must be bounded");
    }
    // Lifted morphisms verify as bounded (lift_morphism checks internally).
    const ExamplePair ex = example_one();
    lift_morphism(ex.f_left, ex.left, ex.target);
    lift_morphism(ex.f_right, ex.right, ex.target);
    for (int round = 0; round < 10; ++round) {
        Model m = random_model(rng, 3, 1);
        Quotient q = quotient(m, largest_congruence(m));
        lift_morphism(q.map, m, q.model);
    }
}

void criterion_9_decision_engine() {
    // The two classical non-theorems, with verified countermodels.
    for (const char* text : {"[]p0 & []p1 -> [](p0 & p1)", "[]p0 -> [](p0 | p1)"}) {
        Formula goal = parse(text);
        DecisionResult r = valid(goal);
        expect(r.verdict == DecisionResult::Verdict::Invalid,
               std::string(text) + " must be INVALID");
        expect(r.certificate.has_value(), "countermodel required");
        expect(r.certificate->model.satisfies(r.certificate->witness, Formula::negation(goal)),
               "countermodel must verify");
    }

    // Hand-listed theorems of the logic: propositional tautologies and
    // boxed pairs of provably equivalent bodies.
    const std::vector<std::string> tautologies = {
        "p0 -> p0",
        "p0 | ~p0",
        "~(p0 & ~p0)",
        "p0 & p1 -> p0",
        "p0 -> p0 | p1",
        "p0 -> (p1 -> p0)",
        "(p0 & p1) <-> (p1 & p0)",
        "false -> p0",
        "p0 -> true",
        "~~p0 <-> p0",
        "(p0 | p1) <-> (p1 | p0)",
        "(p0 <-> p1) -> (p0 -> p1)",
        "[]p0 <-> []p0",
        "[]p0 <-> [](p0 & p0)",
        "[](p0 & p1) <-> [](p1 & p0)",
        "[]p0 <-> []~~p0",
        "[](p0 | p1) <-> [](p1 | p0)",
        "[]p0 -> []p0",
        "[](p0 & (p1 & p2)) <-> []((p0 & p1) & p2)",
        "[]~(p0 & ~p0) <-> []~(p1 & ~p1)",
        "[]false <-> [](p0 & ~p0)",
        "[]p0 & p1 -> []p0",
    };
    DecisionCaps caps;
    caps.max_closure = 32;  // a few desugared tautologies have wide closures
    int checked = 0;
    for (const std::string& text : tautologies) {
        expect(valid(parse(text), caps).verdict == DecisionResult::Verdict::Valid,
               text + " must be VALID");
        ++checked;
    }
    expect(checked >= 20, "at least twenty tautologies");

    // Pruned search vs naive exhaustive search on closures with at most
    // five boxed/atomic generators.
    const std::vector<std::string> sat_inputs = {
        "false",
        "p0",
        "[]p0",
        "~[]p0",
        "[]p0 & ~[]p0",
        "[]p0 & ~[]~p0",
        "[]p0 & ~[](p0 & p0)",
        "[](p0 & p1) & ~[]p0",
        "[]p0 & []p1 & ~[](p0 & p1)",
        "[]p0 & ~[](p0 | p1)",
        "[]false & ~[]p0",
        "[]p0 & ~p0",
        "[]p0 & [](p0 | p1) & ~[](p0 & p1)",
    };
    for (const std::string& text : sat_inputs) {
        Formula goal = parse(text);
        Closure clo = closure(goal);
        expect(clo.atoms.size() + clo.boxed.size() <= 5, text + ": oracle input too wide");
        const bool pruned = satisfiable(goal).verdict == DecisionResult::Verdict::Sat;
        expect(pruned == naive_satisfiable(goal), text + ": oracle disagreement");
    }
    std::mt19937 rng(1039);
    int random_checked = 0;
    for (int round = 0; round < 400 && random_checked < 40; ++round) {
        Formula goal = random_formula(rng, 3, 1);
        Closure clo = closure(goal);
        if (clo.atoms.size() + clo.boxed.size() > 4) continue;
        ++random_checked;
        const bool pruned = satisfiable(goal).verdict == DecisionResult::Verdict::Sat;
        expect(pruned == naive_satisfiable(goal), render(goal) + ": oracle disagreement");
    }
    expect(random_checked >= 40, "random oracle comparisons");
}

void criterion_10_interpolation() {
    const std::vector<std::pair<std::string, std::string>> suite = {
        {"false", "[]p1 & p2"},
        {"p5", "true"},
        {"[]p0 & p3", "[]p0 | p4"},
        {"p0 & p1", "p0 | p2"},
        {"p1 & ~p1", "p2"},
        {"p1", "p2 | ~p2"},
        {"[](p0 & p0) & p1", "[](p0 & p0) | p2"},
        {"~[]p0 & p1", "~[]p0 | p2"},
        {"p0 & p1", "p0"},
        {"p3", "p3 | p4"},
        {"[](p0 & p1) & p2", "[](p1 & p0) | p3"},
    };
    DecisionCaps caps;
    caps.max_closure = 40;  // wide desugared implications; the size bound stays at its default
    int found = 0;
    for (auto& [l, r] : suite) {
        Formula left = parse(l), right = parse(r);
        auto chi = interpolant(left, right, 9, caps);
        expect(chi.has_value(), l + " / " + r + ": interpolant within the default bound");
        ++found;
        Closure cl = closure(left), cr = closure(right), cc = closure(*chi);
        for (int a : cc.atoms)
            expect(cl.atoms.count(a) == 1 && cr.atoms.count(a) == 1,
                   "vocabulary condition violated");
        expect(valid(Formula::implies(left, *chi), caps).verdict == DecisionResult::Verdict::Valid,
               "left implication re-check failed");
        expect(valid(Formula::implies(*chi, right), caps).verdict ==
                   DecisionResult::Verdict::Valid,
               "right implication re-check failed");
    }
    expect(found >= 10, "at least ten implications");
}

} // namespace

int main() {
    Harness h;
    h.run("first example pair reproduced exactly", criterion_1_first_example);
    h.run("second example pair reproduced exactly", criterion_2_second_example);
    h.run("fixpoint engines equal brute-force oracles on 200 random pairs",
          criterion_3_oracle_equivalence);
    h.run("Hennessy-Milner at desk scale on 100 random pairs", criterion_4_hennessy_milner);
    h.run("single-model collapse of the three checkers", criterion_5_single_model_collapse);
    h.run("standard translation preserves truth on 500 triples", criterion_6_st_truth);
    h.run("NAX holds and nbm inverts fotrans", criterion_7_nax_round_trip);
    h.run("ultrafilter extensions: truth lemma, principal isomorphism, lifting",
          criterion_8_ultrafilter_extension);
    h.run("decision engine: non-theorems, tautologies, naive-oracle agreement",
          criterion_9_decision_engine);
    h.run("interpolants found, vocabulary and validity re-checked", criterion_10_interpolation);
    if (h.failures == 0)
        std::cout << "all criteria passed\n";
    else
        std::cout << h.failures << " criteria failed\n";
    return h.failures == 0 ? 0 : 1;
}
