#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "nbhd/equivalence.hpp"
#include "nbhd/error.hpp"
#include "nbhd/examples.hpp"
#include "nbhd/fol.hpp"
#include "nbhd/json_io.hpp"

using namespace nbhd;

namespace {
const ExamplePair ex1 = example_one();
}

TEST_CASE("standard translation shapes") {
    CHECK(render(st(parse("[]p0"), "x")) ==
          "Ex u1 ((x N u1 & All y1 ((u1 E y1 <-> P0 y1))))");
    CHECK(render(st(Formula::bottom(), "x")) == "~(x = x)");
    CHECK(render(st(Formula::atom(1), "x")) == "P1 x");
    // Fresh variables are numbered by box traversal order.
    CHECK(render(st(parse("[] [] p0"), "x")) ==
          "Ex u1 ((x N u1 & All y1 ((u1 E y1 <-> Ex u2 ((y1 N u2 & All y2 ((u2 E y2 <-> "
          "P0 y2))))))))");
}

TEST_CASE("fotrans of the bundled frames") {
    TwoSortedStructure f = fotrans(ex1.left);
    REQUIRE(f.dn.size() == 2);  // the empty set and {t2}
    CHECK(f.extent(0).empty());
    CHECK(f.extent(1) == ex1.left.states().set_of({"t2"}));
    CHECK(f.rel_n == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 1}, {2, 0}});
    CHECK(f.rel_e == std::vector<std::pair<std::size_t, std::size_t>>{{1, 1}});

    TwoSortedStructure g = fotrans(ex1.right);
    CHECK(g.dn.size() == 0);
    CHECK(g.rel_n.empty());
    CHECK(g.rel_e.empty());

    TwoSortedStructure h = fotrans(make_model({}, {}));
    CHECK(h.ds.size() == 0);
    CHECK(h.dn.size() == 0);
}

TEST_CASE("fol evaluation basics") {
    TwoSortedStructure f = fotrans(ex1.left);
    Assignment env;
    env.state_vars["x"] = 2;  // t3
    CHECK(fol_eval(f, st(parse("[]false"), "x"), env));
    env.state_vars["x"] = 0;
    CHECK_FALSE(fol_eval(f, st(parse("[]false"), "x"), env));
    CHECK(fol_eval(f, FolFormula::eq_state("x", "x"), env));
    // A state with no neighbourhoods fails Ex u (x N u).
    TwoSortedStructure g = fotrans(ex1.right);
    Assignment env2;
    env2.state_vars["x"] = 0;
    CHECK_FALSE(fol_eval(g, FolFormula::exists_nbhd("u", FolFormula::rel_n("x", "u")), env2));
    Assignment missing;
    CHECK_THROWS_AS(fol_eval(f, FolFormula::eq_state("x", "x"), missing), InputError);
}

TEST_CASE("st-truth on random models and formulas") {
    std::mt19937 rng(401);
    for (int round = 0; round < 80; ++round) {
        Model m = testing::random_model(rng, 4, 2);
        TwoSortedStructure f = fotrans(m);
        for (int i = 0; i < 6; ++i) {
            Formula phi = testing::random_formula_for(rng, m, 3);
            FolFormula alpha = st(phi, "x");
            for (std::size_t s = 0; s < m.size(); ++s) {
                Assignment env;
                env.state_vars["x"] = s;
                CHECK(fol_eval(f, alpha, env) == m.satisfies(s, phi));
            }
        }
    }
}

TEST_CASE("NAX holds for every translated model and fails on broken structures") {
    std::mt19937 rng(409);
    for (int round = 0; round < 60; ++round) {
        Model m = testing::random_model(rng, 3, 2, true);
        CHECK(nax_check(fotrans(m)).ok);
    }

    TwoSortedStructure orphan = fotrans(ex1.left);
    orphan.dn = Carrier({"n0", "n1", "n2"});  // n2 has no N-witness
    orphan.rel_e.emplace_back(2, 0);
    NaxReport r1 = nax_check(orphan);
    CHECK_FALSE(r1.ok);
    CHECK(r1.a1_witness == std::string("n2"));

    TwoSortedStructure dup = fotrans(ex1.left);
    dup.dn = Carrier({"n0", "n1", "n2"});
    dup.rel_n.emplace_back(0, 2);  // n2 is E-indistinguishable from n0
    std::sort(dup.rel_n.begin(), dup.rel_n.end());
    NaxReport r2 = nax_check(dup);
    CHECK_FALSE(r2.ok);
    REQUIRE(r2.a2_witness.has_value());
    CHECK(r2.a2_witness->first == "n0");
    CHECK(r2.a2_witness->second == "n2");
    CHECK_THROWS_AS(nbm(dup), PropertyError);
}

TEST_CASE("nbm inverts fotrans up to the returned isomorphism") {
    std::mt19937 rng(419);
    for (int round = 0; round < 60; ++round) {
        Model m = testing::random_model(rng, 3, 2, true);
        TwoSortedStructure f = fotrans(m);
        NbmResult back = nbm(f);
        CHECK(back.model == m);
        CHECK(structures_isomorphic(f, fotrans(back.model), back.state_iso, back.nbhd_iso));
    }
    NbmResult empty = nbm(fotrans(make_model({}, {})));
    CHECK(empty.model.size() == 0);
}

TEST_CASE("translated truth is invariant across behaviourally equivalent states") {
    const ExamplePair ex2 = example_two();
    std::mt19937 rng(421);
    for (const ExamplePair& ex : {ex1, ex2}) {
        TwoSortedStructure left = fotrans(ex.left);
        TwoSortedStructure right = fotrans(ex.right);
        Relation beh = behavioural_equivalence(ex.left, ex.right);
        for (auto& [a, b] : beh.pairs())
            for (int i = 0; i < 20; ++i) {
                Formula phi = testing::random_formula(rng, 3, 1);
                Assignment ea, eb;
                ea.state_vars["x"] = a;
                eb.state_vars["x"] = b;
                CHECK(fol_eval(left, st(phi, "x"), ea) == fol_eval(right, st(phi, "x"), eb));
            }
    }
}

TEST_CASE("structure JSON is deterministic") {
    io::json j = io::structure_to_json(fotrans(ex1.left));
    CHECK(j["states"] == io::json::parse(R"(["t1","t2","t3"])"));
    CHECK(j["neighbourhoods"] == io::json::parse(R"(["n0","n1"])"));
    CHECK(j["N"] == io::json::parse(R"([["t1","n1"],["t2","n1"],["t3","n0"]])"));
    CHECK(j["E"] == io::json::parse(R"([["n1","t2"]])"));
}
