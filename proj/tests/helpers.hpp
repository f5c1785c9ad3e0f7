#ifndef NBHD_TEST_HELPERS_HPP
#define NBHD_TEST_HELPERS_HPP

#include <random>
#include <string>
#include <vector>

#include "nbhd/constructions.hpp"
#include "nbhd/formula.hpp"
#include "nbhd/model.hpp"

namespace nbhd::testing {

inline Model random_model(std::mt19937& rng, int max_states, int max_atoms,
                          bool allow_empty = false) {
    std::uniform_int_distribution<int> state_count(allow_empty ? 0 : 1, max_states);
    const int n = state_count(rng);
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("s" + std::to_string(i));
    Carrier carrier(names);

    std::bernoulli_distribution keep(0.3);
    std::vector<std::vector<StateSet>> table(n);
    for (int s = 0; s < n; ++s)
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask)
            if (keep(rng)) table[s].push_back(StateSet::from_mask(n, mask));

    std::uniform_int_distribution<int> atom_count(0, max_atoms);
    const int a = atom_count(rng);
    std::bernoulli_distribution in_val(0.5);
    std::map<int, StateSet> vals;
    for (int i = 0; i < a; ++i) {
        StateSet v(n);
        for (int s = 0; s < n; ++s)
            if (in_val(rng)) v.insert(s);
        vals.emplace(i, v);
    }
    return Model(carrier, std::move(table), std::move(vals));
}

inline Formula random_formula(std::mt19937& rng, int depth, int max_atom) {
    std::uniform_int_distribution<int> pick(0, depth == 0 ? 1 : 4);
    std::uniform_int_distribution<int> atom(0, max_atom);
    switch (pick(rng)) {
        case 0: return Formula::atom(atom(rng));
        case 1: return Formula::bottom();
        case 2: return Formula::negation(random_formula(rng, depth - 1, max_atom));
        case 3:
            return Formula::conjunction(random_formula(rng, depth - 1, max_atom),
                                        random_formula(rng, depth - 1, max_atom));
        default: return Formula::box(random_formula(rng, depth - 1, max_atom));
    }
}

/// Random formula drawing atoms from a model's support (or plain p0 when
/// the support is empty).
inline Formula random_formula_for(std::mt19937& rng, const Model& m, int depth) {
    const auto& support = m.atom_support();
    const int max_atom = support.empty() ? 0 : support.back();
    return random_formula(rng, depth, max_atom);
}

inline Relation random_relation(std::mt19937& rng, const Carrier& dom, const Carrier& cod,
                                double density = 0.4) {
    std::bernoulli_distribution keep(density);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < dom.size(); ++a)
        for (std::size_t b = 0; b < cod.size(); ++b)
            if (keep(rng)) pairs.emplace_back(a, b);
    return Relation(dom, cod, std::move(pairs));
}

inline Relation random_equivalence(std::mt19937& rng, const Carrier& c) {
    std::vector<std::size_t> block(c.size(), 0);
    std::size_t next = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        std::uniform_int_distribution<std::size_t> pick(0, next);
        block[i] = pick(rng);
        if (block[i] == next) ++next;
    }
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < c.size(); ++a)
        for (std::size_t b = 0; b < c.size(); ++b)
            if (block[a] == block[b]) pairs.emplace_back(a, b);
    return Relation(c, c, std::move(pairs));
}

inline StateFunction random_function(std::mt19937& rng, const Carrier& dom, const Carrier& cod) {
    std::uniform_int_distribution<std::size_t> pick(0, cod.size() - 1);
    std::vector<std::size_t> map(dom.size());
    for (auto& t : map) t = pick(rng);
    return StateFunction(dom, cod, std::move(map));
}

/// Views of one relation used by the coherence-characterisation tests: the
/// projections out of the pair carrier and the same relation living on the
/// tagged disjoint carrier.
struct RelationPairs {
    RelationSpan span;
    StateFunction pi1, pi2;
    Carrier sum;
    Relation sum_relation;
    std::size_t left_size;

    explicit RelationPairs(const Relation& r) : span(relation_span(r)), left_size(r.dom().size()) {
        pi1 = span.pi1;
        pi2 = span.pi2;
        std::vector<std::string> names;
        for (const auto& n : r.dom().names()) names.push_back("L:" + n);
        for (const auto& n : r.cod().names()) names.push_back("R:" + n);
        sum = Carrier(names);
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (auto& [a, b] : r.pairs()) pairs.emplace_back(a, left_size + b);
        sum_relation = Relation(sum, sum, std::move(pairs));
    }

    StateSet embed(const StateSet& u1, const StateSet& u2) const {
        StateSet out(sum.size());
        for (std::size_t i : u1.members()) out.insert(i);
        for (std::size_t i : u2.members()) out.insert(left_size + i);
        return out;
    }
};

/// Atoms of the Boolean algebra of truth sets definable by formulas of
/// modal depth <= rounds: start from the atom-profile partition and
/// repeatedly refine by the boxtimes image of every definable set. Two
/// states agree on all formulas up to that depth iff they share a class.
/// Independent of the equivalence module: only boxtimes and set algebra.
inline std::vector<StateSet> definable_partition(const Model& m, int rounds) {
    const std::size_t n = m.size();
    std::vector<StateSet> classes;
    {
        std::map<std::vector<bool>, StateSet> by_profile;
        for (std::size_t s = 0; s < n; ++s) {
            std::vector<bool> profile;
            for (int a : m.atom_support()) profile.push_back(m.valuation(a).contains(s));
            by_profile.try_emplace(profile, StateSet(n)).first->second.insert(s);
        }
        for (auto& [profile, cls] : by_profile) classes.push_back(cls);
    }
    for (int r = 0; r < rounds; ++r) {
        const std::size_t k = classes.size();
        std::vector<StateSet> splitters;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
            StateSet u(n);
            for (std::size_t b = 0; b < k; ++b)
                if ((mask >> b) & 1) u |= classes[b];
            splitters.push_back(m.boxtimes(u));
        }
        std::vector<StateSet> next;
        for (const StateSet& cls : classes) {
            std::map<std::vector<bool>, StateSet> split;
            for (std::size_t s : cls.members()) {
                std::vector<bool> key;
                key.reserve(splitters.size());
                for (const StateSet& w : splitters) key.push_back(w.contains(s));
                split.try_emplace(key, StateSet(n)).first->second.insert(s);
            }
            for (auto& [key, part] : split) next.push_back(part);
        }
        classes = std::move(next);
    }
    return classes;
}

inline bool depth_bounded_equivalent(const Model& m1, std::size_t s1, const Model& m2,
                                     std::size_t s2, int rounds) {
    DisjointUnion du = disjoint_union(m1, m2);
    const auto classes = definable_partition(du.model, rounds);
    for (const StateSet& cls : classes)
        if (cls.contains(du.inl(s1))) return cls.contains(du.inr(s2));
    return false;
}

} // namespace nbhd::testing

#endif
