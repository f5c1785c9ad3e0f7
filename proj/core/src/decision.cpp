#include "nbhd/decision.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "nbhd/error.hpp"

namespace nbhd {

namespace {

/// Truth tables of every closure subformula over the 2^g types, where the
/// generators are the closure atoms (ascending) followed by the boxed
/// subformulas (closure order).
struct TypeSpace {
    Closure clo;
    std::vector<int> atom_gens;
    std::vector<Formula> box_gens;
    std::size_t num_types = 0;
    std::map<Formula, std::size_t> sub_index;
    std::vector<std::vector<char>> value;  // [subformula][type]

    std::size_t index_of(const Formula& f) const {
        auto it = sub_index.find(f);
        if (it == sub_index.end()) throw std::logic_error("formula outside its closure");
        return it->second;
    }
};

TypeSpace build_type_space(const Formula& goal, const DecisionCaps& caps) {
    TypeSpace ts;
    ts.clo = closure(goal);
    if (ts.clo.subformulas.size() > caps.max_closure)
        throw CapExceeded("closure of " + std::to_string(ts.clo.subformulas.size()) +
                          " subformulas exceeds the cap of " + std::to_string(caps.max_closure));
    ts.atom_gens.assign(ts.clo.atoms.begin(), ts.clo.atoms.end());
    ts.box_gens = ts.clo.boxed;
    const std::size_t g = ts.atom_gens.size() + ts.box_gens.size();
    if ((std::size_t{1} << g) > caps.max_types)
        throw CapExceeded("type space of 2^" + std::to_string(g) + " exceeds the cap");
    ts.num_types = std::size_t{1} << g;

    for (std::size_t i = 0; i < ts.clo.subformulas.size(); ++i)
        ts.sub_index.emplace(ts.clo.subformulas[i], i);

    auto generator_bit = [&](const Formula& f) -> std::optional<std::size_t> {
        if (f.kind() == Formula::Kind::Atom) {
            auto it = std::lower_bound(ts.atom_gens.begin(), ts.atom_gens.end(), f.atom_index());
            return static_cast<std::size_t>(it - ts.atom_gens.begin());
        }
        if (f.kind() == Formula::Kind::Box) {
            for (std::size_t i = 0; i < ts.box_gens.size(); ++i)
                if (ts.box_gens[i] == f.child()) return ts.atom_gens.size() + i;
            throw std::logic_error("box outside the generator list");
        }
        return std::nullopt;
    };

    ts.value.assign(ts.clo.subformulas.size(), std::vector<char>(ts.num_types, 0));
    for (std::size_t i = 0; i < ts.clo.subformulas.size(); ++i) {
        const Formula& f = ts.clo.subformulas[i];
        auto& row = ts.value[i];
        if (auto bit = generator_bit(f)) {
            for (std::size_t t = 0; t < ts.num_types; ++t) row[t] = static_cast<char>((t >> *bit) & 1);
            continue;
        }
        switch (f.kind()) {
            case Formula::Kind::Bottom: break;  // all zero
            case Formula::Kind::Not: {
                const auto& c = ts.value[ts.index_of(f.child())];
                for (std::size_t t = 0; t < ts.num_types; ++t) row[t] = static_cast<char>(!c[t]);
                break;
            }
            case Formula::Kind::And: {
                const auto& a = ts.value[ts.index_of(f.left())];
                const auto& b = ts.value[ts.index_of(f.right())];
                for (std::size_t t = 0; t < ts.num_types; ++t) row[t] = static_cast<char>(a[t] && b[t]);
                break;
            }
            default: throw std::logic_error("generator case already handled");
        }
    }
    return ts;
}

/// Coherence: boxed arguments with equal extension over W agree on their
/// box bit in every member of W.
bool coherent(const TypeSpace& ts, const std::vector<std::size_t>& w) {
    const std::size_t b = ts.box_gens.size();
    for (std::size_t i = 0; i < b; ++i) {
        const auto& arg_i = ts.value[ts.index_of(ts.box_gens[i])];
        const auto& box_i = ts.value[ts.index_of(Formula::box(ts.box_gens[i]))];
        for (std::size_t j = i + 1; j < b; ++j) {
            const auto& arg_j = ts.value[ts.index_of(ts.box_gens[j])];
            bool same_ext = true;
            for (std::size_t t : w)
                if (arg_i[t] != arg_j[t]) {
                    same_ext = false;
                    break;
                }
            if (!same_ext) continue;
            const auto& box_j = ts.value[ts.index_of(Formula::box(ts.box_gens[j]))];
            for (std::size_t t : w)
                if (box_i[t] != box_j[t]) return false;
        }
    }
    return true;
}

Model model_of(const TypeSpace& ts, const std::vector<std::size_t>& w) {
    const std::size_t k = w.size();
    std::vector<std::string> names;
    names.reserve(k);
    for (std::size_t j = 0; j < k; ++j) names.push_back("w" + std::to_string(j));
    Carrier carrier(std::move(names));

    std::vector<std::vector<StateSet>> table(k);
    for (std::size_t j = 0; j < k; ++j) {
        for (const Formula& arg : ts.box_gens) {
            if (!ts.value[ts.index_of(Formula::box(arg))][w[j]]) continue;
            StateSet ext(k);
            const auto& row = ts.value[ts.index_of(arg)];
            for (std::size_t l = 0; l < k; ++l)
                if (row[w[l]]) ext.insert(l);
            table[j].push_back(ext);
        }
    }
    std::map<int, StateSet> vals;
    for (int a : ts.atom_gens) {
        StateSet v(k);
        const auto& row = ts.value[ts.index_of(Formula::atom(a))];
        for (std::size_t l = 0; l < k; ++l)
            if (row[w[l]]) v.insert(l);
        vals.emplace(a, v);
    }
    return Model(carrier, std::move(table), std::move(vals));
}

} // namespace

DecisionResult satisfiable(const Formula& goal, const DecisionCaps& caps) {
    const TypeSpace ts = build_type_space(goal, caps);
    const auto& goal_row = ts.value[ts.index_of(goal)];

    std::vector<char> is_witness(ts.num_types, 0);
    bool any_witness = false;
    for (std::size_t t = 0; t < ts.num_types; ++t) {
        is_witness[t] = goal_row[t];
        any_witness = any_witness || goal_row[t];
    }
    if (!any_witness) return DecisionResult{DecisionResult::Verdict::Unsat, std::nullopt};

    const std::size_t b = ts.box_gens.size();
    const std::size_t bound =
        std::min({std::size_t{1} + b * (b - 1) / 2, ts.num_types, caps.max_types});

    std::uint64_t examined = 0;
    for (std::size_t k = 1; k <= bound; ++k) {
        // Lexicographic k-combinations of the type indices.
        std::vector<std::size_t> w(k);
        for (std::size_t i = 0; i < k; ++i) w[i] = i;
        while (true) {
            if (++examined > caps.max_candidates)
                throw CapExceeded("type-set search exceeded the candidate cap");
            bool has_witness = false;
            for (std::size_t t : w) has_witness = has_witness || is_witness[t];
            if (has_witness && coherent(ts, w)) {
                Model m = model_of(ts, w);
                std::size_t v0 = k;
                for (std::size_t j = 0; j < k && v0 == k; ++j)
                    if (is_witness[w[j]]) v0 = j;
                // Self-certification: the model must realise every type bit.
                for (const Formula& sub : ts.clo.subformulas) {
                    const StateSet truth = m.truth_set(sub);
                    const auto& row = ts.value[ts.index_of(sub)];
                    for (std::size_t j = 0; j < k; ++j)
                        if (truth.contains(j) != static_cast<bool>(row[w[j]]))
                            throw std::logic_error("type-set model failed verification");
                }
                return DecisionResult{DecisionResult::Verdict::Sat,
                                      SatCertificate{std::move(m), "w" + std::to_string(v0)}};
            }
            // Next combination.
            std::size_t i = k;
            while (i-- > 0) {
                if (w[i] + (k - i) < ts.num_types) {
                    ++w[i];
                    for (std::size_t j = i + 1; j < k; ++j) w[j] = w[j - 1] + 1;
                    break;
                }
                if (i == 0) goto next_size;
            }
        }
    next_size:;
    }
    return DecisionResult{DecisionResult::Verdict::Unsat, std::nullopt};
}

DecisionResult valid(const Formula& goal, const DecisionCaps& caps) {
    DecisionResult r = satisfiable(Formula::negation(goal), caps);
    if (r.verdict == DecisionResult::Verdict::Unsat)
        return DecisionResult{DecisionResult::Verdict::Valid, std::nullopt};
    // The countermodel satisfies ~goal at the witness; re-check against goal.
    const SatCertificate& cert = *r.certificate;
    if (cert.model.satisfies(cert.witness, goal))
        throw std::logic_error("countermodel satisfies the goal");
    return DecisionResult{DecisionResult::Verdict::Invalid, r.certificate};
}

DecisionResult consequence(const std::vector<Formula>& premises, const Formula& conclusion,
                           const DecisionCaps& caps) {
    Formula premise = Formula::top();
    bool first = true;
    for (const Formula& p : premises) {
        premise = first ? p : Formula::conjunction(premise, p);
        first = false;
    }
    return valid(Formula::implies(premise, conclusion), caps);
}

// ---------------------------------------------------------------------------
// Interpolation
// ---------------------------------------------------------------------------

namespace {

/// Candidate enumeration state: candidates are core formulas, but sizes are
/// counted in the candidate grammar (false/true/p/~p literals, binary
/// and/or, box, negated box). Distinct box subterms act as opaque
/// generators for the propositional-equivalence key.
struct CandidateSpace {
    std::vector<int> atoms;                    // shared vocabulary
    std::map<Formula, std::size_t> box_ids;    // box subformula -> generator id
    std::map<std::vector<std::uint64_t>, bool> seen;  // semantic key -> present
    std::vector<std::vector<Formula>> by_size;

    bool eval(const Formula& f, const std::map<int, bool>& atom_env,
              const std::map<std::size_t, bool>& box_env) const {
        switch (f.kind()) {
            case Formula::Kind::Bottom: return false;
            case Formula::Kind::Atom: return atom_env.at(f.atom_index());
            case Formula::Kind::Not: return !eval(f.child(), atom_env, box_env);
            case Formula::Kind::And:
                return eval(f.left(), atom_env, box_env) && eval(f.right(), atom_env, box_env);
            case Formula::Kind::Box: return box_env.at(box_ids.at(f));
        }
        return false;
    }

    void collect_boxes(const Formula& f, std::vector<std::size_t>& out) {
        switch (f.kind()) {
            case Formula::Kind::Bottom:
            case Formula::Kind::Atom: return;
            case Formula::Kind::Not: collect_boxes(f.child(), out); return;
            case Formula::Kind::And:
                collect_boxes(f.left(), out);
                collect_boxes(f.right(), out);
                return;
            case Formula::Kind::Box: {
                auto [it, fresh] = box_ids.try_emplace(f, box_ids.size());
                out.push_back(it->second);
                return;
            }
        }
    }

    /// Truth table of the candidate over its own occurring generators,
    /// prefixed by the sorted generator ids; equal keys = propositionally
    /// equal with identical box structure.
    std::vector<std::uint64_t> key(const Formula& f) {
        std::vector<std::size_t> boxes;
        collect_boxes(f, boxes);
        std::sort(boxes.begin(), boxes.end());
        boxes.erase(std::unique(boxes.begin(), boxes.end()), boxes.end());
        std::vector<int> used_atoms;
        for (int a : atoms)
            if (uses_atom(f, a)) used_atoms.push_back(a);

        std::vector<std::uint64_t> k;
        k.push_back(used_atoms.size());
        for (int a : used_atoms) k.push_back(static_cast<std::uint64_t>(a));
        for (std::size_t b : boxes) k.push_back(0x8000000000000000ull | b);

        const std::size_t g = used_atoms.size() + boxes.size();
        if (g > 16) throw CapExceeded("interpolant candidate with too many generators");
        std::uint64_t word = 0;
        std::size_t bit = 0;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << g); ++mask) {
            std::map<int, bool> atom_env;
            std::map<std::size_t, bool> box_env;
            for (std::size_t i = 0; i < used_atoms.size(); ++i)
                atom_env[used_atoms[i]] = (mask >> i) & 1;
            for (std::size_t i = 0; i < boxes.size(); ++i)
                box_env[boxes[i]] = (mask >> (used_atoms.size() + i)) & 1;
            if (eval(f, atom_env, box_env)) word |= std::uint64_t{1} << bit;
            if (++bit == 64) {
                k.push_back(word);
                word = 0;
                bit = 0;
            }
        }
        if (bit > 0) k.push_back(word);
        return k;
    }

    static bool uses_atom(const Formula& f, int a) {
        switch (f.kind()) {
            case Formula::Kind::Bottom: return false;
            case Formula::Kind::Atom: return f.atom_index() == a;
            case Formula::Kind::Not:
            case Formula::Kind::Box: return uses_atom(f.child(), a);
            case Formula::Kind::And: return uses_atom(f.left(), a) || uses_atom(f.right(), a);
        }
        return false;
    }

    /// Adds f at the given size when semantically fresh; returns whether it
    /// was fresh. by_size must be pre-sized.
    bool add(const Formula& f, std::size_t size) {
        auto [it, fresh] = seen.try_emplace(key(f), true);
        if (!fresh) return false;
        by_size[size].push_back(f);
        return true;
    }
};

} // namespace

std::optional<Formula> interpolant(const Formula& left, const Formula& right,
                                   std::size_t max_size, const DecisionCaps& caps) {
    if (valid(Formula::implies(left, right), caps).verdict != DecisionResult::Verdict::Valid)
        throw PropertyError("not-valid", "interpolant: the implication is not valid");

    const Closure cl = closure(left), cr = closure(right);
    std::vector<int> shared;
    std::set_intersection(cl.atoms.begin(), cl.atoms.end(), cr.atoms.begin(), cr.atoms.end(),
                          std::back_inserter(shared));

    CandidateSpace space;
    space.atoms = shared;
    space.by_size.resize(max_size + 1);

    auto accepted = [&](const Formula& chi) {
        return valid(Formula::implies(left, chi), caps).verdict == DecisionResult::Verdict::Valid &&
               valid(Formula::implies(chi, right), caps).verdict == DecisionResult::Verdict::Valid;
    };

    for (std::size_t size = 1; size <= max_size; ++size) {
        std::vector<Formula> batch;
        auto propose = [&](const Formula& f) {
            if (space.seen.size() > caps.max_candidates)
                throw CapExceeded("interpolant search exceeded the candidate cap");
            if (space.add(f, size)) batch.push_back(f);
        };
        if (size == 1) {
            propose(Formula::bottom());
            propose(Formula::top());
            for (int a : shared) propose(Formula::atom(a));
        }
        if (size == 2)
            for (int a : shared) propose(Formula::negation(Formula::atom(a)));
        if (size >= 2)
            for (const Formula& f : space.by_size[size - 1]) propose(Formula::box(f));
        if (size >= 3)
            for (const Formula& f : space.by_size[size - 2])
                propose(Formula::negation(Formula::box(f)));
        if (size >= 3) {
            for (std::size_t a = 1; a + 2 <= size; ++a) {
                const std::size_t b = size - 1 - a;
                for (const Formula& x : space.by_size[a])
                    for (const Formula& y : space.by_size[b]) {
                        propose(Formula::conjunction(x, y));
                        propose(Formula::disjunction(x, y));
                    }
            }
        }
        for (const Formula& chi : batch)
            if (accepted(chi)) return chi;
    }
    return std::nullopt;
}

} // namespace nbhd
