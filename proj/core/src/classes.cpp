#include "nbhd/classes.hpp"

#include <algorithm>
#include <stdexcept>

#include "nbhd/error.hpp"

namespace nbhd {

KripkeModel::KripkeModel(Carrier states, Relation edges, std::map<int, StateSet> valuation)
    : states_(std::move(states)), edges_(std::move(edges)) {
    if (edges_.dom() != states_ || edges_.cod() != states_)
        throw InputError("kripke model: edges do not live on the carrier");
    for (auto& [atom, set] : valuation) {
        if (atom < 0) throw InputError("atom index must be nonnegative");
        if (set.universe() != states_.size())
            throw InputError("kripke model: valuation outside the carrier");
        atoms_.push_back(atom);
        vals_.push_back(std::move(set));
    }
}

StateSet KripkeModel::successors(std::size_t s) const {
    return edges_.image(StateSet::singleton(states_.size(), s));
}

StateSet KripkeModel::valuation(int atom) const {
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), atom);
    if (it != atoms_.end() && *it == atom) return vals_[it - atoms_.begin()];
    return StateSet(states_.size());
}

StateSet KripkeModel::truth_set(const Formula& f) const {
    switch (f.kind()) {
        case Formula::Kind::Bottom: return StateSet(size());
        case Formula::Kind::Atom: return valuation(f.atom_index());
        case Formula::Kind::Not: return truth_set(f.child()).complement();
        case Formula::Kind::And: return truth_set(f.left()) & truth_set(f.right());
        case Formula::Kind::Box: {
            StateSet body = truth_set(f.child());
            StateSet out(size());
            for (std::size_t s = 0; s < size(); ++s)
                if (successors(s).subset_of(body)) out.insert(s);
            return out;
        }
    }
    return StateSet(size());
}

bool KripkeModel::satisfies(std::size_t s, const Formula& f) const {
    if (s >= size()) throw InputError("state index out of range");
    return truth_set(f).contains(s);
}

bool KripkeModel::operator==(const KripkeModel& o) const {
    return states_ == o.states_ && edges_ == o.edges_ && atoms_ == o.atoms_ && vals_ == o.vals_;
}

bool is_monotonic(const Model& m) {
    for (std::size_t s = 0; s < m.size(); ++s)
        for (const auto& u : m.neighbourhoods(s)) {
            bool fine = true;
            for_each_subset(m.size(), [&](const StateSet& v) {
                if (fine && u.subset_of(v) && !m.has_neighbourhood(s, v)) fine = false;
            });
            if (!fine) return false;
        }
    return true;
}

bool is_augmented(const Model& m) {
    if (!is_monotonic(m)) return false;
    for (std::size_t s = 0; s < m.size(); ++s) {
        const auto& nu = m.neighbourhoods(s);
        if (nu.empty()) return false;
        StateSet core = StateSet::full_set(m.size());
        for (const auto& u : nu) core &= u;
        if (!m.has_neighbourhood(s, core)) return false;
    }
    return true;
}

Model from_kripke(const KripkeModel& k) {
    const std::size_t n = k.size();
    std::vector<std::vector<StateSet>> table(n);
    for (std::size_t s = 0; s < n; ++s) {
        const StateSet succ = k.successors(s);
        for_each_subset(n, [&](const StateSet& v) {
            if (succ.subset_of(v)) table[s].push_back(v);
        });
    }
    std::map<int, StateSet> vals;
    for (int a : k.atom_support()) vals.emplace(a, k.valuation(a));
    return Model(k.states(), std::move(table), std::move(vals));
}

KripkeModel to_kripke(const Model& m) {
    if (!is_augmented(m))
        throw PropertyError("not-augmented", "to_kripke: model is not augmented");
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t s = 0; s < m.size(); ++s) {
        StateSet core = StateSet::full_set(m.size());
        for (const auto& u : m.neighbourhoods(s)) core &= u;
        for (std::size_t t : core.members()) edges.emplace_back(s, t);
    }
    std::map<int, StateSet> vals;
    for (int a : m.atom_support()) vals.emplace(a, m.valuation(a));
    return KripkeModel(m.states(), Relation(m.states(), m.states(), std::move(edges)),
                       std::move(vals));
}

std::vector<StateSet> core_neighbourhoods(const Model& m, std::size_t s) {
    if (s >= m.size()) throw InputError("state index out of range");
    std::vector<StateSet> out;
    for (const auto& u : m.neighbourhoods(s)) {
        bool minimal = true;
        for (const auto& v : m.neighbourhoods(s))
            if (v != u && v.subset_of(u)) {
                minimal = false;
                break;
            }
        if (minimal) out.push_back(u);
    }
    return out;  // collections are stored sorted, so this is canonical
}

StateSet minimal_base(const Model& m, std::size_t s) {
    if (s >= m.size()) throw InputError("state index out of range");
    const std::size_t n = m.size();
    auto works = [&](const StateSet& b) {
        bool good = true;
        for_each_subset(n, [&](const StateSet& d) {
            if (good && m.has_neighbourhood(s, d) != m.has_neighbourhood(s, d & b)) good = false;
        });
        return good;
    };
    std::vector<StateSet> candidates;
    for_each_subset(n, [&](const StateSet& b) { candidates.push_back(b); });
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const StateSet& a, const StateSet& b) { return a.count() < b.count(); });
    for (const auto& b : candidates)
        if (works(b)) return b;
    throw std::logic_error("minimal_base: the full carrier must be a base set");
}

std::vector<StateSet> mon_core_decomposition(const Model& m, std::size_t s) {
    if (!is_monotonic(m))
        throw PropertyError("not-monotonic", "core decomposition needs a monotonic model");
    std::vector<StateSet> cores = core_neighbourhoods(m, s);
    // Sanity: on a finite monotonic model the union of core up-closures is
    // exactly the collection.
    std::vector<StateSet> rebuilt;
    for_each_subset(m.size(), [&](const StateSet& v) {
        for (const auto& c : cores)
            if (c.subset_of(v)) {
                rebuilt.push_back(v);
                return;
            }
    });
    if (rebuilt != m.neighbourhoods(s))
        throw std::logic_error("core decomposition does not rebuild the collection");
    return cores;
}

} // namespace nbhd
