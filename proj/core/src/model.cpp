#include "nbhd/model.hpp"

#include <algorithm>

#include "nbhd/error.hpp"

namespace nbhd {

// ---------------------------------------------------------------------------
// Carrier
// ---------------------------------------------------------------------------

Carrier::Carrier(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (!index_.emplace(names_[i], i).second)
            throw InputError("duplicate state name '" + names_[i] + "'");
    }
}

std::size_t Carrier::index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw InputError("unknown state name '" + name + "'");
    return it->second;
}

StateSet Carrier::set_of(const std::vector<std::string>& members) const {
    StateSet s(size());
    for (const auto& m : members) s.insert(index_of(m));
    return s;
}

std::vector<std::string> Carrier::names_of(const StateSet& s) const {
    std::vector<std::string> out;
    for (std::size_t i : s.members()) out.push_back(names_[i]);
    return out;
}

// ---------------------------------------------------------------------------
// Model
// ---------------------------------------------------------------------------

static std::vector<StateSet> canonical_collection(std::vector<StateSet> c, std::size_t n) {
    for (const auto& u : c)
        if (u.universe() != n) throw InputError("neighbourhood set outside the carrier");
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    return c;
}

Model::Model(Carrier states, std::vector<std::vector<StateSet>> nbhd,
             std::map<int, StateSet> valuation)
    : states_(std::move(states)) {
    if (nbhd.size() != states_.size())
        throw InputError("neighbourhood table size does not match the carrier");
    nbhd_.reserve(nbhd.size());
    for (auto& c : nbhd) nbhd_.push_back(canonical_collection(std::move(c), states_.size()));
    for (auto& [atom, set] : valuation) {
        if (atom < 0) throw InputError("atom index must be nonnegative");
        if (set.universe() != states_.size()) throw InputError("valuation set outside the carrier");
        atoms_.push_back(atom);
        vals_.push_back(std::move(set));
    }
}

bool Model::has_neighbourhood(std::size_t s, const StateSet& u) const {
    const auto& c = nbhd_[s];
    return std::binary_search(c.begin(), c.end(), u);
}

StateSet Model::valuation(int atom) const {
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), atom);
    if (it != atoms_.end() && *it == atom) return vals_[it - atoms_.begin()];
    return StateSet(states_.size());
}

StateSet Model::truth_set(const Formula& f) const {
    switch (f.kind()) {
        case Formula::Kind::Bottom: return StateSet(size());
        case Formula::Kind::Atom: return valuation(f.atom_index());
        case Formula::Kind::Not: return truth_set(f.child()).complement();
        case Formula::Kind::And: return truth_set(f.left()) & truth_set(f.right());
        case Formula::Kind::Box: return boxtimes(truth_set(f.child()));
    }
    return StateSet(size());
}

bool Model::satisfies(std::size_t s, const Formula& f) const {
    if (s >= size()) throw InputError("state index out of range");
    return truth_set(f).contains(s);
}

bool Model::satisfies(const std::string& state, const Formula& f) const {
    return satisfies(states_.index_of(state), f);
}

StateSet Model::boxtimes(const StateSet& u) const {
    if (u.universe() != size()) throw InputError("boxtimes: set outside the carrier");
    StateSet r(size());
    for (std::size_t s = 0; s < size(); ++s)
        if (has_neighbourhood(s, u)) r.insert(s);
    return r;
}

bool Model::operator==(const Model& o) const {
    return states_ == o.states_ && nbhd_ == o.nbhd_ && atoms_ == o.atoms_ && vals_ == o.vals_;
}

Model make_model(std::vector<std::string> states,
                 std::map<std::string, std::vector<std::vector<std::string>>> nbhd,
                 std::map<int, std::vector<std::string>> valuation) {
    Carrier carrier(std::move(states));
    std::vector<std::vector<StateSet>> table(carrier.size());
    for (auto& [name, collection] : nbhd) {
        auto& row = table[carrier.index_of(name)];
        for (auto& members : collection) row.push_back(carrier.set_of(members));
    }
    std::map<int, StateSet> vals;
    for (auto& [atom, members] : valuation) vals.emplace(atom, carrier.set_of(members));
    return Model(std::move(carrier), std::move(table), std::move(vals));
}

// ---------------------------------------------------------------------------
// StateFunction
// ---------------------------------------------------------------------------

StateFunction::StateFunction(Carrier dom, Carrier cod, std::vector<std::size_t> map)
    : dom_(std::move(dom)), cod_(std::move(cod)), map_(std::move(map)) {
    if (map_.size() != dom_.size()) throw InputError("state function is not total");
    for (std::size_t t : map_)
        if (t >= cod_.size()) throw InputError("state function image outside the codomain");
}

StateFunction StateFunction::from_names(const Carrier& dom, const Carrier& cod,
                                        const std::map<std::string, std::string>& map) {
    std::vector<std::size_t> m(dom.size(), 0);
    std::vector<bool> defined(dom.size(), false);
    for (const auto& [a, b] : map) {
        std::size_t i = dom.index_of(a);
        m[i] = cod.index_of(b);
        defined[i] = true;
    }
    for (std::size_t i = 0; i < dom.size(); ++i)
        if (!defined[i]) throw InputError("state function undefined at '" + dom.name(i) + "'");
    return StateFunction(dom, cod, std::move(m));
}

StateFunction StateFunction::identity(const Carrier& c) {
    std::vector<std::size_t> m(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) m[i] = i;
    return StateFunction(c, c, std::move(m));
}

StateSet StateFunction::image(const StateSet& u) const {
    StateSet r(cod_.size());
    for (std::size_t i : u.members()) r.insert(map_[i]);
    return r;
}

StateSet StateFunction::preimage(const StateSet& v) const {
    StateSet r(dom_.size());
    for (std::size_t i = 0; i < dom_.size(); ++i)
        if (v.contains(map_[i])) r.insert(i);
    return r;
}

bool StateFunction::is_bijection() const {
    if (dom_.size() != cod_.size()) return false;
    std::vector<bool> hit(cod_.size(), false);
    for (std::size_t t : map_) {
        if (hit[t]) return false;
        hit[t] = true;
    }
    return true;
}

StateFunction compose(const StateFunction& g, const StateFunction& f) {
    if (f.cod() != g.dom()) throw InputError("composition: carriers do not match");
    std::vector<std::size_t> m(f.dom().size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = g.map_[f.map_[i]];
    return StateFunction(f.dom(), g.cod(), std::move(m));
}

// ---------------------------------------------------------------------------
// Relation
// ---------------------------------------------------------------------------

Relation::Relation(Carrier dom, Carrier cod, std::vector<std::pair<std::size_t, std::size_t>> pairs)
    : dom_(std::move(dom)), cod_(std::move(cod)), pairs_(std::move(pairs)) {
    for (auto& [a, b] : pairs_)
        if (a >= dom_.size() || b >= cod_.size())
            throw InputError("relation pair outside the carriers");
    std::sort(pairs_.begin(), pairs_.end());
    pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
}

Relation Relation::from_names(const Carrier& dom, const Carrier& cod,
                              const std::vector<std::pair<std::string, std::string>>& pairs) {
    std::vector<std::pair<std::size_t, std::size_t>> ps;
    ps.reserve(pairs.size());
    for (const auto& [a, b] : pairs) ps.emplace_back(dom.index_of(a), cod.index_of(b));
    return Relation(dom, cod, std::move(ps));
}

Relation Relation::identity(const Carrier& c) {
    std::vector<std::pair<std::size_t, std::size_t>> ps;
    for (std::size_t i = 0; i < c.size(); ++i) ps.emplace_back(i, i);
    return Relation(c, c, std::move(ps));
}

Relation Relation::full(const Carrier& dom, const Carrier& cod) {
    std::vector<std::pair<std::size_t, std::size_t>> ps;
    for (std::size_t i = 0; i < dom.size(); ++i)
        for (std::size_t j = 0; j < cod.size(); ++j) ps.emplace_back(i, j);
    return Relation(dom, cod, std::move(ps));
}

Relation Relation::empty(const Carrier& dom, const Carrier& cod) { return Relation(dom, cod, {}); }

bool Relation::contains(std::size_t a, std::size_t b) const {
    return std::binary_search(pairs_.begin(), pairs_.end(), std::make_pair(a, b));
}

StateSet Relation::image(const StateSet& u) const {
    StateSet r(cod_.size());
    for (auto& [a, b] : pairs_)
        if (u.contains(a)) r.insert(b);
    return r;
}

StateSet Relation::preimage(const StateSet& v) const {
    StateSet r(dom_.size());
    for (auto& [a, b] : pairs_)
        if (v.contains(b)) r.insert(a);
    return r;
}

StateSet Relation::domain_set() const { return preimage(StateSet::full_set(cod_.size())); }

StateSet Relation::range_set() const { return image(StateSet::full_set(dom_.size())); }

bool Relation::is_equivalence() const {
    if (dom_ != cod_) return false;
    for (std::size_t i = 0; i < dom_.size(); ++i)
        if (!contains(i, i)) return false;
    for (auto& [a, b] : pairs_) {
        if (!contains(b, a)) return false;
        for (auto& [c, d] : pairs_)
            if (b == c && !contains(a, d)) return false;
    }
    return true;
}

bool Relation::subset_of(const Relation& o) const {
    for (auto& [a, b] : pairs_)
        if (!o.contains(a, b)) return false;
    return true;
}

Relation graph(const StateFunction& f) {
    std::vector<std::pair<std::size_t, std::size_t>> ps;
    for (std::size_t i = 0; i < f.dom().size(); ++i) ps.emplace_back(i, f(i));
    return Relation(f.dom(), f.cod(), std::move(ps));
}

// ---------------------------------------------------------------------------
// Functor action, coherence, bounded morphisms
// ---------------------------------------------------------------------------

std::vector<StateSet> functor_image(const StateFunction& f, const std::vector<StateSet>& n) {
    std::vector<StateSet> sorted = n;
    std::sort(sorted.begin(), sorted.end());
    std::vector<StateSet> out;
    for_each_subset(f.cod().size(), [&](const StateSet& d) {
        if (std::binary_search(sorted.begin(), sorted.end(), f.preimage(d))) out.push_back(d);
    });
    return out;  // subset order is already canonical
}

bool is_coherent_pair(const Relation& r, const StateSet& u1, const StateSet& u2) {
    if (u1.universe() != r.dom().size() || u2.universe() != r.cod().size())
        throw InputError("coherence: sets outside the carriers");
    return r.image(u1).subset_of(u2) && r.preimage(u2).subset_of(u1);
}

bool is_coherent_set(const Relation& r, const StateSet& u) {
    if (r.dom() != r.cod()) throw InputError("coherent set needs a relation on one carrier");
    return is_coherent_pair(r, u, u);
}

namespace {

/// Union-find partition of the disjoint carrier S1+S2 under the equivalence
/// closure of R viewed on the sum. Returns the blocks (as pairs of component
/// sets), ordered by least member.
struct SumBlocks {
    std::vector<std::pair<StateSet, StateSet>> blocks;
};

SumBlocks sum_blocks(const Relation& r) {
    const std::size_t n1 = r.dom().size(), n2 = r.cod().size(), n = n1 + n2;
    std::vector<std::size_t> parent(n);
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (auto& [a, b] : r.pairs()) {
        std::size_t ra = find(a), rb = find(n1 + b);
        if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    }
    std::map<std::size_t, std::pair<StateSet, StateSet>> by_root;
    for (std::size_t i = 0; i < n; ++i) {
        auto [it, fresh] = by_root.try_emplace(find(i), StateSet(n1), StateSet(n2));
        if (i < n1)
            it->second.first.insert(i);
        else
            it->second.second.insert(i - n1);
    }
    SumBlocks out;
    for (auto& [root, block] : by_root) out.blocks.push_back(std::move(block));
    return out;  // map order = least-member order
}

} // namespace

std::vector<std::pair<StateSet, StateSet>> coherent_pairs(const Relation& r) {
    SumBlocks sb = sum_blocks(r);
    const std::size_t k = sb.blocks.size();
    std::vector<std::pair<StateSet, StateSet>> out;
    for_each_subset(k, [&](const StateSet& choice) {
        StateSet u1(r.dom().size()), u2(r.cod().size());
        for (std::size_t b : choice.members()) {
            u1 |= sb.blocks[b].first;
            u2 |= sb.blocks[b].second;
        }
        out.emplace_back(std::move(u1), std::move(u2));
    });
    return out;
}

std::vector<StateSet> coherent_sets(const Relation& r) {
    if (r.dom() != r.cod()) throw InputError("coherent sets need a relation on one carrier");
    // On one carrier the coherent sets are the unions of closure classes.
    std::vector<StateSet> out;
    std::vector<StateSet> classes;
    {
        const std::size_t n = r.dom().size();
        std::vector<std::size_t> parent(n);
        for (std::size_t i = 0; i < n; ++i) parent[i] = i;
        auto find = [&](std::size_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (auto& [a, b] : r.pairs()) {
            std::size_t ra = find(a), rb = find(b);
            if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
        }
        std::map<std::size_t, StateSet> by_root;
        for (std::size_t i = 0; i < n; ++i)
            by_root.try_emplace(find(i), StateSet(n)).first->second.insert(i);
        for (auto& [root, cls] : by_root) classes.push_back(std::move(cls));
    }
    for_each_subset(classes.size(), [&](const StateSet& choice) {
        StateSet u(r.dom().size());
        for (std::size_t b : choice.members()) u |= classes[b];
        out.push_back(std::move(u));
    });
    return out;
}

std::vector<int> joint_atom_support(const Model& m1, const Model& m2) {
    std::vector<int> atoms = m1.atom_support();
    atoms.insert(atoms.end(), m2.atom_support().begin(), m2.atom_support().end());
    std::sort(atoms.begin(), atoms.end());
    atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
    return atoms;
}

MorphismReport check_bounded_morphism(const StateFunction& f, const Model& m1, const Model& m2,
                                      const std::vector<int>& atoms) {
    if (f.dom() != m1.states() || f.cod() != m2.states())
        throw InputError("bounded-morphism check: carriers do not match");
    MorphismReport report;
    for (std::size_t s = 0; s < m1.size() && report.ok; ++s) {
        for (int a : atoms) {
            if (m1.valuation(a).contains(s) != m2.valuation(a).contains(f(s))) {
                report.ok = false;
                report.violation = MorphismViolation{s, std::nullopt, a};
                return report;
            }
        }
        for_each_subset(m2.size(), [&](const StateSet& x) {
            if (!report.ok) return;
            if (m1.has_neighbourhood(s, f.preimage(x)) != m2.has_neighbourhood(f(s), x)) {
                report.ok = false;
                report.violation = MorphismViolation{s, x, std::nullopt};
            }
        });
    }
    return report;
}

MorphismReport check_bounded_morphism(const StateFunction& f, const Model& m1, const Model& m2) {
    return check_bounded_morphism(f, m1, m2, joint_atom_support(m1, m2));
}

bool is_bounded_morphism(const StateFunction& f, const Model& m1, const Model& m2,
                         const std::vector<int>& atoms) {
    return check_bounded_morphism(f, m1, m2, atoms).ok;
}

bool is_bounded_morphism(const StateFunction& f, const Model& m1, const Model& m2) {
    return check_bounded_morphism(f, m1, m2).ok;
}

} // namespace nbhd
