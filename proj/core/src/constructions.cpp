#include "nbhd/constructions.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "nbhd/equivalence.hpp"
#include "nbhd/error.hpp"

namespace nbhd {

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void merge(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

std::vector<StateSet> classes_of(UnionFind& uf, std::size_t n) {
    std::map<std::size_t, StateSet> by_root;
    for (std::size_t i = 0; i < n; ++i)
        by_root.try_emplace(uf.find(i), StateSet(n)).first->second.insert(i);
    std::vector<StateSet> out;
    for (auto& [root, cls] : by_root) out.push_back(std::move(cls));
    return out;  // least-member order
}

} // namespace

// ---------------------------------------------------------------------------
// Partitions and relation closures
// ---------------------------------------------------------------------------

Partition Partition::from_equivalence(const Relation& r) {
    if (!r.is_equivalence()) throw InputError("not an equivalence relation");
    UnionFind uf(r.dom().size());
    for (auto& [a, b] : r.pairs()) uf.merge(a, b);
    Partition p;
    p.carrier = r.dom();
    p.blocks = classes_of(uf, r.dom().size());
    p.block_of.assign(r.dom().size(), 0);
    for (std::size_t b = 0; b < p.blocks.size(); ++b)
        for (std::size_t s : p.blocks[b].members()) p.block_of[s] = b;
    return p;
}

Relation Partition::as_relation() const {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (const auto& block : blocks) {
        auto ms = block.members();
        for (std::size_t a : ms)
            for (std::size_t b : ms) pairs.emplace_back(a, b);
    }
    return Relation(carrier, carrier, std::move(pairs));
}

Relation eq_closure(const Relation& r) {
    if (r.dom() != r.cod()) throw InputError("equivalence closure needs a relation on one carrier");
    UnionFind uf(r.dom().size());
    for (auto& [a, b] : r.pairs()) uf.merge(a, b);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (const auto& cls : classes_of(uf, r.dom().size())) {
        auto ms = cls.members();
        for (std::size_t a : ms)
            for (std::size_t b : ms) pairs.emplace_back(a, b);
    }
    return Relation(r.dom(), r.dom(), std::move(pairs));
}

Relation kernel(const StateFunction& f) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < f.dom().size(); ++a)
        for (std::size_t b = 0; b < f.dom().size(); ++b)
            if (f(a) == f(b)) pairs.emplace_back(a, b);
    return Relation(f.dom(), f.dom(), std::move(pairs));
}

Relation pullback(const StateFunction& f1, const StateFunction& f2) {
    if (f1.cod() != f2.cod()) throw InputError("pullback: codomains differ");
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < f1.dom().size(); ++a)
        for (std::size_t b = 0; b < f2.dom().size(); ++b)
            if (f1(a) == f2(b)) pairs.emplace_back(a, b);
    return Relation(f1.dom(), f2.dom(), std::move(pairs));
}

// ---------------------------------------------------------------------------
// Disjoint union
// ---------------------------------------------------------------------------

DisjointUnion disjoint_union(const Model& m1, const Model& m2) {
    const std::size_t n1 = m1.size(), n2 = m2.size(), n = n1 + n2;
    std::vector<std::string> names;
    names.reserve(n);
    for (const auto& s : m1.states().names()) names.push_back("L:" + s);
    for (const auto& s : m2.states().names()) names.push_back("R:" + s);
    Carrier carrier(std::move(names));

    auto embed_left = [&](const StateSet& u) {
        StateSet x(n);
        for (std::size_t i : u.members()) x.insert(i);
        return x;
    };
    auto embed_right = [&](const StateSet& u) {
        StateSet x(n);
        for (std::size_t i : u.members()) x.insert(n1 + i);
        return x;
    };

    // X is a neighbourhood of an embedded state iff its component trace is;
    // materialise by extending every component neighbourhood with all
    // subsets of the other side.
    std::vector<std::vector<StateSet>> table(n);
    for (std::size_t s = 0; s < n1; ++s)
        for (const auto& u : m1.neighbourhoods(s)) {
            StateSet base = embed_left(u);
            for_each_subset(n2, [&](const StateSet& ext) {
                table[s].push_back(base | embed_right(ext));
            });
        }
    for (std::size_t s = 0; s < n2; ++s)
        for (const auto& u : m2.neighbourhoods(s)) {
            StateSet base = embed_right(u);
            for_each_subset(n1, [&](const StateSet& ext) {
                table[n1 + s].push_back(base | embed_left(ext));
            });
        }

    std::map<int, StateSet> vals;
    for (int a : joint_atom_support(m1, m2))
        vals.emplace(a, embed_left(m1.valuation(a)) | embed_right(m2.valuation(a)));

    DisjointUnion du{Model(carrier, std::move(table), std::move(vals)), StateFunction(), StateFunction()};

    std::vector<std::size_t> lmap(n1), rmap(n2);
    for (std::size_t i = 0; i < n1; ++i) lmap[i] = i;
    for (std::size_t i = 0; i < n2; ++i) rmap[i] = n1 + i;
    du.inl = StateFunction(m1.states(), carrier, std::move(lmap));
    du.inr = StateFunction(m2.states(), carrier, std::move(rmap));

    if (!is_bounded_morphism(du.inl, m1, du.model) || !is_bounded_morphism(du.inr, m2, du.model))
        throw std::logic_error("disjoint union: inclusion failed the bounded-morphism check");
    return du;
}

StateFunction copair(const DisjointUnion& du, const StateFunction& f1, const StateFunction& f2) {
    if (f1.cod() != f2.cod()) throw InputError("copair: codomains differ");
    const std::size_t n1 = f1.dom().size(), n2 = f2.dom().size();
    if (du.model.size() != n1 + n2) throw InputError("copair: carriers do not match the union");
    std::vector<std::size_t> m(n1 + n2);
    for (std::size_t i = 0; i < n1; ++i) m[i] = f1(i);
    for (std::size_t i = 0; i < n2; ++i) m[n1 + i] = f2(i);
    return StateFunction(du.model.states(), f1.cod(), std::move(m));
}

// ---------------------------------------------------------------------------
// Quotient
// ---------------------------------------------------------------------------

Quotient quotient(const Model& m, const Relation& r) {
    if (r.dom() != m.states() || r.cod() != m.states())
        throw InputError("quotient: relation does not live on the model's carrier");
    CheckReport report = is_congruence(r, m);
    if (!report.ok) {
        const Violation& v = report.violations.front();
        std::string msg = "quotient: relation is not a congruence; states '" +
                          m.states().name(v.pair.first) + "' and '" +
                          m.states().name(v.pair.second) + "' disagree";
        if (v.kind == Violation::Kind::CoherentSet) {
            msg += " on the coherent set {";
            bool first = true;
            for (const auto& name : m.states().names_of(v.set_a)) {
                if (!first) msg += ",";
                msg += name;
                first = false;
            }
            msg += "}";
        } else if (v.kind == Violation::Kind::AtomMismatch) {
            msg += " on atom p" + std::to_string(v.atom);
        }
        throw PropertyError("not-a-congruence", msg);
    }

    Partition part = Partition::from_equivalence(r);
    const std::size_t k = part.blocks.size();
    std::vector<std::string> names;
    names.reserve(k);
    for (const auto& b : part.blocks) names.push_back(m.states().name(b.least()));
    Carrier carrier(std::move(names));

    StateFunction eps(m.states(), carrier, std::vector<std::size_t>(part.block_of));

    std::vector<std::vector<StateSet>> table(k);
    for (std::size_t b = 0; b < k; ++b) {
        const std::size_t rep = part.blocks[b].least();
        for_each_subset(k, [&](const StateSet& y) {
            if (m.has_neighbourhood(rep, eps.preimage(y))) table[b].push_back(y);
        });
    }

    std::map<int, StateSet> vals;
    for (int a : m.atom_support()) vals.emplace(a, eps.image(m.valuation(a)));

    Quotient q{Model(carrier, std::move(table), std::move(vals)), eps};
    if (!is_bounded_morphism(q.map, m, q.model))
        throw std::logic_error("quotient map failed the bounded-morphism check");
    return q;
}

// ---------------------------------------------------------------------------
// Pushout
// ---------------------------------------------------------------------------

Pushout pushout(const Relation& r, const Carrier& x1, const Carrier& x2) {
    if (r.dom() != x1 || r.cod() != x2) throw InputError("pushout: carriers do not match");
    const std::size_t n1 = x1.size(), n = n1 + x2.size();
    UnionFind uf(n);
    for (auto& [a, b] : r.pairs()) uf.merge(a, n1 + b);
    std::vector<StateSet> blocks = classes_of(uf, n);

    std::vector<std::string> names;
    names.reserve(blocks.size());
    for (const auto& b : blocks) {
        std::size_t least = b.least();
        names.push_back(least < n1 ? "L:" + x1.name(least) : "R:" + x2.name(least - n1));
    }
    Carrier carrier(std::move(names));

    std::vector<std::size_t> block_of(n);
    for (std::size_t b = 0; b < blocks.size(); ++b)
        for (std::size_t i : blocks[b].members()) block_of[i] = b;

    std::vector<std::size_t> m1(n1), m2(x2.size());
    for (std::size_t i = 0; i < n1; ++i) m1[i] = block_of[i];
    for (std::size_t i = 0; i < x2.size(); ++i) m2[i] = block_of[n1 + i];
    return Pushout{carrier, StateFunction(x1, carrier, std::move(m1)),
                   StateFunction(x2, carrier, std::move(m2))};
}

std::optional<StateFunction> pushout_mediator(const Pushout& p, const Relation& r,
                                              const StateFunction& q1, const StateFunction& q2) {
    if (q1.cod() != q2.cod()) throw InputError("pushout mediator: codomains differ");
    if (q1.dom() != r.dom() || q2.dom() != r.cod())
        throw InputError("pushout mediator: domains do not match the relation");
    for (auto& [a, b] : r.pairs())
        if (q1(a) != q2(b)) return std::nullopt;  // square does not commute

    // p1 and p2 are jointly surjective, so the mediator is forced; it is
    // well defined exactly because the square commutes.
    const std::size_t k = p.carrier.size();
    std::vector<std::size_t> m(k);
    std::vector<bool> defined(k, false);
    auto assign = [&](std::size_t block, std::size_t value) {
        if (defined[block] && m[block] != value) return false;
        m[block] = value;
        defined[block] = true;
        return true;
    };
    for (std::size_t i = 0; i < r.dom().size(); ++i)
        if (!assign(p.p1(i), q1(i))) return std::nullopt;
    for (std::size_t i = 0; i < r.cod().size(); ++i)
        if (!assign(p.p2(i), q2(i))) return std::nullopt;
    return StateFunction(p.carrier, q1.cod(), std::move(m));
}

RelationSpan relation_span(const Relation& r) {
    std::vector<std::string> names;
    std::vector<std::size_t> m1, m2;
    for (auto& [a, b] : r.pairs()) {
        names.push_back("(" + r.dom().name(a) + "," + r.cod().name(b) + ")");
        m1.push_back(a);
        m2.push_back(b);
    }
    Carrier carrier(std::move(names));
    return RelationSpan{carrier, StateFunction(carrier, r.dom(), std::move(m1)),
                        StateFunction(carrier, r.cod(), std::move(m2))};
}

} // namespace nbhd
