#include "nbhd/fol.hpp"

#include <algorithm>
#include <stdexcept>

#include "nbhd/error.hpp"

namespace nbhd {

struct FolFormula::Node {
    Kind kind;
    std::string v1, v2;
    int atom = -1;
    std::shared_ptr<const Node> a, b;
};

FolFormula FolFormula::eq_state(const std::string& x, const std::string& y) {
    return FolFormula(std::make_shared<const Node>(Node{Kind::EqState, x, y, -1, nullptr, nullptr}));
}
FolFormula FolFormula::eq_nbhd(const std::string& u, const std::string& v) {
    return FolFormula(std::make_shared<const Node>(Node{Kind::EqNbhd, u, v, -1, nullptr, nullptr}));
}
FolFormula FolFormula::pred(int atom, const std::string& x) {
    if (atom < 0) throw InputError("atom index must be nonnegative");
    return FolFormula(std::make_shared<const Node>(Node{Kind::Pred, x, "", atom, nullptr, nullptr}));
}
FolFormula FolFormula::rel_n(const std::string& x, const std::string& u) {
    return FolFormula(std::make_shared<const Node>(Node{Kind::RelN, x, u, -1, nullptr, nullptr}));
}
FolFormula FolFormula::rel_e(const std::string& u, const std::string& x) {
    return FolFormula(std::make_shared<const Node>(Node{Kind::RelE, u, x, -1, nullptr, nullptr}));
}
FolFormula FolFormula::negation(const FolFormula& f) {
    return FolFormula(std::make_shared<const Node>(Node{Kind::Not, "", "", -1, f.node_, nullptr}));
}
FolFormula FolFormula::conjunction(const FolFormula& a, const FolFormula& b) {
    return FolFormula(std::make_shared<const Node>(Node{Kind::And, "", "", -1, a.node_, b.node_}));
}
FolFormula FolFormula::exists_state(const std::string& x, const FolFormula& body) {
    return FolFormula(
        std::make_shared<const Node>(Node{Kind::ExistsState, x, "", -1, body.node_, nullptr}));
}
FolFormula FolFormula::exists_nbhd(const std::string& u, const FolFormula& body) {
    return FolFormula(
        std::make_shared<const Node>(Node{Kind::ExistsNbhd, u, "", -1, body.node_, nullptr}));
}

FolFormula::Kind FolFormula::kind() const { return node_->kind; }
const std::string& FolFormula::var1() const { return node_->v1; }
const std::string& FolFormula::var2() const { return node_->v2; }
int FolFormula::atom() const { return node_->atom; }
FolFormula FolFormula::child() const { return FolFormula(node_->a); }
FolFormula FolFormula::left() const { return FolFormula(node_->a); }
FolFormula FolFormula::right() const { return FolFormula(node_->b); }

bool FolFormula::operator==(const FolFormula& o) const {
    if (node_ == o.node_) return true;
    if (node_->kind != o.node_->kind || node_->v1 != o.node_->v1 || node_->v2 != o.node_->v2 ||
        node_->atom != o.node_->atom)
        return false;
    const bool la = node_->a != nullptr, lb = o.node_->a != nullptr;
    const bool ra = node_->b != nullptr, rb = o.node_->b != nullptr;
    if (la != lb || ra != rb) return false;
    if (la && !(child() == o.child())) return false;
    if (ra && !(right() == o.right())) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Printer
// ---------------------------------------------------------------------------

namespace {

/// Recognises Not(Exists(v, Not(body))).
std::optional<std::pair<std::string, FolFormula>> match_forall(const FolFormula& f) {
    if (f.kind() != FolFormula::Kind::Not) return std::nullopt;
    FolFormula inner = f.child();
    if (inner.kind() != FolFormula::Kind::ExistsState &&
        inner.kind() != FolFormula::Kind::ExistsNbhd)
        return std::nullopt;
    FolFormula body = inner.child();
    if (body.kind() != FolFormula::Kind::Not) return std::nullopt;
    return std::make_pair(inner.var1(), body.child());
}

/// Recognises the builder's iff shape And(Implies(a,b), Implies(b,a)).
std::optional<std::pair<FolFormula, FolFormula>> match_iff(const FolFormula& f) {
    if (f.kind() != FolFormula::Kind::And) return std::nullopt;
    auto unimply = [](const FolFormula& g) -> std::optional<std::pair<FolFormula, FolFormula>> {
        if (g.kind() != FolFormula::Kind::Not) return std::nullopt;
        FolFormula conj = g.child();
        if (conj.kind() != FolFormula::Kind::And) return std::nullopt;
        FolFormula rhs = conj.right();
        if (rhs.kind() != FolFormula::Kind::Not) return std::nullopt;
        return std::make_pair(conj.left(), rhs.child());
    };
    auto fwd = unimply(f.left());
    auto bwd = unimply(f.right());
    if (!fwd || !bwd) return std::nullopt;
    if (fwd->first == bwd->second && fwd->second == bwd->first) return fwd;
    return std::nullopt;
}

} // namespace

std::string render(const FolFormula& f) {
    if (auto fa = match_forall(f)) return "All " + fa->first + " (" + render(fa->second) + ")";
    if (auto eq = match_iff(f)) return "(" + render(eq->first) + " <-> " + render(eq->second) + ")";
    switch (f.kind()) {
        case FolFormula::Kind::EqState:
        case FolFormula::Kind::EqNbhd: return f.var1() + " = " + f.var2();
        case FolFormula::Kind::Pred: return "P" + std::to_string(f.atom()) + " " + f.var1();
        case FolFormula::Kind::RelN: return f.var1() + " N " + f.var2();
        case FolFormula::Kind::RelE: return f.var1() + " E " + f.var2();
        case FolFormula::Kind::Not: return "~(" + render(f.child()) + ")";
        case FolFormula::Kind::And: return "(" + render(f.left()) + " & " + render(f.right()) + ")";
        case FolFormula::Kind::ExistsState:
        case FolFormula::Kind::ExistsNbhd:
            return "Ex " + f.var1() + " (" + render(f.child()) + ")";
    }
    return "";
}

// ---------------------------------------------------------------------------
// Structures and translation
// ---------------------------------------------------------------------------

bool TwoSortedStructure::has_n(std::size_t s, std::size_t u) const {
    return std::binary_search(rel_n.begin(), rel_n.end(), std::make_pair(s, u));
}

bool TwoSortedStructure::has_e(std::size_t u, std::size_t s) const {
    return std::binary_search(rel_e.begin(), rel_e.end(), std::make_pair(u, s));
}

StateSet TwoSortedStructure::extent(std::size_t u) const {
    StateSet out(ds.size());
    for (auto& [n, s] : rel_e)
        if (n == u) out.insert(s);
    return out;
}

TwoSortedStructure fotrans(const Model& m) {
    TwoSortedStructure f;
    f.ds = m.states();

    std::vector<StateSet> sets;
    for (std::size_t s = 0; s < m.size(); ++s)
        for (const auto& u : m.neighbourhoods(s)) sets.push_back(u);
    std::sort(sets.begin(), sets.end());
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());

    std::vector<std::string> dn_names;
    dn_names.reserve(sets.size());
    for (std::size_t i = 0; i < sets.size(); ++i) dn_names.push_back("n" + std::to_string(i));
    f.dn = Carrier(std::move(dn_names));

    for (int a : m.atom_support()) f.preds.emplace(a, m.valuation(a));

    for (std::size_t s = 0; s < m.size(); ++s)
        for (const auto& u : m.neighbourhoods(s)) {
            const auto it = std::lower_bound(sets.begin(), sets.end(), u);
            f.rel_n.emplace_back(s, static_cast<std::size_t>(it - sets.begin()));
        }
    for (std::size_t i = 0; i < sets.size(); ++i)
        for (std::size_t s : sets[i].members()) f.rel_e.emplace_back(i, s);
    std::sort(f.rel_n.begin(), f.rel_n.end());
    std::sort(f.rel_e.begin(), f.rel_e.end());
    return f;
}

namespace {

FolFormula translate(const Formula& f, const std::string& x, int& counter) {
    switch (f.kind()) {
        case Formula::Kind::Bottom:
            return FolFormula::negation(FolFormula::eq_state(x, x));
        case Formula::Kind::Atom: return FolFormula::pred(f.atom_index(), x);
        case Formula::Kind::Not: return FolFormula::negation(translate(f.child(), x, counter));
        case Formula::Kind::And:
            return FolFormula::conjunction(translate(f.left(), x, counter),
                                           translate(f.right(), x, counter));
        case Formula::Kind::Box: {
            const int k = ++counter;
            const std::string u = "u" + std::to_string(k);
            const std::string y = "y" + std::to_string(k);
            FolFormula body = translate(f.child(), y, counter);
            return FolFormula::exists_nbhd(
                u, FolFormula::conjunction(
                       FolFormula::rel_n(x, u),
                       FolFormula::forall_state(
                           y, FolFormula::iff(FolFormula::rel_e(u, y), body))));
        }
    }
    throw std::logic_error("unreachable");
}

} // namespace

FolFormula st(const Formula& f, const std::string& x) {
    int counter = 0;
    return translate(f, x, counter);
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace {

std::size_t lookup(const std::map<std::string, std::size_t>& env, const std::string& var,
                   const char* sort) {
    auto it = env.find(var);
    if (it == env.end())
        throw InputError(std::string("free ") + sort + " variable '" + var + "' not covered");
    return it->second;
}

} // namespace

bool fol_eval(const TwoSortedStructure& f, const FolFormula& a, const Assignment& env) {
    switch (a.kind()) {
        case FolFormula::Kind::EqState:
            return lookup(env.state_vars, a.var1(), "state") ==
                   lookup(env.state_vars, a.var2(), "state");
        case FolFormula::Kind::EqNbhd:
            return lookup(env.nbhd_vars, a.var1(), "neighbourhood") ==
                   lookup(env.nbhd_vars, a.var2(), "neighbourhood");
        case FolFormula::Kind::Pred: {
            auto it = f.preds.find(a.atom());
            if (it == f.preds.end()) return false;
            return it->second.contains(lookup(env.state_vars, a.var1(), "state"));
        }
        case FolFormula::Kind::RelN:
            return f.has_n(lookup(env.state_vars, a.var1(), "state"),
                           lookup(env.nbhd_vars, a.var2(), "neighbourhood"));
        case FolFormula::Kind::RelE:
            return f.has_e(lookup(env.nbhd_vars, a.var1(), "neighbourhood"),
                           lookup(env.state_vars, a.var2(), "state"));
        case FolFormula::Kind::Not: return !fol_eval(f, a.child(), env);
        case FolFormula::Kind::And:
            return fol_eval(f, a.left(), env) && fol_eval(f, a.right(), env);
        case FolFormula::Kind::ExistsState: {
            Assignment e = env;
            for (std::size_t s = 0; s < f.ds.size(); ++s) {
                e.state_vars[a.var1()] = s;
                if (fol_eval(f, a.child(), e)) return true;
            }
            return false;
        }
        case FolFormula::Kind::ExistsNbhd: {
            Assignment e = env;
            for (std::size_t u = 0; u < f.dn.size(); ++u) {
                e.nbhd_vars[a.var1()] = u;
                if (fol_eval(f, a.child(), e)) return true;
            }
            return false;
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// NAX and reconstruction
// ---------------------------------------------------------------------------

NaxReport nax_check(const TwoSortedStructure& f) {
    NaxReport report;
    for (std::size_t u = 0; u < f.dn.size(); ++u) {
        bool witnessed = false;
        for (std::size_t s = 0; s < f.ds.size() && !witnessed; ++s) witnessed = f.has_n(s, u);
        if (!witnessed) {
            report.ok = false;
            report.a1_witness = f.dn.name(u);
            return report;
        }
    }
    for (std::size_t u = 0; u < f.dn.size(); ++u)
        for (std::size_t v = u + 1; v < f.dn.size(); ++v)
            if (f.extent(u) == f.extent(v)) {
                report.ok = false;
                report.a2_witness = std::make_pair(f.dn.name(u), f.dn.name(v));
                return report;
            }
    return report;
}

NbmResult nbm(const TwoSortedStructure& f) {
    NaxReport nax = nax_check(f);
    if (!nax.ok) {
        std::string msg = "nbm: structure violates NAX";
        if (nax.a1_witness) msg += " (A1 at '" + *nax.a1_witness + "')";
        if (nax.a2_witness)
            msg += " (A2 at '" + nax.a2_witness->first + "','" + nax.a2_witness->second + "')";
        throw PropertyError("nax-violation", msg);
    }

    std::vector<std::vector<StateSet>> table(f.ds.size());
    for (auto& [s, u] : f.rel_n) table[s].push_back(f.extent(u));
    std::map<int, StateSet> vals(f.preds.begin(), f.preds.end());
    NbmResult result{Model(f.ds, std::move(table), std::move(vals)), {}, {}};

    const TwoSortedStructure round = fotrans(result.model);
    for (std::size_t s = 0; s < f.ds.size(); ++s)
        result.state_iso.emplace(f.ds.name(s), round.ds.name(s));
    for (std::size_t u = 0; u < f.dn.size(); ++u) {
        const StateSet ext = f.extent(u);
        std::size_t target = round.dn.size();
        for (std::size_t v = 0; v < round.dn.size() && target == round.dn.size(); ++v)
            if (round.extent(v) == ext) target = v;
        if (target == round.dn.size())
            throw std::logic_error("nbm: neighbourhood lost in the round trip");
        result.nbhd_iso.emplace(f.dn.name(u), round.dn.name(target));
    }
    if (!structures_isomorphic(f, round, result.state_iso, result.nbhd_iso))
        throw std::logic_error("nbm: computed maps are not an isomorphism");
    return result;
}

bool structures_isomorphic(const TwoSortedStructure& a, const TwoSortedStructure& b,
                           const std::map<std::string, std::string>& state_iso,
                           const std::map<std::string, std::string>& nbhd_iso) {
    if (a.ds.size() != b.ds.size() || a.dn.size() != b.dn.size()) return false;
    if (state_iso.size() != a.ds.size() || nbhd_iso.size() != a.dn.size()) return false;

    std::vector<std::size_t> smap(a.ds.size()), nmap(a.dn.size());
    std::vector<bool> shit(b.ds.size(), false), nhit(b.dn.size(), false);
    try {
        for (auto& [from, to] : state_iso) {
            std::size_t i = a.ds.index_of(from), j = b.ds.index_of(to);
            if (shit[j]) return false;
            shit[j] = true;
            smap[i] = j;
        }
        for (auto& [from, to] : nbhd_iso) {
            std::size_t i = a.dn.index_of(from), j = b.dn.index_of(to);
            if (nhit[j]) return false;
            nhit[j] = true;
            nmap[i] = j;
        }
    } catch (const InputError&) {
        return false;
    }

    // Predicates over the union of both structures' atoms.
    std::vector<int> atoms;
    for (auto& [atom, set] : a.preds) atoms.push_back(atom);
    for (auto& [atom, set] : b.preds) atoms.push_back(atom);
    std::sort(atoms.begin(), atoms.end());
    atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
    auto pred_of = [](const TwoSortedStructure& f, int atom, std::size_t s) {
        auto it = f.preds.find(atom);
        return it != f.preds.end() && it->second.contains(s);
    };
    for (int atom : atoms)
        for (std::size_t s = 0; s < a.ds.size(); ++s)
            if (pred_of(a, atom, s) != pred_of(b, atom, smap[s])) return false;

    for (std::size_t s = 0; s < a.ds.size(); ++s)
        for (std::size_t u = 0; u < a.dn.size(); ++u)
            if (a.has_n(s, u) != b.has_n(smap[s], nmap[u])) return false;
    for (std::size_t u = 0; u < a.dn.size(); ++u)
        for (std::size_t s = 0; s < a.ds.size(); ++s)
            if (a.has_e(u, s) != b.has_e(nmap[u], smap[s])) return false;
    return true;
}

} // namespace nbhd
