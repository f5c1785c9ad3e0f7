#include "nbhd/equivalence.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <future>
#include <map>
#include <stdexcept>

#include "nbhd/error.hpp"
#include "nbhd/runtime.hpp"

namespace nbhd {

namespace {
std::atomic<int> g_jobs{1};
} // namespace

void set_jobs(int j) { g_jobs.store(j < 1 ? 1 : j); }
int jobs() { return g_jobs.load(); }

namespace {

/// Evaluates pred over [0, n) with the configured worker count; the result
/// vector is indexed, so parallelism cannot change it.
std::vector<char> parallel_map(std::size_t n, const std::function<bool(std::size_t)>& pred) {
    std::vector<char> out(n, 0);
    const int workers = jobs();
    if (workers <= 1 || n < 16) {
        for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<char>(pred(i));
        return out;
    }
    const std::size_t chunk = (n + workers - 1) / workers;
    std::vector<std::future<void>> futures;
    for (int w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        futures.push_back(std::async(std::launch::async, [&, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i) out[i] = static_cast<char>(pred(i));
        }));
    }
    for (auto& f : futures) f.get();
    return out;
}

bool atoms_agree(const Model& m1, const Model& m2, const std::vector<int>& atoms, std::size_t s1,
                 std::size_t s2, Violation* out) {
    for (int a : atoms) {
        if (m1.valuation(a).contains(s1) != m2.valuation(a).contains(s2)) {
            if (out) *out = Violation{Violation::Kind::AtomMismatch, {s1, s2}, StateSet(m1.size()),
                                      StateSet(m2.size()), a};
            return false;
        }
    }
    return true;
}

/// First witness that condition (1) fails at state s: two subsets with the
/// same trace on 'window' of which exactly one is a neighbourhood of s.
std::optional<std::pair<StateSet, StateSet>> base_condition_witness(const Model& m, std::size_t s,
                                                                    const StateSet& window) {
    std::map<StateSet, std::pair<std::optional<StateSet>, std::optional<StateSet>>> traces;
    std::optional<std::pair<StateSet, StateSet>> witness;
    for_each_subset(m.size(), [&](const StateSet& u) {
        if (witness) return;
        auto& [in_nu, out_nu] = traces[u & window];
        if (m.has_neighbourhood(s, u)) {
            if (!in_nu) in_nu = u;
        } else {
            if (!out_nu) out_nu = u;
        }
        if (in_nu && out_nu) witness = std::make_pair(*in_nu, *out_nu);
    });
    return witness;
}

bool coherent_pairs_agree(const Model& m1, const Model& m2, std::size_t s1, std::size_t s2,
                          const std::vector<std::pair<StateSet, StateSet>>& cps, Violation* out) {
    for (const auto& [u1, u2] : cps) {
        if (m1.has_neighbourhood(s1, u1) != m2.has_neighbourhood(s2, u2)) {
            if (out) *out = Violation{Violation::Kind::CoherentPair, {s1, s2}, u1, u2, -1};
            return false;
        }
    }
    return true;
}

} // namespace

// ---------------------------------------------------------------------------
// Checkers
// ---------------------------------------------------------------------------

CheckReport is_bisimulation(const Relation& r, const Model& m1, const Model& m2) {
    if (r.dom() != m1.states() || r.cod() != m2.states())
        throw InputError("bisimulation check: relation does not match the models");
    CheckReport report;
    report.kind = "bisimulation";
    const auto atoms = joint_atom_support(m1, m2);
    const auto cps = coherent_pairs(r);
    const StateSet dom = r.domain_set(), rng = r.range_set();

    std::map<std::size_t, std::optional<std::pair<StateSet, StateSet>>> base1, base2;
    for (auto& [s1, s2] : r.pairs()) {
        Violation v;
        if (!atoms_agree(m1, m2, atoms, s1, s2, &v)) {
            report.ok = false;
            report.violations.push_back(v);
            continue;
        }
        auto it1 = base1.find(s1);
        if (it1 == base1.end()) it1 = base1.emplace(s1, base_condition_witness(m1, s1, dom)).first;
        if (it1->second) {
            report.ok = false;
            report.violations.push_back(Violation{Violation::Kind::BaseLeft, {s1, s2},
                                                  it1->second->first, it1->second->second, -1});
            continue;
        }
        auto it2 = base2.find(s2);
        if (it2 == base2.end()) it2 = base2.emplace(s2, base_condition_witness(m2, s2, rng)).first;
        if (it2->second) {
            report.ok = false;
            report.violations.push_back(Violation{Violation::Kind::BaseRight, {s1, s2},
                                                  it2->second->first, it2->second->second, -1});
            continue;
        }
        if (!coherent_pairs_agree(m1, m2, s1, s2, cps, &v)) {
            report.ok = false;
            report.violations.push_back(v);
        }
    }
    return report;
}

CheckReport is_precocongruence(const Relation& r, const Model& m1, const Model& m2) {
    if (r.dom() != m1.states() || r.cod() != m2.states())
        throw InputError("precocongruence check: relation does not match the models");
    CheckReport report;
    report.kind = "precocongruence";
    const auto atoms = joint_atom_support(m1, m2);
    const auto cps = coherent_pairs(r);
    for (auto& [s1, s2] : r.pairs()) {
        Violation v;
        if (!atoms_agree(m1, m2, atoms, s1, s2, &v) ||
            !coherent_pairs_agree(m1, m2, s1, s2, cps, &v)) {
            report.ok = false;
            report.violations.push_back(v);
        }
    }
    return report;
}

CheckReport is_congruence(const Relation& r, const Model& m) {
    if (r.dom() != m.states() || r.cod() != m.states())
        throw InputError("congruence check: relation does not live on the model");
    if (!r.is_equivalence()) throw InputError("congruence check: not an equivalence relation");
    CheckReport report;
    report.kind = "congruence";
    const auto& atoms = m.atom_support();
    const auto sets = coherent_sets(r);
    for (auto& [s1, s2] : r.pairs()) {
        if (s1 >= s2) continue;  // reflexive and mirrored pairs are vacuous
        Violation v;
        if (!atoms_agree(m, m, atoms, s1, s2, &v)) {
            report.ok = false;
            report.violations.push_back(v);
            continue;
        }
        for (const auto& u : sets) {
            if (m.has_neighbourhood(s1, u) != m.has_neighbourhood(s2, u)) {
                report.ok = false;
                report.violations.push_back(
                    Violation{Violation::Kind::CoherentSet, {s1, s2}, u, u, -1});
                break;
            }
        }
    }
    return report;
}

CheckReport is_precongruence(const Relation& r, const Model& m) {
    CheckReport report = is_congruence(eq_closure(r), m);
    report.kind = "precongruence";
    return report;
}

// ---------------------------------------------------------------------------
// Greatest fixpoints
// ---------------------------------------------------------------------------

namespace {

/// Shared driver: repeatedly drop the pairs that fail 'condition' with
/// respect to the current relation. Both per-pair conditions are monotone
/// in the relation (shrinking R only strengthens them), so this reaches the
/// greatest fixpoint, which equals the union of all post-fixpoints.
template <class Condition>
Relation gfp(const Model& m1, const Model& m2, Condition condition,
             std::vector<Violation>* dropped) {
    Relation r = Relation::full(m1.states(), m2.states());
    while (true) {
        const auto cps = coherent_pairs(r);
        const StateSet dom = r.domain_set(), rng = r.range_set();
        const auto& pairs = r.pairs();
        std::vector<Violation> round_violations(pairs.size());
        auto keep = parallel_map(pairs.size(), [&](std::size_t i) {
            return condition(pairs[i].first, pairs[i].second, cps, dom, rng,
                             &round_violations[i]);
        });
        std::vector<std::pair<std::size_t, std::size_t>> next;
        next.reserve(pairs.size());
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            if (keep[i])
                next.push_back(pairs[i]);
            else if (dropped)
                dropped->push_back(round_violations[i]);
        }
        if (next.size() == pairs.size()) return r;
        r = Relation(m1.states(), m2.states(), std::move(next));
    }
}

} // namespace

Relation largest_bisimulation(const Model& m1, const Model& m2) {
    const auto atoms = joint_atom_support(m1, m2);
    return gfp(
        m1, m2,
        [&](std::size_t s1, std::size_t s2, const std::vector<std::pair<StateSet, StateSet>>& cps,
            const StateSet& dom, const StateSet& rng, Violation* v) {
            if (!atoms_agree(m1, m2, atoms, s1, s2, v)) return false;
            if (auto w = base_condition_witness(m1, s1, dom)) {
                if (v) *v = Violation{Violation::Kind::BaseLeft, {s1, s2}, w->first, w->second, -1};
                return false;
            }
            if (auto w = base_condition_witness(m2, s2, rng)) {
                if (v) *v = Violation{Violation::Kind::BaseRight, {s1, s2}, w->first, w->second, -1};
                return false;
            }
            return coherent_pairs_agree(m1, m2, s1, s2, cps, v);
        },
        nullptr);
}

Relation largest_precocongruence(const Model& m1, const Model& m2) {
    const auto atoms = joint_atom_support(m1, m2);
    return gfp(
        m1, m2,
        [&](std::size_t s1, std::size_t s2, const std::vector<std::pair<StateSet, StateSet>>& cps,
            const StateSet&, const StateSet&, Violation* v) {
            return atoms_agree(m1, m2, atoms, s1, s2, v) &&
                   coherent_pairs_agree(m1, m2, s1, s2, cps, v);
        },
        nullptr);
}

// ---------------------------------------------------------------------------
// Partition refinement
// ---------------------------------------------------------------------------

namespace {

struct Refinement {
    std::vector<std::size_t> block_of;
    std::vector<StateSet> blocks;
    std::vector<Formula> formulas;  // defines its block; filled when tracked
};

Formula disjunction_of(const std::vector<Formula>& fs) {
    if (fs.empty()) return Formula::bottom();
    Formula out = fs[0];
    for (std::size_t i = 1; i < fs.size(); ++i) out = Formula::disjunction(out, fs[i]);
    return out;
}

/// Signature-based refinement of the atom-profile partition: a state's
/// signature is the family of block unions occurring among its
/// neighbourhoods. The fixpoint is the largest congruence (with atoms).
Refinement refine_partition(const Model& m, bool track) {
    const std::size_t n = m.size();
    Refinement ref;
    ref.block_of.assign(n, 0);

    // Round 0: atom profiles.
    std::map<std::vector<bool>, std::size_t> profile_block;
    const auto& atoms = m.atom_support();
    for (std::size_t s = 0; s < n; ++s) {
        std::vector<bool> profile;
        profile.reserve(atoms.size());
        for (int a : atoms) profile.push_back(m.valuation(a).contains(s));
        auto [it, fresh] = profile_block.try_emplace(profile, profile_block.size());
        ref.block_of[s] = it->second;
        if (fresh) {
            ref.blocks.emplace_back(n);
            if (track) {
                Formula f = Formula::top();
                bool first = true;
                for (std::size_t k = 0; k < atoms.size(); ++k) {
                    Formula lit = profile[k] ? Formula::atom(atoms[k])
                                             : Formula::negation(Formula::atom(atoms[k]));
                    f = first ? lit : Formula::conjunction(f, lit);
                    first = false;
                }
                ref.formulas.push_back(f);
            }
        }
        ref.blocks[ref.block_of[s]].insert(s);
    }

    while (true) {
        const std::size_t k = ref.blocks.size();
        if (k > 20) throw CapExceeded("partition refinement over " + std::to_string(k) + " blocks");

        // Signatures w.r.t. the current blocks.
        std::vector<std::vector<std::uint64_t>> sig(n);
        const std::uint64_t total = std::uint64_t{1} << k;
        for (std::uint64_t mask = 0; mask < total; ++mask) {
            StateSet u(n);
            for (std::size_t b = 0; b < k; ++b)
                if ((mask >> b) & 1) u |= ref.blocks[b];
            for (std::size_t s = 0; s < n; ++s)
                if (m.has_neighbourhood(s, u)) sig[s].push_back(mask);
        }

        // Split every block by signature.
        struct Group {
            std::vector<std::size_t> states;
            std::vector<std::uint64_t> sig;
            std::size_t old_block;
        };
        std::vector<Group> groups;
        bool changed = false;
        for (std::size_t b = 0; b < k; ++b) {
            std::map<std::vector<std::uint64_t>, std::size_t> seen;
            std::size_t before = groups.size();
            for (std::size_t s : ref.blocks[b].members()) {
                auto [it, fresh] = seen.try_emplace(sig[s], groups.size());
                if (fresh) groups.push_back(Group{{}, sig[s], b});
                groups[it->second].states.push_back(s);
            }
            if (groups.size() - before > 1) changed = true;
        }
        if (!changed) break;

        std::vector<Formula> group_formula;
        if (track) {
            // chi_mask is the union of old block formulas named by the mask;
            // a literal []chi or ~[]chi separates two signatures at their
            // first differing mask.
            group_formula.reserve(groups.size());
            auto chi = [&](std::uint64_t mask) {
                std::vector<Formula> parts;
                for (std::size_t b = 0; b < k; ++b)
                    if ((mask >> b) & 1) parts.push_back(ref.formulas[b]);
                return disjunction_of(parts);
            };
            for (std::size_t g = 0; g < groups.size(); ++g) {
                Formula f = ref.formulas[groups[g].old_block];
                for (std::size_t h = 0; h < groups.size(); ++h) {
                    if (h == g || groups[h].old_block != groups[g].old_block) continue;
                    std::vector<std::uint64_t> diff;
                    std::set_symmetric_difference(groups[g].sig.begin(), groups[g].sig.end(),
                                                  groups[h].sig.begin(), groups[h].sig.end(),
                                                  std::back_inserter(diff));
                    const std::uint64_t mask = diff.front();
                    const bool mine =
                        std::binary_search(groups[g].sig.begin(), groups[g].sig.end(), mask);
                    Formula lit = Formula::box(chi(mask));
                    if (!mine) lit = Formula::negation(lit);
                    f = Formula::conjunction(f, lit);
                }
                group_formula.push_back(f);
            }
        }

        // Re-order the new blocks by least member.
        std::vector<std::size_t> order(groups.size());
        for (std::size_t g = 0; g < order.size(); ++g) order[g] = g;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return groups[a].states.front() < groups[b].states.front();
        });
        Refinement next;
        next.block_of.assign(n, 0);
        for (std::size_t pos = 0; pos < order.size(); ++pos) {
            const Group& g = groups[order[pos]];
            StateSet block(n);
            for (std::size_t s : g.states) {
                block.insert(s);
                next.block_of[s] = pos;
            }
            next.blocks.push_back(std::move(block));
            if (track) next.formulas.push_back(group_formula[order[pos]]);
        }
        ref = std::move(next);
    }

    if (track) {
        for (std::size_t b = 0; b < ref.blocks.size(); ++b)
            if (m.truth_set(ref.formulas[b]) != ref.blocks[b])
                throw std::logic_error("refinement: block formula does not define its block");
    }
    return ref;
}

Partition to_partition(const Model& m, const Refinement& ref) {
    Partition p;
    p.carrier = m.states();
    p.block_of = ref.block_of;
    p.blocks = ref.blocks;
    return p;
}

} // namespace

Partition behavioural_partition(const Model& m) {
    return to_partition(m, refine_partition(m, false));
}

Relation largest_congruence(const Model& m) {
    return behavioural_partition(m).as_relation();
}

Relation behavioural_equivalence(const Model& m1, const Model& m2) {
    DisjointUnion du = disjoint_union(m1, m2);
    Refinement ref = refine_partition(du.model, false);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < m1.size(); ++a)
        for (std::size_t b = 0; b < m2.size(); ++b)
            if (ref.block_of[du.inl(a)] == ref.block_of[du.inr(b)]) pairs.emplace_back(a, b);
    return Relation(m1.states(), m2.states(), std::move(pairs));
}

std::optional<Formula> distinguishing_formula(const Model& m1, std::size_t s1, const Model& m2,
                                              std::size_t s2) {
    if (s1 >= m1.size() || s2 >= m2.size())
        throw InputError("distinguishing formula: state index out of range");
    DisjointUnion du = disjoint_union(m1, m2);
    Refinement ref = refine_partition(du.model, true);
    if (ref.block_of[du.inl(s1)] == ref.block_of[du.inr(s2)]) return std::nullopt;
    Formula f = ref.formulas[ref.block_of[du.inl(s1)]];
    if (!m1.satisfies(s1, f) || m2.satisfies(s2, f))
        throw std::logic_error("distinguishing formula failed verification");
    return f;
}

std::optional<Formula> distinguishing_formula(const Model& m1, const std::string& s1,
                                              const Model& m2, const std::string& s2) {
    return distinguishing_formula(m1, m1.states().index_of(s1), m2, m2.states().index_of(s2));
}

// ---------------------------------------------------------------------------
// Cocongruences and brute force
// ---------------------------------------------------------------------------

Relation cocongruence_check(const Model& m1, const Model& m2, const Model& n,
                            const StateFunction& f1, const StateFunction& f2) {
    auto describe = [&](const Model& m, const MorphismViolation& v, const char* side) {
        std::string msg = std::string("cocongruence: ") + side + " map is not a bounded morphism at '" +
                          m.states().name(v.state) + "'";
        if (v.atom) msg += " (atom p" + std::to_string(*v.atom) + ")";
        if (v.set) msg += " (witness set of size " + std::to_string(v.set->count()) + ")";
        return msg;
    };
    if (auto rep = check_bounded_morphism(f1, m1, n); !rep.ok)
        throw PropertyError("not-a-bounded-morphism", describe(m1, *rep.violation, "left"));
    if (auto rep = check_bounded_morphism(f2, m2, n); !rep.ok)
        throw PropertyError("not-a-bounded-morphism", describe(m2, *rep.violation, "right"));
    return pullback(f1, f2);
}

namespace {

/// All set partitions of {0..n-1} via restricted growth strings in
/// lexicographic order: a[0] = 0 and a[i] <= max(a[0..i-1]) + 1.
void for_each_partition(std::size_t n, const std::function<void(const std::vector<std::size_t>&)>& fn) {
    std::vector<std::size_t> a(n, 0);
    if (n == 0) {
        fn(a);
        return;
    }
    while (true) {
        fn(a);
        std::size_t i = n - 1;
        while (true) {
            if (i == 0) return;
            std::size_t maxv = 0;
            for (std::size_t j = 0; j < i; ++j) maxv = std::max(maxv, a[j]);
            if (a[i] <= maxv) {
                ++a[i];
                std::fill(a.begin() + static_cast<std::ptrdiff_t>(i) + 1, a.end(), 0);
                break;
            }
            --i;
        }
    }
}

} // namespace

std::vector<Violation> rejection_certificates(const Relation& computed, const Model& m1,
                                              const Model& m2, EquivalenceKind kind) {
    if (kind == EquivalenceKind::Behavioural)
        throw InputError("rejection certificates: behavioural rejections are certified by "
                         "distinguishing formulas");
    std::vector<Violation> out;
    for (std::size_t a = 0; a < m1.size(); ++a)
        for (std::size_t b = 0; b < m2.size(); ++b) {
            if (computed.contains(a, b)) continue;
            auto pairs = computed.pairs();
            pairs.emplace_back(a, b);
            Relation extended(m1.states(), m2.states(), std::move(pairs));
            // Check only the added pair against the extended relation. It
            // must fail: otherwise extended would be a post-fixpoint and the
            // pair would be inside the computed greatest fixpoint.
            const auto atoms = joint_atom_support(m1, m2);
            const auto cps = coherent_pairs(extended);
            Violation v;
            bool ok = atoms_agree(m1, m2, atoms, a, b, &v);
            if (ok && kind == EquivalenceKind::Bisimulation) {
                if (auto w = base_condition_witness(m1, a, extended.domain_set())) {
                    v = Violation{Violation::Kind::BaseLeft, {a, b}, w->first, w->second, -1};
                    ok = false;
                } else if (auto w2 = base_condition_witness(m2, b, extended.range_set())) {
                    v = Violation{Violation::Kind::BaseRight, {a, b}, w2->first, w2->second, -1};
                    ok = false;
                }
            }
            if (ok) ok = coherent_pairs_agree(m1, m2, a, b, cps, &v);
            if (ok) throw std::logic_error("rejected pair passes its own rejection check");
            out.push_back(v);
        }
    return out;
}

Relation brute_force(const Model& m1, const Model& m2, EquivalenceKind kind, int pair_cap) {
    const std::size_t n1 = m1.size(), n2 = m2.size();
    if (n1 * n2 > static_cast<std::size_t>(pair_cap))
        throw CapExceeded("brute force over " + std::to_string(n1 * n2) + " pairs");

    if (kind == EquivalenceKind::Behavioural) {
        DisjointUnion du = disjoint_union(m1, m2);
        const std::size_t n = n1 + n2;
        std::vector<std::pair<std::size_t, std::size_t>> agg;
        for_each_partition(n, [&](const std::vector<std::size_t>& rgs) {
            std::vector<std::pair<std::size_t, std::size_t>> pairs;
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b)
                    if (rgs[a] == rgs[b]) pairs.emplace_back(a, b);
            Relation r(du.model.states(), du.model.states(), std::move(pairs));
            if (!is_congruence(r, du.model).ok) return;
            for (std::size_t a = 0; a < n1; ++a)
                for (std::size_t b = 0; b < n2; ++b)
                    if (r.contains(du.inl(a), du.inr(b))) agg.emplace_back(a, b);
        });
        return Relation(m1.states(), m2.states(), std::move(agg));
    }

    std::vector<std::pair<std::size_t, std::size_t>> all;
    for (std::size_t a = 0; a < n1; ++a)
        for (std::size_t b = 0; b < n2; ++b) all.emplace_back(a, b);
    std::vector<std::pair<std::size_t, std::size_t>> agg;
    const std::uint64_t total = std::uint64_t{1} << all.size();
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t i = 0; i < all.size(); ++i)
            if ((mask >> i) & 1) pairs.push_back(all[i]);
        Relation r(m1.states(), m2.states(), std::move(pairs));
        const CheckReport rep = kind == EquivalenceKind::Bisimulation
                                    ? is_bisimulation(r, m1, m2)
                                    : is_precocongruence(r, m1, m2);
        if (rep.ok)
            for (auto& p : r.pairs()) agg.push_back(p);
    }
    return Relation(m1.states(), m2.states(), std::move(agg));
}

} // namespace nbhd
