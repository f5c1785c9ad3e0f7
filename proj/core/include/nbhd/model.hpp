#ifndef NBHD_MODEL_HPP
#define NBHD_MODEL_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nbhd/formula.hpp"
#include "nbhd/stateset.hpp"

namespace nbhd {

/// Ordered set of state names. The declaration order is the carrier order;
/// it fixes bit positions in StateSets and every deterministic output.
class Carrier {
public:
    Carrier() = default;
    explicit Carrier(std::vector<std::string> names);

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_[i]; }
    const std::vector<std::string>& names() const { return names_; }

    bool has(const std::string& name) const { return index_.count(name) > 0; }
    /// Throws InputError for unknown names.
    std::size_t index_of(const std::string& name) const;

    bool operator==(const Carrier& o) const { return names_ == o.names_; }
    bool operator!=(const Carrier& o) const { return !(*this == o); }

    StateSet set_of(const std::vector<std::string>& members) const;
    std::vector<std::string> names_of(const StateSet& s) const;

private:
    std::vector<std::string> names_;
    std::map<std::string, std::size_t> index_;
};

/// Finite neighbourhood model: carrier, neighbourhood collections, and a
/// valuation on a declared finite atom support. Atoms outside the support
/// denote the empty set. Immutable after construction.
class Model {
public:
    Model() = default;
    /// 'nbhd' is indexed by state; collections are canonicalised (sorted,
    /// deduplicated). 'valuation' maps atom index -> truth set.
    Model(Carrier states, std::vector<std::vector<StateSet>> nbhd,
          std::map<int, StateSet> valuation);

    const Carrier& states() const { return states_; }
    std::size_t size() const { return states_.size(); }

    const std::vector<StateSet>& neighbourhoods(std::size_t s) const { return nbhd_[s]; }
    bool has_neighbourhood(std::size_t s, const StateSet& u) const;

    /// Sorted atom support.
    const std::vector<int>& atom_support() const { return atoms_; }
    /// Truth set of an atom; empty for atoms outside the support.
    StateSet valuation(int atom) const;

    StateSet truth_set(const Formula& f) const;
    bool satisfies(std::size_t s, const Formula& f) const;
    bool satisfies(const std::string& state, const Formula& f) const;

    /// { s | u in nu(s) }.
    StateSet boxtimes(const StateSet& u) const;

    bool operator==(const Model& o) const;

private:
    Carrier states_;
    std::vector<std::vector<StateSet>> nbhd_;
    std::vector<int> atoms_;
    std::vector<StateSet> vals_;  // parallel to atoms_
};

/// Convenience builder used by fixtures and tests: neighbourhoods and
/// valuations given by state name.
Model make_model(std::vector<std::string> states,
                 std::map<std::string, std::vector<std::vector<std::string>>> nbhd,
                 std::map<int, std::vector<std::string>> valuation = {});

/// Total function between carriers.
class StateFunction {
public:
    StateFunction() = default;
    StateFunction(Carrier dom, Carrier cod, std::vector<std::size_t> map);
    static StateFunction from_names(const Carrier& dom, const Carrier& cod,
                                    const std::map<std::string, std::string>& map);
    static StateFunction identity(const Carrier& c);

    const Carrier& dom() const { return dom_; }
    const Carrier& cod() const { return cod_; }
    std::size_t operator()(std::size_t i) const { return map_[i]; }

    StateSet image(const StateSet& u) const;
    StateSet preimage(const StateSet& v) const;
    bool is_bijection() const;

    /// g after f; requires f.cod() == g.dom().
    friend StateFunction compose(const StateFunction& g, const StateFunction& f);

    bool operator==(const StateFunction& o) const {
        return dom_ == o.dom_ && cod_ == o.cod_ && map_ == o.map_;
    }

private:
    Carrier dom_, cod_;
    std::vector<std::size_t> map_;
};

/// Finite relation between two carriers, stored as a sorted pair list.
class Relation {
public:
    Relation() = default;
    Relation(Carrier dom, Carrier cod, std::vector<std::pair<std::size_t, std::size_t>> pairs);
    static Relation from_names(const Carrier& dom, const Carrier& cod,
                               const std::vector<std::pair<std::string, std::string>>& pairs);
    static Relation identity(const Carrier& c);
    static Relation full(const Carrier& dom, const Carrier& cod);
    static Relation empty(const Carrier& dom, const Carrier& cod);

    const Carrier& dom() const { return dom_; }
    const Carrier& cod() const { return cod_; }
    const std::vector<std::pair<std::size_t, std::size_t>>& pairs() const { return pairs_; }
    std::size_t size() const { return pairs_.size(); }
    bool contains(std::size_t a, std::size_t b) const;

    StateSet image(const StateSet& u) const;
    StateSet preimage(const StateSet& v) const;
    StateSet domain_set() const;
    StateSet range_set() const;

    bool is_equivalence() const;  // requires dom == cod
    bool subset_of(const Relation& o) const;

    bool operator==(const Relation& o) const {
        return dom_ == o.dom_ && cod_ == o.cod_ && pairs_ == o.pairs_;
    }

private:
    Carrier dom_, cod_;
    std::vector<std::pair<std::size_t, std::size_t>> pairs_;
};

/// Graph of f as a relation from dom to cod.
Relation graph(const StateFunction& f);

/// 2^2 on functions: { d subseteq cod(f) | f^-1[d] in n }.
/// The result is canonically sorted.
std::vector<StateSet> functor_image(const StateFunction& f, const std::vector<StateSet>& n);

/// R[u1] subseteq u2 and R^-1[u2] subseteq u1.
bool is_coherent_pair(const Relation& r, const StateSet& u1, const StateSet& u2);

/// Coherence of <u,u> for a relation on a single carrier.
bool is_coherent_set(const Relation& r, const StateSet& u);

/// All R-coherent pairs, enumerated through the blocks of the equivalence
/// closure of R on the disjoint carrier (2^blocks candidates, canonical
/// order).
std::vector<std::pair<StateSet, StateSet>> coherent_pairs(const Relation& r);

/// All R-coherent subsets of the carrier of a relation on one carrier
/// (unions of closure classes, canonical order).
std::vector<StateSet> coherent_sets(const Relation& r);

/// Witness for a failed bounded-morphism check.
struct MorphismViolation {
    std::size_t state = 0;          // state of the domain model
    std::optional<StateSet> set;    // X subseteq cod with f^-1[X] mismatching
    std::optional<int> atom;        // or an atom the map fails to respect
};

struct MorphismReport {
    bool ok = true;
    std::optional<MorphismViolation> violation;
    explicit operator bool() const { return ok; }
};

/// f is a bounded morphism from m1 to m2 when for all s and all X subseteq
/// states(m2): f^-1[X] in nu1(s) iff X in nu2(f(s)), and valuations agree
/// through f on the given atoms.
MorphismReport check_bounded_morphism(const StateFunction& f, const Model& m1, const Model& m2,
                                      const std::vector<int>& atoms);

/// Same, over the union of the two atom supports.
MorphismReport check_bounded_morphism(const StateFunction& f, const Model& m1, const Model& m2);

bool is_bounded_morphism(const StateFunction& f, const Model& m1, const Model& m2,
                         const std::vector<int>& atoms);
bool is_bounded_morphism(const StateFunction& f, const Model& m1, const Model& m2);

/// Union of the two supports, sorted.
std::vector<int> joint_atom_support(const Model& m1, const Model& m2);

} // namespace nbhd

#endif
