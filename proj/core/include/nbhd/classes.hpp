#ifndef NBHD_CLASSES_HPP
#define NBHD_CLASSES_HPP

#include <vector>

#include "nbhd/model.hpp"

namespace nbhd {

/// Kripke model: successor relation plus valuation on a declared support.
class KripkeModel {
public:
    KripkeModel() = default;
    KripkeModel(Carrier states, Relation edges, std::map<int, StateSet> valuation);

    const Carrier& states() const { return states_; }
    std::size_t size() const { return states_.size(); }
    const Relation& edges() const { return edges_; }
    StateSet successors(std::size_t s) const;
    const std::vector<int>& atom_support() const { return atoms_; }
    StateSet valuation(int atom) const;

    /// Standard Kripke truth: box holds when all successors satisfy the body.
    StateSet truth_set(const Formula& f) const;
    bool satisfies(std::size_t s, const Formula& f) const;

    bool operator==(const KripkeModel& o) const;

private:
    Carrier states_;
    Relation edges_;
    std::vector<int> atoms_;
    std::vector<StateSet> vals_;
};

/// Every nu(s) closed under supersets within the carrier.
bool is_monotonic(const Model& m);

/// Monotonic and every nu(s) contains its intersection. A state with an
/// empty collection has no intersection member, so it is not augmented.
bool is_augmented(const Model& m);

/// nu(s) = up-closure of R[s]; pointwise equivalent to the Kripke model.
Model from_kripke(const KripkeModel& k);

/// R[s] = intersection of nu(s). Requires is_augmented(m); throws
/// PropertyError("not-augmented", ...) otherwise.
KripkeModel to_kripke(const Model& m);

/// Subset-minimal neighbourhoods of s, canonically ordered.
std::vector<StateSet> core_neighbourhoods(const Model& m, std::size_t s);

/// A subset-minimal B with D in nu(s) iff D cap B in nu(s) for all D,
/// found by exhaustive search in size order with carrier-order tie-break.
/// Every finite model has one (the full carrier works).
StateSet minimal_base(const Model& m, std::size_t s);

/// Cores C1..Cn with nu(s) equal to the union of their up-closures.
/// Requires is_monotonic(m); throws PropertyError("not-monotonic", ...)
/// otherwise.
std::vector<StateSet> mon_core_decomposition(const Model& m, std::size_t s);

} // namespace nbhd

#endif
