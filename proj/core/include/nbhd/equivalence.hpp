#ifndef NBHD_EQUIVALENCE_HPP
#define NBHD_EQUIVALENCE_HPP

#include <optional>
#include <string>
#include <vector>

#include "nbhd/constructions.hpp"
#include "nbhd/formula.hpp"
#include "nbhd/model.hpp"

namespace nbhd {

/// Why a pair fails one of the relation checkers. Certificates survive
/// shrinking of the relation: a coherent-pair or base witness recorded
/// against some R stays a witness for every subrelation of R.
struct Violation {
    enum class Kind {
        AtomMismatch,   // the pair disagrees on 'atom'
        BaseLeft,       // sets_a/sets_b agree on dom(R) but split nu1(s1)
        BaseRight,      // sets_a/sets_b agree on rng(R) but split nu2(s2)
        CoherentPair,   // R-coherent <sets_a, sets_b> with mismatching membership
        CoherentSet,    // R-coherent set sets_a with mismatching membership
    };
    Kind kind;
    std::pair<std::size_t, std::size_t> pair;
    StateSet set_a, set_b;
    int atom = -1;
};

struct CheckReport {
    bool ok = true;
    /// Kind tag of the check that produced the report.
    std::string kind;
    std::vector<Violation> violations;
    explicit operator bool() const { return ok; }
};

/// Back-and-forth characterisation of 2^2-bisimulations: pairs must pass
/// (1a) sets agreeing on dom(R) are nu1-indistinguishable, (1b) dually for
/// rng(R) and nu2, (2) R-coherent pairs are nu-agreed, plus atom agreement
/// over the joint support.
CheckReport is_bisimulation(const Relation& r, const Model& m1, const Model& m2);

/// Precocongruence characterisation: agreement on every R-coherent pair,
/// plus atoms.
CheckReport is_precocongruence(const Relation& r, const Model& m1, const Model& m2);

/// Congruence test for an equivalence relation on one model: related states
/// agree on membership of every R-coherent subset and on atoms.
/// Throws InputError when r is not an equivalence relation.
CheckReport is_congruence(const Relation& r, const Model& m);

/// r is a precongruence iff its equivalence closure is a congruence.
CheckReport is_precongruence(const Relation& r, const Model& m);

/// Greatest fixpoint of the per-pair bisimulation conditions; equals the
/// union of all bisimulations between the two models.
Relation largest_bisimulation(const Model& m1, const Model& m2);

/// Greatest fixpoint of the coherent-pair condition; equals the union of
/// all precocongruences between the two models.
Relation largest_precocongruence(const Model& m1, const Model& m2);

/// Largest congruence on one model, computed by signature-based partition
/// refinement (initial blocks by atom profile, then refinement by the set
/// of block unions appearing as neighbourhoods).
Relation largest_congruence(const Model& m);

/// Partition underlying largest_congruence.
Partition behavioural_partition(const Model& m);

/// States of m1 x m2 identified by some cocongruence: the largest
/// congruence on the disjoint union, restricted across the two components.
Relation behavioural_equivalence(const Model& m1, const Model& m2);

/// None iff the states are behaviourally equivalent; otherwise a formula
/// true at (m1,s1) and false at (m2,s2), machine-verified before returning.
std::optional<Formula> distinguishing_formula(const Model& m1, std::size_t s1, const Model& m2,
                                              std::size_t s2);
std::optional<Formula> distinguishing_formula(const Model& m1, const std::string& s1,
                                              const Model& m2, const std::string& s2);

/// Verifies that f1 and f2 are bounded morphisms into n and returns their
/// pullback. Throws PropertyError("not-a-bounded-morphism", ...) naming the
/// failing side otherwise.
Relation cocongruence_check(const Model& m1, const Model& m2, const Model& n,
                            const StateFunction& f1, const StateFunction& f2);

enum class EquivalenceKind { Bisimulation, Precocongruence, Behavioural };

/// One violation per pair absent from a computed largest relation, checked
/// against relation-plus-pair. Only for the two relation-style kinds.
std::vector<Violation> rejection_certificates(const Relation& computed, const Model& m1,
                                              const Model& m2, EquivalenceKind kind);

/// Exhaustive oracle. For bisimulation/precocongruence kinds, enumerates
/// all relations and unions those accepted by the checker. For the
/// behavioural kind, enumerates all equivalence relations on the disjoint
/// union, unions the congruences, and restricts across the components.
/// Requires |S1|*|S2| <= pair_cap.
Relation brute_force(const Model& m1, const Model& m2, EquivalenceKind kind, int pair_cap = 12);

} // namespace nbhd

#endif
