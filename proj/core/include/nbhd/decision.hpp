#ifndef NBHD_DECISION_HPP
#define NBHD_DECISION_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "nbhd/formula.hpp"
#include "nbhd/model.hpp"

namespace nbhd {

struct DecisionCaps {
    std::size_t max_closure = 16;        // distinct subformulas of the goal
    std::size_t max_types = 1024;        // type space (and search width |W|)
    std::uint64_t max_candidates = 1u << 22;  // type-set candidates examined
};

struct SatCertificate {
    Model model;
    std::string witness;  // state name satisfying the goal
};

/// Verdict of the decision procedures. Sat and Invalid carry a certificate
/// that has been re-verified by the model checker.
struct DecisionResult {
    enum class Verdict { Sat, Unsat, Valid, Invalid };
    Verdict verdict;
    std::optional<SatCertificate> certificate;
};

/// Finite-model search over sets W of closure types: a type assigns free
/// bits to the atoms and boxed subformulas of the closure and derived bits
/// to the rest. W is admissible when it contains a type satisfying the
/// goal and is coherent: boxed arguments with the same extension over W
/// carry the same box bit in every member. Any coherent W yields a model
/// on W itself whose truth sets realise exactly the assigned bits, and any
/// model of the goal realises an admissible W whose size is at most
/// 1 + (number of boxed-argument pairs), which bounds the search;
/// exhausting it proves unsatisfiability.
DecisionResult satisfiable(const Formula& goal, const DecisionCaps& caps = {});

/// Valid iff the negation is unsatisfiable; otherwise Invalid with a
/// verified countermodel.
DecisionResult valid(const Formula& goal, const DecisionCaps& caps = {});

/// Local consequence: valid(premises -> conclusion).
DecisionResult consequence(const std::vector<Formula>& premises, const Formula& conclusion,
                           const DecisionCaps& caps = {});

/// Bounded constructive interpolant search. Candidates over the shared
/// atoms are enumerated in nondecreasing size through the normal form
///   chi ::= false | true | p | ~p | chi&chi | chi|chi | []chi | ~[]chi
/// with propositionally equivalent candidates of identical box structure
/// deduplicated. Returns the first chi with both implications valid, or
/// nullopt when the bound is exhausted (the theorem guarantees existence
/// but yields no size bound). Throws PropertyError("not-valid", ...) when
/// the input implication fails.
std::optional<Formula> interpolant(const Formula& left, const Formula& right,
                                   std::size_t max_size = 9, const DecisionCaps& caps = {});

} // namespace nbhd

#endif
