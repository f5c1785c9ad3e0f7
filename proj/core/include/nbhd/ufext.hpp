#ifndef NBHD_UFEXT_HPP
#define NBHD_UFEXT_HPP

#include <vector>

#include "nbhd/model.hpp"

namespace nbhd {

/// Ultrafilter over a finite carrier: its generating point together with
/// the member-set view. Over a finite set every ultrafilter is principal;
/// the constructor checks the axioms on the member sets rather than
/// assuming this.
struct Ultrafilter {
    std::size_t point;
    std::vector<StateSet> members;  // canonically sorted

    bool contains(const StateSet& u) const;
};

/// The ultrafilters over the carrier of m, one per state, in carrier order.
/// Each candidate's axioms (contains the carrier, upward closed, closed
/// under intersection, complement-complete) are verified.
std::vector<Ultrafilter> ultrafilters(const Model& m);

struct UltrafilterExtension {
    Model model;            // states named "uf:<state>"
    StateFunction principal;  // s |-> u_s
};

/// mu(u) = { hat(U) | U subseteq S, boxtimes(U) in u }, hat(U) = the set of
/// ultrafilters containing U; the valuation sends p to the ultrafilters
/// containing V(p). Computed literally from the member-set views rather
/// than through the finite shortcut, so that the principal isomorphism is
/// a checked result, not an assumption. Extensions are modally saturated;
/// over a finite carrier that is a finiteness fact (every subset is
/// modally compact), so it is documented here rather than tested.
UltrafilterExtension ultrafilter_extension(const Model& m);

/// Restriction of the functor action to ultrafilters: u |-> { D | f^-1[D]
/// in u }. Requires f to be a bounded morphism from m1 to m2 (throws
/// PropertyError otherwise) and verifies that the lifted map is bounded
/// between the extensions.
StateFunction lift_morphism(const StateFunction& f, const Model& m1, const Model& m2);

} // namespace nbhd

#endif
