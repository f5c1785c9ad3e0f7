#ifndef NBHD_CONSTRUCTIONS_HPP
#define NBHD_CONSTRUCTIONS_HPP

#include <optional>
#include <string>
#include <vector>

#include "nbhd/model.hpp"

namespace nbhd {

/// Partition of a carrier. Blocks are disjoint, nonempty, cover the
/// carrier, and are ordered by least member.
struct Partition {
    Carrier carrier;
    std::vector<std::size_t> block_of;  // state -> block id
    std::vector<StateSet> blocks;

    static Partition from_equivalence(const Relation& r);
    Relation as_relation() const;
};

/// Smallest equivalence relation containing r (r must live on one carrier).
Relation eq_closure(const Relation& r);

/// ker(f) = { (s,s') | f(s) = f(s') }.
Relation kernel(const StateFunction& f);

/// pb(f1,f2) = { (x1,x2) | f1(x1) = f2(x2) }; the two codomains must agree.
Relation pullback(const StateFunction& f1, const StateFunction& f2);

struct DisjointUnion {
    Model model;        // states named "L:<name>" / "R:<name>"
    StateFunction inl;  // left inclusion, a bounded morphism
    StateFunction inr;  // right inclusion, a bounded morphism
};

/// Coproduct of two models: X in nu(s) iff X cap S_i in nu_i(s) for s from
/// side i; valuations are componentwise unions. The inclusions are checked
/// to be bounded morphisms.
DisjointUnion disjoint_union(const Model& m1, const Model& m2);

/// Mediating morphism of the coproduct universal property: the unique map
/// h with h o inl = f1 and h o inr = f2. Checked to be bounded whenever
/// f1 and f2 are.
StateFunction copair(const DisjointUnion& du, const StateFunction& f1, const StateFunction& f2);

struct Quotient {
    Model model;        // states named after the least member of each block
    StateFunction map;  // the natural quotient map, a bounded morphism
};

/// Quotient of m by a congruence r (an equivalence relation; congruence is
/// checked, including atom agreement). Y in nu_Q(eps(s)) iff eps^-1[Y] in
/// nu(s); this is the unique structure making eps a bounded morphism.
/// Throws PropertyError("not-a-congruence", ...) with a witness otherwise.
Quotient quotient(const Model& m, const Relation& r);

struct Pushout {
    Carrier carrier;  // blocks of (X1+X2)/closure, named "L:"/"R:" + least member
    StateFunction p1, p2;
};

/// Pushout of a relation between two carriers in Set.
Pushout pushout(const Relation& r, const Carrier& x1, const Carrier& x2);

/// Universal property instance: for q1, q2 with q1 o pi1 = q2 o pi2 on r,
/// the unique u with u o p1 = q1 and u o p2 = q2. Returns nullopt when the
/// supplied square does not commute.
std::optional<StateFunction> pushout_mediator(const Pushout& p, const Relation& r,
                                              const StateFunction& q1, const StateFunction& q2);

/// The pairs of a relation turned into a carrier ("(a,b)" names, pair order)
/// together with the two projection functions. Used to treat a relation as
/// the vertex of a span.
struct RelationSpan {
    Carrier carrier;
    StateFunction pi1, pi2;
};

RelationSpan relation_span(const Relation& r);

} // namespace nbhd

#endif
