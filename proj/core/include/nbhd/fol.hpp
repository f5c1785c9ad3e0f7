#ifndef NBHD_FOL_HPP
#define NBHD_FOL_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nbhd/model.hpp"

namespace nbhd {

/// Two-sorted first-order formula over state variables and neighbourhood
/// variables. Core constructors: equalities at each sort, P_i x, x N u,
/// u E x, negation, conjunction, and existentials at each sort. Universal
/// quantifiers and the biconditional are sugar built from the core; the
/// printer recognises the shapes the builders emit.
class FolFormula {
public:
    enum class Kind { EqState, EqNbhd, Pred, RelN, RelE, Not, And, ExistsState, ExistsNbhd };

    static FolFormula eq_state(const std::string& x, const std::string& y);
    static FolFormula eq_nbhd(const std::string& u, const std::string& v);
    static FolFormula pred(int atom, const std::string& x);
    static FolFormula rel_n(const std::string& x, const std::string& u);
    static FolFormula rel_e(const std::string& u, const std::string& x);
    static FolFormula negation(const FolFormula& f);
    static FolFormula conjunction(const FolFormula& a, const FolFormula& b);
    static FolFormula exists_state(const std::string& x, const FolFormula& body);
    static FolFormula exists_nbhd(const std::string& u, const FolFormula& body);

    // Sugar.
    static FolFormula forall_state(const std::string& x, const FolFormula& body) {
        return negation(exists_state(x, negation(body)));
    }
    static FolFormula forall_nbhd(const std::string& u, const FolFormula& body) {
        return negation(exists_nbhd(u, negation(body)));
    }
    static FolFormula implies(const FolFormula& a, const FolFormula& b) {
        return negation(conjunction(a, negation(b)));
    }
    static FolFormula iff(const FolFormula& a, const FolFormula& b) {
        return conjunction(implies(a, b), implies(b, a));
    }

    Kind kind() const;
    const std::string& var1() const;  // first variable of an atom / bound variable
    const std::string& var2() const;  // second variable of an atom
    int atom() const;                 // Pred only
    FolFormula child() const;         // Not / quantifier body
    FolFormula left() const;          // And
    FolFormula right() const;         // And

    bool operator==(const FolFormula& o) const;

private:
    struct Node;
    explicit FolFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

/// Plain-text rendering; universal quantifiers print as "All v (...)" and
/// the biconditional shape prints as "(a <-> b)".
std::string render(const FolFormula& f);

/// Finite two-sorted structure: state domain, neighbourhood domain, unary
/// predicates over states, N between states and neighbourhoods, E between
/// neighbourhoods and states.
struct TwoSortedStructure {
    Carrier ds, dn;
    std::map<int, StateSet> preds;                          // atom -> subset of ds
    std::vector<std::pair<std::size_t, std::size_t>> rel_n;  // (state, nbhd), sorted
    std::vector<std::pair<std::size_t, std::size_t>> rel_e;  // (nbhd, state), sorted

    bool has_n(std::size_t s, std::size_t u) const;
    bool has_e(std::size_t u, std::size_t s) const;
    /// eta(u) = { s | u E s } as a subset of ds.
    StateSet extent(std::size_t u) const;
};

/// First-order translation of a model: Dn is the set of distinct
/// neighbourhood sets (named n0, n1, ... in canonical order), N relates a
/// state to its neighbourhoods and E a neighbourhood to its elements.
TwoSortedStructure fotrans(const Model& m);

/// Standard translation; the free state variable is 'x', fresh variables
/// u1,y1,u2,y2,... are numbered by box traversal order.
FolFormula st(const Formula& f, const std::string& x);

struct Assignment {
    std::map<std::string, std::size_t> state_vars;
    std::map<std::string, std::size_t> nbhd_vars;
};

/// Tarskian evaluation over the finite structure. Throws InputError when a
/// free variable is not covered by the assignment.
bool fol_eval(const TwoSortedStructure& f, const FolFormula& a, const Assignment& env);

/// The two neighbourhood axioms: A1 = every neighbourhood is a
/// neighbourhood of some state, A2 = neighbourhoods with the same elements
/// are equal.
struct NaxReport {
    bool ok = true;
    std::optional<std::string> a1_witness;                          // orphaned dn element
    std::optional<std::pair<std::string, std::string>> a2_witness;  // E-indistinguishable pair
};

NaxReport nax_check(const TwoSortedStructure& f);

/// Model reconstructed from a NAX structure, together with the isomorphism
/// (state and neighbourhood renamings) between f and fotrans of the result.
/// Throws PropertyError("nax-violation", ...) when nax_check fails.
struct NbmResult {
    Model model;
    std::map<std::string, std::string> state_iso;  // f.ds -> fotrans(model).ds
    std::map<std::string, std::string> nbhd_iso;   // f.dn -> fotrans(model).dn
};

NbmResult nbm(const TwoSortedStructure& f);

/// Structure isomorphism test used by the round-trip checks.
bool structures_isomorphic(const TwoSortedStructure& a, const TwoSortedStructure& b,
                           const std::map<std::string, std::string>& state_iso,
                           const std::map<std::string, std::string>& nbhd_iso);

} // namespace nbhd

#endif
