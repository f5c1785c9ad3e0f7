#ifndef NBHD_FORMULA_HPP
#define NBHD_FORMULA_HPP

#include <memory>
#include <set>
#include <string>
#include <vector>

namespace nbhd {

/// Modal formula over indexed atoms p0, p1, ...
///
/// The carrier grammar is bottom | atom | not | and | box; everything else
/// (top, or, implies, iff, diamond) is desugared by the builders and the
/// parser, so structural equality over the five constructors is the only
/// equality anyone ever needs. Nodes are immutable and shared.
class Formula {
public:
    enum class Kind { Bottom, Atom, Not, And, Box };

    Formula() : Formula(bottom()) {}

    static Formula bottom();
    static Formula atom(int index);
    static Formula negation(const Formula& f);
    static Formula conjunction(const Formula& a, const Formula& b);
    static Formula box(const Formula& f);

    // Sugar, eliminated on construction.
    static Formula top() { return negation(bottom()); }
    static Formula disjunction(const Formula& a, const Formula& b) {
        return negation(conjunction(negation(a), negation(b)));
    }
    static Formula implies(const Formula& a, const Formula& b) {
        return negation(conjunction(a, negation(b)));
    }
    static Formula iff(const Formula& a, const Formula& b) {
        return conjunction(implies(a, b), implies(b, a));
    }
    static Formula diamond(const Formula& f) { return negation(box(negation(f))); }

    Kind kind() const;
    int atom_index() const;  // Atom only
    Formula child() const;   // Not / Box
    Formula left() const;    // And
    Formula right() const;   // And

    bool operator==(const Formula& o) const;
    bool operator!=(const Formula& o) const { return !(*this == o); }
    /// Total structural order, usable as a map key.
    bool operator<(const Formula& o) const;

    std::size_t node_count() const;

private:
    struct Node;
    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

/// Subformula analysis of one formula.
struct Closure {
    /// Each distinct subformula once, children before parents.
    std::vector<Formula> subformulas;
    /// Atom indices occurring in the formula.
    std::set<int> atoms;
    /// The arguments of box subformulas, in subformula order.
    std::vector<Formula> boxed;
    /// Maximal box nesting depth.
    int depth = 0;
};

Closure closure(const Formula& f);

/// Parses the concrete syntax
///   phi ::= "false" | "true" | pN | "~"phi | phi"&"phi | phi"|"phi
///         | phi"->"phi | phi"<->"phi | "[]"phi | "<>"phi | "("phi")"
/// with precedence unary > & > | > -> > <-> ("->" and "<->" associate to
/// the right, "&" and "|" to the left). Sugar is desugared during parsing.
/// Throws InputError with a character position on bad input.
Formula parse(const std::string& text);

/// Deterministic fully parenthesised rendering of the core constructors;
/// parse(render(f)) == f.
std::string render(const Formula& f);

} // namespace nbhd

#endif
