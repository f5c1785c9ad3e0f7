#include "nbhd/formula.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>

#include "nbhd/error.hpp"

namespace nbhd {

struct Formula::Node {
    Kind kind;
    int atom = -1;
    std::shared_ptr<const Node> a, b;
};

Formula Formula::bottom() {
    static const auto node = std::make_shared<const Node>(Node{Kind::Bottom, -1, nullptr, nullptr});
    return Formula(node);
}

Formula Formula::atom(int index) {
    if (index < 0) throw InputError("atom index must be nonnegative");
    return Formula(std::make_shared<const Node>(Node{Kind::Atom, index, nullptr, nullptr}));
}

Formula Formula::negation(const Formula& f) {
    return Formula(std::make_shared<const Node>(Node{Kind::Not, -1, f.node_, nullptr}));
}

Formula Formula::conjunction(const Formula& a, const Formula& b) {
    return Formula(std::make_shared<const Node>(Node{Kind::And, -1, a.node_, b.node_}));
}

Formula Formula::box(const Formula& f) {
    return Formula(std::make_shared<const Node>(Node{Kind::Box, -1, f.node_, nullptr}));
}

Formula::Kind Formula::kind() const { return node_->kind; }

int Formula::atom_index() const { return node_->atom; }

Formula Formula::child() const { return Formula(node_->a); }

Formula Formula::left() const { return Formula(node_->a); }

Formula Formula::right() const { return Formula(node_->b); }

static int cmp(const Formula& x, const Formula& y) {
    if (x.kind() != y.kind()) return x.kind() < y.kind() ? -1 : 1;
    switch (x.kind()) {
        case Formula::Kind::Bottom: return 0;
        case Formula::Kind::Atom:
            return x.atom_index() == y.atom_index() ? 0 : (x.atom_index() < y.atom_index() ? -1 : 1);
        case Formula::Kind::Not:
        case Formula::Kind::Box: return cmp(x.child(), y.child());
        case Formula::Kind::And: {
            int c = cmp(x.left(), y.left());
            return c != 0 ? c : cmp(x.right(), y.right());
        }
    }
    return 0;
}

bool Formula::operator==(const Formula& o) const {
    return node_ == o.node_ || cmp(*this, o) == 0;
}

bool Formula::operator<(const Formula& o) const { return cmp(*this, o) < 0; }

std::size_t Formula::node_count() const {
    switch (kind()) {
        case Kind::Bottom:
        case Kind::Atom: return 1;
        case Kind::Not:
        case Kind::Box: return 1 + child().node_count();
        case Kind::And: return 1 + left().node_count() + right().node_count();
    }
    return 1;
}

// ---------------------------------------------------------------------------
// Closure
// ---------------------------------------------------------------------------

namespace {

int collect(const Formula& f, Closure& c, std::set<Formula>& seen) {
    int depth = 0;
    switch (f.kind()) {
        case Formula::Kind::Bottom: break;
        case Formula::Kind::Atom:
            c.atoms.insert(f.atom_index());
            break;
        case Formula::Kind::Not:
            depth = collect(f.child(), c, seen);
            break;
        case Formula::Kind::And:
            depth = std::max(collect(f.left(), c, seen), collect(f.right(), c, seen));
            break;
        case Formula::Kind::Box:
            depth = 1 + collect(f.child(), c, seen);
            break;
    }
    if (seen.insert(f).second) {
        c.subformulas.push_back(f);
        if (f.kind() == Formula::Kind::Box) c.boxed.push_back(f.child());
    }
    return depth;
}

} // namespace

Closure closure(const Formula& f) {
    Closure c;
    std::set<Formula> seen;
    c.depth = collect(f, c, seen);
    return c;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

struct Parser {
    const std::string& text;
    std::size_t pos = 0;

    explicit Parser(const std::string& t) : text(t) {}

    [[noreturn]] void fail(const std::string& msg) const {
        throw InputError("parse error at position " + std::to_string(pos) + ": " + msg);
    }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eat(const std::string& tok) {
        skip_ws();
        if (text.compare(pos, tok.size(), tok) == 0) {
            pos += tok.size();
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    Formula parse_formula() { return parse_iff(); }

    Formula parse_iff() {
        Formula lhs = parse_implies();
        skip_ws();
        if (text.compare(pos, 3, "<->") == 0) {
            pos += 3;
            return Formula::iff(lhs, parse_iff());
        }
        return lhs;
    }

    Formula parse_implies() {
        Formula lhs = parse_or();
        skip_ws();
        if (text.compare(pos, 2, "->") == 0) {
            pos += 2;
            return Formula::implies(lhs, parse_implies());
        }
        return lhs;
    }

    Formula parse_or() {
        Formula lhs = parse_and();
        while (true) {
            skip_ws();
            if (pos < text.size() && text[pos] == '|') {
                ++pos;
                lhs = Formula::disjunction(lhs, parse_and());
            } else {
                return lhs;
            }
        }
    }

    Formula parse_and() {
        Formula lhs = parse_unary();
        while (true) {
            skip_ws();
            if (pos < text.size() && text[pos] == '&') {
                ++pos;
                lhs = Formula::conjunction(lhs, parse_unary());
            } else {
                return lhs;
            }
        }
    }

    Formula parse_unary() {
        skip_ws();
        if (eat("~")) return Formula::negation(parse_unary());
        if (eat("[]")) return Formula::box(parse_unary());
        // "<->" never reaches here (binary operators are consumed by the
        // levels above), so '<' must start a diamond.
        if (eat("<>")) return Formula::diamond(parse_unary());
        return parse_primary();
    }

    Formula parse_primary() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of input");
        if (eat("(")) {
            Formula f = parse_formula();
            if (!eat(")")) fail("expected ')'");
            return f;
        }
        if (eat("false")) return Formula::bottom();
        if (eat("true")) return Formula::top();
        if (text[pos] == 'p') {
            std::size_t start = ++pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (pos == start) fail("expected atom index after 'p'");
            long long idx = 0;
            for (std::size_t i = start; i < pos; ++i) {
                idx = idx * 10 + (text[i] - '0');
                if (idx > 1000000) fail("atom index overflow");
            }
            return Formula::atom(static_cast<int>(idx));
        }
        fail(std::string("unexpected character '") + text[pos] + "'");
    }
};

} // namespace

Formula parse(const std::string& text) {
    Parser p(text);
    Formula f = p.parse_formula();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return f;
}

std::string render(const Formula& f) {
    switch (f.kind()) {
        case Formula::Kind::Bottom: return "false";
        case Formula::Kind::Atom: return "p" + std::to_string(f.atom_index());
        case Formula::Kind::Not: return "~(" + render(f.child()) + ")";
        case Formula::Kind::And: return "(" + render(f.left()) + " & " + render(f.right()) + ")";
        case Formula::Kind::Box: return "[](" + render(f.child()) + ")";
    }
    return "false";
}

} // namespace nbhd
