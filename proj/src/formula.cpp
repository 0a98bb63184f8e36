#include "uekit/formula.hpp"

#include "uekit/error.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <vector>

namespace uekit {

namespace {

std::string join_expected(const std::vector<std::string>& expected) {
    std::string out;
    for (const auto& e : expected) {
        if (!out.empty()) {
            out += ", ";
        }
        out += e;
    }
    return out;
}

} // namespace

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& found)
    : std::runtime_error{"syntax error at offset " + std::to_string(offset) + ": expected one of {" +
                         join_expected(expected) + "}, found " + found},
      offset_{offset},
      expected_{std::move(expected)} {}

std::string to_string(Lang lang) { return lang == Lang::box ? "box" : "nabla"; }

std::optional<Lang> parse_lang(std::string_view text) {
    if (text == "box") {
        return Lang::box;
    }
    if (text == "nabla") {
        return Lang::nabla;
    }
    return std::nullopt;
}

Formula Formula::atom(std::string name) {
    return Formula{std::make_shared<const Node>(Node{Op::atom, std::move(name), nullptr, nullptr})};
}
Formula Formula::top() { return Formula{std::make_shared<const Node>(Node{Op::top, {}, nullptr, nullptr})}; }
Formula Formula::bot() { return Formula{std::make_shared<const Node>(Node{Op::bot, {}, nullptr, nullptr})}; }

Formula Formula::unary(Op op, Formula f) {
    return Formula{std::make_shared<const Node>(Node{op, {}, std::make_shared<const Formula>(std::move(f)), nullptr})};
}

Formula Formula::binary(Op op, Formula a, Formula b) {
    return Formula{std::make_shared<const Node>(Node{op, {}, std::make_shared<const Formula>(std::move(a)),
                                                     std::make_shared<const Formula>(std::move(b))})};
}

Formula Formula::neg(Formula f) { return unary(Op::neg, std::move(f)); }
Formula Formula::box(Formula f) { return unary(Op::box, std::move(f)); }
Formula Formula::diamond(Formula f) { return unary(Op::diamond, std::move(f)); }
Formula Formula::nabla(Formula f) { return unary(Op::nabla, std::move(f)); }
Formula Formula::delta(Formula f) { return unary(Op::delta, std::move(f)); }
Formula Formula::conj(Formula a, Formula b) { return binary(Op::conj, std::move(a), std::move(b)); }
Formula Formula::disj(Formula a, Formula b) { return binary(Op::disj, std::move(a), std::move(b)); }
Formula Formula::implies(Formula a, Formula b) { return binary(Op::implies, std::move(a), std::move(b)); }

bool Formula::is_unary() const {
    switch (op()) {
    case Op::neg:
    case Op::box:
    case Op::diamond:
    case Op::nabla:
    case Op::delta:
        return true;
    default:
        return false;
    }
}

bool Formula::is_binary() const { return op() == Op::conj || op() == Op::disj || op() == Op::implies; }

bool Formula::is_modal() const { return is_unary() && op() != Op::neg; }

bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) {
        return true;
    }
    if (a.op() != b.op()) {
        return false;
    }
    if (a.op() == Op::atom) {
        return a.name() == b.name();
    }
    if (a.is_unary()) {
        return a.arg() == b.arg();
    }
    if (a.is_binary()) {
        return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    }
    return true;
}

// ---------------------------------------------------------------------------
// Parser: recursive descent over the byte string.

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_{text} {}

    Formula parse() {
        Formula f = implication();
        skip_ws();
        if (pos_ != text_.size()) {
            fail({"'&'", "'|'", "'->'", "end of input"});
        }
        return f;
    }

private:
    Formula implication() {
        Formula lhs = disjunction();
        if (accept("->")) {
            return Formula::implies(std::move(lhs), implication());
        }
        return lhs;
    }

    Formula disjunction() {
        Formula f = conjunction();
        while (accept("|")) {
            f = Formula::disj(std::move(f), conjunction());
        }
        return f;
    }

    Formula conjunction() {
        Formula f = unary();
        while (accept("&")) {
            f = Formula::conj(std::move(f), unary());
        }
        return f;
    }

    Formula unary() {
        if (accept("~")) {
            return Formula::neg(unary());
        }
        if (accept("[]")) {
            return Formula::box(unary());
        }
        if (accept("<>")) {
            return Formula::diamond(unary());
        }
        if (accept("?")) {
            return Formula::nabla(unary());
        }
        if (accept("#")) {
            return Formula::delta(unary());
        }
        return primary();
    }

    Formula primary() {
        skip_ws();
        if (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == '(') {
                ++pos_;
                Formula f = implication();
                if (!accept(")")) {
                    fail({"')'", "'&'", "'|'", "'->'"});
                }
                return f;
            }
            if (c == 'T' || c == 'F') {
                ++pos_;
                return c == 'T' ? Formula::top() : Formula::bot();
            }
            if (c >= 'a' && c <= 'z') {
                const std::size_t start = pos_;
                while (pos_ < text_.size() && is_ident_char(text_[pos_])) {
                    ++pos_;
                }
                return Formula::atom(std::string{text_.substr(start, pos_ - start)});
            }
        }
        fail({"identifier", "'T'", "'F'", "'('", "'~'", "'[]'", "'<>'", "'?'", "'#'"});
    }

    static bool is_ident_char(char c) { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_'; }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) {
            ++pos_;
        }
    }

    bool accept(std::string_view token) {
        skip_ws();
        if (text_.substr(pos_, token.size()) == token) {
            pos_ += token.size();
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(std::vector<std::string> expected) const {
        std::string found = pos_ < text_.size() ? "'" + std::string{text_.substr(pos_, 1)} + "'" : "end of input";
        throw ParseError{pos_, std::move(expected), found};
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

const char* unary_symbol(Op op) {
    switch (op) {
    case Op::neg: return "~";
    case Op::box: return "[]";
    case Op::diamond: return "<>";
    case Op::nabla: return "?";
    case Op::delta: return "#";
    default: return "";
    }
}

const char* binary_symbol(Op op) {
    switch (op) {
    case Op::conj: return " & ";
    case Op::disj: return " | ";
    case Op::implies: return " -> ";
    default: return "";
    }
}

void print_to(const Formula& f, std::string& out) {
    switch (f.op()) {
    case Op::atom:
        out += f.name();
        return;
    case Op::top:
        out += 'T';
        return;
    case Op::bot:
        out += 'F';
        return;
    default:
        break;
    }
    if (f.is_unary()) {
        out += unary_symbol(f.op());
        out += '(';
        print_to(f.arg(), out);
        out += ')';
        return;
    }
    out += '(';
    print_to(f.lhs(), out);
    out += binary_symbol(f.op());
    print_to(f.rhs(), out);
    out += ')';
}

} // namespace

Formula parse_formula(std::string_view text) { return Parser{text}.parse(); }

std::string print_formula(const Formula& f) {
    std::string out;
    print_to(f, out);
    return out;
}

std::size_t modal_depth(const Formula& f) {
    if (f.is_unary()) {
        return modal_depth(f.arg()) + (f.is_modal() ? 1 : 0);
    }
    if (f.is_binary()) {
        return std::max(modal_depth(f.lhs()), modal_depth(f.rhs()));
    }
    return 0;
}

std::size_t formula_size(const Formula& f) {
    if (f.is_unary()) {
        return 1 + formula_size(f.arg());
    }
    if (f.is_binary()) {
        return 1 + formula_size(f.lhs()) + formula_size(f.rhs());
    }
    return 1;
}

namespace {

void collect_atoms(const Formula& f, std::set<std::string>& out) {
    if (f.op() == Op::atom) {
        out.insert(f.name());
    } else if (f.is_unary()) {
        collect_atoms(f.arg(), out);
    } else if (f.is_binary()) {
        collect_atoms(f.lhs(), out);
        collect_atoms(f.rhs(), out);
    }
}

} // namespace

std::set<std::string> atoms_of(const Formula& f) {
    std::set<std::string> out;
    collect_atoms(f, out);
    return out;
}

Formula nabla_to_box(const Formula& f) {
    if (f.is_binary()) {
        return Formula::binary(f.op(), nabla_to_box(f.lhs()), nabla_to_box(f.rhs()));
    }
    if (!f.is_unary()) {
        return f;
    }
    Formula inner = nabla_to_box(f.arg());
    switch (f.op()) {
    case Op::nabla:
        return Formula::conj(Formula::diamond(inner), Formula::diamond(Formula::neg(inner)));
    case Op::delta:
        return Formula::neg(Formula::conj(Formula::diamond(inner), Formula::diamond(Formula::neg(inner))));
    default:
        return Formula::unary(f.op(), std::move(inner));
    }
}

} // namespace uekit
