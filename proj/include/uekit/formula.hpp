#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace uekit {

/// The two modal languages: L(box) over [] (with <> as its dual) and L(nabla) over ? and #.
enum class Lang { box, nabla };

std::string to_string(Lang lang);
std::optional<Lang> parse_lang(std::string_view text);

enum class Op { atom, top, bot, neg, conj, disj, implies, box, diamond, nabla, delta };

/// Immutable formula of L(box) / L(nabla). Nodes are shared, so copies are cheap
/// and values can be handed across threads freely.
class Formula {
public:
    static Formula atom(std::string name);
    static Formula top();
    static Formula bot();
    static Formula neg(Formula f);
    static Formula conj(Formula a, Formula b);
    static Formula disj(Formula a, Formula b);
    static Formula implies(Formula a, Formula b);
    static Formula box(Formula f);
    static Formula diamond(Formula f);
    static Formula nabla(Formula f);
    static Formula delta(Formula f);

    /// Applies a unary connective (neg or one of the modalities).
    static Formula unary(Op op, Formula f);
    static Formula binary(Op op, Formula a, Formula b);

    [[nodiscard]] Op op() const { return node_->op; }
    [[nodiscard]] const std::string& name() const { return node_->name; }
    [[nodiscard]] const Formula& lhs() const { return *node_->lhs; }
    [[nodiscard]] const Formula& rhs() const { return *node_->rhs; }
    /// The operand of a unary connective.
    [[nodiscard]] const Formula& arg() const { return *node_->lhs; }

    [[nodiscard]] bool is_unary() const;
    [[nodiscard]] bool is_binary() const;
    [[nodiscard]] bool is_modal() const;

    friend bool operator==(const Formula& a, const Formula& b);

private:
    struct Node {
        Op op;
        std::string name;
        std::shared_ptr<const Formula> lhs;
        std::shared_ptr<const Formula> rhs;
    };

    explicit Formula(std::shared_ptr<const Node> n) : node_{std::move(n)} {}

    std::shared_ptr<const Node> node_;
};

/// Parses the ASCII grammar. Precedence from tightest: unary (~ [] <> ? #), &, |, ->.
/// '&' and '|' associate left, '->' right. Throws ParseError.
Formula parse_formula(std::string_view text);

/// Fully parenthesized canonical text; parse_formula inverts it.
std::string print_formula(const Formula& f);

std::size_t modal_depth(const Formula& f);

/// Number of nodes in the syntax tree.
std::size_t formula_size(const Formula& f);

/// Atom names occurring in f.
std::set<std::string> atoms_of(const Formula& f);

/// Rewrites nabla(f) to <>f & <>~f and delta(f) to its negation, recursively.
Formula nabla_to_box(const Formula& f);

} // namespace uekit
