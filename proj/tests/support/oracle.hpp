#pragma once

// Reference implementations for the tests. Nothing here calls the library's
// set operators or evaluator: truth is computed state by state from the
// satisfaction clauses, and definable sets are built by bounded enumeration.

#include "uekit/formula.hpp"
#include "uekit/models.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace oracle {

using uekit::Formula;
using uekit::KripkeModel;
using uekit::NeighborhoodModel;
using uekit::Op;
using uekit::StateSet;

inline bool holds(const KripkeModel& m, std::size_t s, const Formula& f);
inline bool holds(const NeighborhoodModel& m, std::size_t s, const Formula& f);

template <typename M>
bool holds_boolean(const M& m, std::size_t s, const Formula& f, bool& handled) {
    handled = true;
    switch (f.op()) {
    case Op::atom: {
        const auto it = m.valuation().find(f.name());
        return it != m.valuation().end() && it->second.contains(s);
    }
    case Op::top: return true;
    case Op::bot: return false;
    case Op::neg: return !holds(m, s, f.arg());
    case Op::conj: return holds(m, s, f.lhs()) && holds(m, s, f.rhs());
    case Op::disj: return holds(m, s, f.lhs()) || holds(m, s, f.rhs());
    case Op::implies: return !holds(m, s, f.lhs()) || holds(m, s, f.rhs());
    default: handled = false; return false;
    }
}

inline bool holds(const KripkeModel& m, std::size_t s, const Formula& f) {
    bool handled = false;
    const bool b = holds_boolean(m, s, f, handled);
    if (handled) {
        return b;
    }
    bool some_true = false;
    bool some_false = false;
    for (std::size_t t = 0; t < m.size(); ++t) {
        if (m.related(s, t)) {
            (holds(m, t, f.arg()) ? some_true : some_false) = true;
        }
    }
    switch (f.op()) {
    case Op::box: return !some_false;
    case Op::diamond: return some_true;
    case Op::nabla: return some_true && some_false;
    case Op::delta: return !(some_true && some_false);
    default: throw std::logic_error{"unexpected operator"};
    }
}

inline bool holds(const NeighborhoodModel& m, std::size_t s, const Formula& f) {
    bool handled = false;
    const bool b = holds_boolean(m, s, f, handled);
    if (handled) {
        return b;
    }
    StateSet truth = StateSet::empty(m.size());
    for (std::size_t t = 0; t < m.size(); ++t) {
        if (holds(m, t, f.arg())) {
            truth.insert(t);
        }
    }
    const auto& n = m.neighborhood(s);
    switch (f.op()) {
    case Op::box: return n.contains(truth);
    case Op::delta: return n.contains(truth) || n.contains(~truth);
    case Op::nabla: return !(n.contains(truth) || n.contains(~truth));
    default: throw std::logic_error{"no neighborhood clause for this operator"};
    }
}

inline bool holds(const uekit::Model& m, std::size_t s, const Formula& f) {
    return std::visit([&](const auto& km) { return holds(km, s, f); }, m);
}

/// Set operator of a language on one model, computed pointwise from the clauses.
inline StateSet apply_op(const uekit::Model& m, uekit::Lang lang, const StateSet& x) {
    const std::size_t n = uekit::model_size(m);
    StateSet out = StateSet::empty(n);
    for (std::size_t s = 0; s < n; ++s) {
        bool in = false;
        if (const auto* k = std::get_if<KripkeModel>(&m)) {
            bool some_in = false;
            bool some_out = false;
            for (std::size_t t = 0; t < n; ++t) {
                if (k->related(s, t)) {
                    (x.contains(t) ? some_in : some_out) = true;
                }
            }
            in = lang == uekit::Lang::box ? !some_out : (some_in && some_out);
        } else {
            const auto& nb = std::get<NeighborhoodModel>(m).neighborhood(s);
            in = lang == uekit::Lang::box ? nb.contains(x) : (nb.contains(x) || nb.contains(~x));
        }
        if (in) {
            out.insert(s);
        }
    }
    return out;
}

inline Op modality_of(const uekit::Model& m, uekit::Lang lang) {
    if (lang == uekit::Lang::box) {
        return Op::box;
    }
    return std::holds_alternative<KripkeModel>(m) ? Op::nabla : Op::delta;
}

/// Definable sets of formulas of modal depth at most depth, evaluated on two
/// models side by side. A set is a pair (extension in a, extension in b),
/// packed as a's bits followed by b's bits.
///
/// Each level is the boolean closure of the atoms and the operator images of
/// the previous level. The boolean closure is kept as the partition it induces,
/// so dedup is semantic.
struct Fragment {
    std::size_t width_a = 0;
    std::size_t width_b = 0;
    /// Generating sets and a formula for each.
    std::vector<std::uint64_t> generators;
    std::vector<Formula> formulas;
    std::vector<std::uint64_t> blocks;
    /// Indices of the generators that cut a block; these alone carve out every block.
    std::vector<std::size_t> splitters;

    [[nodiscard]] bool bit_a(std::uint64_t set, std::size_t w) const { return ((set >> w) & 1U) != 0; }
    [[nodiscard]] bool bit_b(std::uint64_t set, std::size_t w) const { return ((set >> (width_a + w)) & 1U) != 0; }

    /// Every member of the boolean closure agrees at (a, wa) and (b, wb).
    [[nodiscard]] bool agree(std::size_t wa, std::size_t wb) const {
        for (std::uint64_t g : generators) {
            if (bit_a(g, wa) != bit_b(g, wb)) {
                return false;
            }
        }
        return true;
    }

    /// Same test for two points of a.
    [[nodiscard]] bool agree_a(std::size_t u, std::size_t v) const {
        for (std::uint64_t g : generators) {
            if (bit_a(g, u) != bit_a(g, v)) {
                return false;
            }
        }
        return true;
    }

    [[nodiscard]] std::size_t member_count() const { return std::size_t{1} << blocks.size(); }
};

inline void refine(Fragment& fr, std::uint64_t g, const Formula& f) {
    bool split = false;
    std::vector<std::uint64_t> next;
    for (std::uint64_t b : fr.blocks) {
        const std::uint64_t in = b & g;
        const std::uint64_t out = b & ~g;
        if (in != 0 && out != 0) {
            split = true;
            next.push_back(in);
            next.push_back(out);
        } else {
            next.push_back(b);
        }
    }
    fr.blocks = std::move(next);
    if (split) {
        fr.splitters.push_back(fr.generators.size());
    }
    // Generators that split nothing are kept too: they are the fragment's formulas.
    fr.generators.push_back(g);
    fr.formulas.push_back(f);
}

inline Fragment enumerate_fragment(const uekit::Model& a, const uekit::Model& b, uekit::Lang lang, std::size_t depth) {
    Fragment fr;
    fr.width_a = uekit::model_size(a);
    fr.width_b = uekit::model_size(b);
    const std::size_t width = fr.width_a + fr.width_b;
    if (width > 20) {
        throw std::invalid_argument{"fragment enumeration over more than 20 states"};
    }
    const std::uint64_t all = (std::uint64_t{1} << width) - 1;
    fr.blocks.push_back(all);

    const auto pack = [&](const StateSet& xa, const StateSet& xb) { return xa.bits() | (xb.bits() << fr.width_a); };
    const auto unpack_a = [&](std::uint64_t x) { return StateSet{fr.width_a, x}; };
    const auto unpack_b = [&](std::uint64_t x) { return StateSet{fr.width_b, x >> fr.width_a}; };

    std::map<std::string, std::pair<StateSet, StateSet>> atoms;
    const auto add_atoms = [&](const uekit::Model& m, bool left) {
        const auto& val = std::visit([](const auto& km) -> const uekit::Valuation& { return km.valuation(); }, m);
        for (const auto& [p, set] : val) {
            auto [it, fresh] = atoms.try_emplace(p, StateSet::empty(fr.width_a), StateSet::empty(fr.width_b));
            (left ? it->second.first : it->second.second) = set;
        }
    };
    add_atoms(a, true);
    add_atoms(b, false);
    for (const auto& [p, sets] : atoms) {
        refine(fr, pack(sets.first, sets.second), Formula::atom(p));
    }

    const Op modality = modality_of(a, lang);
    for (std::size_t level = 0; level < depth; ++level) {
        // Snapshot of the current closure: unions of the current blocks.
        const std::vector<std::uint64_t> blocks = fr.blocks;
        const std::vector<std::size_t> splitters = fr.splitters;
        const std::uint64_t limit = std::uint64_t{1} << blocks.size();
        std::vector<std::uint64_t> images;
        for (std::uint64_t mask = 0; mask < limit; ++mask) {
            std::uint64_t x = 0;
            for (std::size_t i = 0; i < blocks.size(); ++i) {
                if (((mask >> i) & 1U) != 0) {
                    x |= blocks[i];
                }
            }
            const std::uint64_t img = pack(apply_op(a, lang, unpack_a(x)), apply_op(b, lang, unpack_b(x)));
            if (std::find(images.begin(), images.end(), img) != images.end()) {
                continue;
            }
            images.push_back(img);
            // A formula for x: disjunction over its blocks of the conjunction
            // of generator literals that carve the block out.
            std::optional<Formula> fx;
            for (std::size_t i = 0; i < blocks.size(); ++i) {
                if (((mask >> i) & 1U) == 0) {
                    continue;
                }
                std::optional<Formula> block_formula;
                for (std::size_t g : splitters) {
                    const bool inside = (blocks[i] & fr.generators[g]) != 0;
                    Formula lit = inside ? fr.formulas[g] : Formula::neg(fr.formulas[g]);
                    block_formula = block_formula ? Formula::conj(*block_formula, lit) : lit;
                }
                const Formula bf = block_formula ? *block_formula : Formula::top();
                fx = fx ? Formula::disj(*fx, bf) : bf;
            }
            refine(fr, img, Formula::unary(modality, fx ? *fx : Formula::bot()));
        }
    }
    return fr;
}

} // namespace oracle
