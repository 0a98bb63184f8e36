#include "uekit/equivalence.hpp"

#include "uekit/error.hpp"
#include "uekit/semantics.hpp"

#include "json.hpp"

#include <algorithm>
#include <map>
#include <bit>
#include <functional>
#include <unordered_set>

namespace uekit {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json names_of(const StateSet& x, const std::vector<std::string>& states) {
    ordered_json out = ordered_json::array();
    for (std::size_t i : x.indices()) {
        out.push_back(states[i]);
    }
    return out;
}

// Block masks in order of increasing popcount, then value.
std::vector<std::uint64_t> masks_by_popcount(std::size_t k) {
    std::vector<std::uint64_t> out(std::size_t{1} << k);
    for (std::uint64_t i = 0; i < out.size(); ++i) {
        out[i] = i;
    }
    std::stable_sort(out.begin(), out.end(),
                     [](std::uint64_t a, std::uint64_t b) { return std::popcount(a) < std::popcount(b); });
    return out;
}

StateSet union_of(const std::vector<StateSet>& blocks, std::uint64_t mask, std::size_t width) {
    StateSet out = StateSet::empty(width);
    for (std::uint64_t b = mask; b != 0; b &= b - 1) {
        out |= blocks[static_cast<std::size_t>(std::countr_zero(b))];
    }
    return out;
}

Formula disjunction_of(const std::vector<Formula>& witnesses, std::uint64_t mask) {
    std::optional<Formula> out;
    for (std::uint64_t b = mask; b != 0; b &= b - 1) {
        const Formula& w = witnesses[static_cast<std::size_t>(std::countr_zero(b))];
        out = out ? Formula::disj(*out, w) : w;
    }
    return *out;
}

// A formula for the union of the masked blocks: the disjunction of their
// witnesses, or the negated disjunction of the rest when that is smaller.
Formula union_witness(const std::vector<Formula>& witnesses, std::uint64_t mask) {
    const std::uint64_t all = StateSet::mask_for(witnesses.size());
    if (mask == 0) {
        return Formula::bot();
    }
    if (mask == all) {
        return Formula::top();
    }
    Formula direct = disjunction_of(witnesses, mask);
    Formula negated = Formula::neg(disjunction_of(witnesses, all & ~mask));
    return formula_size(negated) < formula_size(direct) ? negated : direct;
}

class Refiner {
public:
    explicit Refiner(std::size_t width) : width_{width} {
        if (width_ > 0) {
            blocks_.push_back(StateSet::full(width_));
            witnesses_.push_back(Formula::top());
        }
    }

    // Splits every block that g cuts; records g when it cut something.
    bool refine(const StateSet& g, const Formula& gw) {
        bool split = false;
        for (std::size_t i = 0; i < blocks_.size(); ++i) {
            const StateSet inside = blocks_[i] & g;
            const StateSet outside = blocks_[i] - g;
            if (inside.none() || outside.none()) {
                continue;
            }
            const Formula& f = witnesses_[i];
            const bool trivial = f.op() == Op::top;
            Formula fin = trivial ? gw : Formula::conj(f, gw);
            Formula fout = trivial ? Formula::neg(gw) : Formula::conj(f, Formula::neg(gw));
            blocks_[i] = inside;
            witnesses_[i] = std::move(fin);
            blocks_.insert(blocks_.begin() + static_cast<std::ptrdiff_t>(i) + 1, outside);
            witnesses_.insert(witnesses_.begin() + static_cast<std::ptrdiff_t>(i) + 1, std::move(fout));
            ++i;
            split = true;
        }
        if (split) {
            generators_.push_back({g, gw});
        }
        return split;
    }

    [[nodiscard]] bool is_union(const StateSet& y) const {
        return std::all_of(blocks_.begin(), blocks_.end(), [&](const StateSet& b) {
            const StateSet part = b & y;
            return part.none() || part == b;
        });
    }

    std::vector<StateSet> blocks_;
    std::vector<Formula> witnesses_;
    std::vector<DefinableClosure::Generator> generators_;

private:
    std::size_t width_;
};

struct ClosureOp {
    std::string name;
    Op modality;
    std::function<StateSet(const StateSet&)> apply;
};

ClosureOp closure_op(const Model& m, Lang lang) {
    if (const auto* k = std::get_if<KripkeModel>(&m)) {
        if (lang == Lang::box) {
            return {"m_box", Op::box, [k](const StateSet& x) { return m_box(*k, x); }};
        }
        return {"m_nabla", Op::nabla, [k](const StateSet& x) { return m_nabla(*k, x); }};
    }
    const auto* nm = &std::get<NeighborhoodModel>(m);
    if (lang == Lang::box) {
        return {"m_n", Op::box, [nm](const StateSet& x) { return m_n(*nm, x); }};
    }
    // Neighborhood models have delta as primitive; m_c is its set operator.
    return {"m_c", Op::delta, [nm](const StateSet& x) { return m_c(*nm, x); }};
}

} // namespace

DefinableClosure::DefinableClosure(std::vector<std::string> states, Lang lang, std::vector<std::string> ops,
                                   std::vector<StateSet> blocks, std::vector<Formula> block_witnesses,
                                   std::vector<Generator> generators)
    : states_{std::move(states)},
      lang_{lang},
      ops_{std::move(ops)},
      blocks_{std::move(blocks)},
      block_witnesses_{std::move(block_witnesses)},
      generators_{std::move(generators)},
      block_index_(states_.size(), 0) {
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
        for (std::size_t s : blocks_[b].indices()) {
            block_index_[s] = b;
        }
    }
}

bool DefinableClosure::contains(const StateSet& x) const {
    if (x.width() != width()) {
        return false;
    }
    return std::all_of(blocks_.begin(), blocks_.end(), [&](const StateSet& b) {
        const StateSet part = b & x;
        return part.none() || part == b;
    });
}

std::vector<StateSet> DefinableClosure::members() const {
    if (blocks_.size() > 16) {
        throw SemanticError{"closure has too many members to list"};
    }
    std::vector<StateSet> out;
    const std::uint64_t limit = std::uint64_t{1} << blocks_.size();
    for (std::uint64_t mask = 0; mask < limit; ++mask) {
        out.push_back(union_of(blocks_, mask, width()));
    }
    return out;
}

std::optional<Formula> DefinableClosure::witness(const StateSet& x) const {
    if (!contains(x)) {
        return std::nullopt;
    }
    std::uint64_t mask = 0;
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
        if (blocks_[b].subset_of(x)) {
            mask |= std::uint64_t{1} << b;
        }
    }
    return union_witness(block_witnesses_, mask);
}

std::size_t DefinableClosure::block_of(std::size_t state) const {
    if (state >= width()) {
        throw SemanticError{"state index " + std::to_string(state) + " out of range"};
    }
    return block_index_[state];
}

std::optional<Formula> DefinableClosure::separator(std::size_t a, std::size_t b) const {
    if (same_class(a, b)) {
        return std::nullopt;
    }
    for (const auto& g : generators_) {
        if (g.set.contains(a) != g.set.contains(b)) {
            return g.witness;
        }
    }
    // Unreachable: every split of the partition is recorded as a generator.
    throw SemanticError{"closure lost the generator separating two blocks"};
}

std::string DefinableClosure::to_json() const {
    ordered_json j;
    j["lang"] = uekit::to_string(lang_);
    j["ops"] = ops_;
    j["size"] = size();
    ordered_json blocks = ordered_json::array();
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
        blocks.push_back({{"states", names_of(blocks_[b], states_)}, {"witness", print_formula(block_witnesses_[b])}});
    }
    j["blocks"] = std::move(blocks);
    ordered_json gens = ordered_json::array();
    for (const auto& g : generators_) {
        gens.push_back({{"states", names_of(g.set, states_)}, {"witness", print_formula(g.witness)}});
    }
    j["generators"] = std::move(gens);
    return j.dump(2);
}

DefinableClosure definable_closure(const Model& m, Lang lang) {
    const std::size_t n = model_size(m);
    if (n > closure_state_cap) {
        throw SemanticError{"definable closure over " + std::to_string(n) + " states exceeds the cap of " +
                            std::to_string(closure_state_cap)};
    }
    const ClosureOp op = closure_op(m, lang);
    const Valuation& val = std::visit([](const auto& km) -> const Valuation& { return km.valuation(); }, m);

    Refiner r{n};
    for (const auto& [atom, set] : val) {
        r.refine(set, Formula::atom(atom));
    }

    // Sets already pushed through the operator stay unions of blocks under
    // further refinement, so each is visited once.
    std::unordered_set<std::uint64_t> seen;
    bool changed = n > 0;
    while (changed) {
        changed = false;
        for (std::uint64_t mask : masks_by_popcount(r.blocks_.size())) {
            const StateSet x = union_of(r.blocks_, mask, n);
            if (!seen.insert(x.bits()).second) {
                continue;
            }
            const StateSet y = op.apply(x);
            if (!r.is_union(y)) {
                r.refine(y, Formula::unary(op.modality, union_witness(r.witnesses_, mask)));
                changed = true;
                break;
            }
        }
    }

    // Present blocks in order of their least state.
    std::vector<std::size_t> order(r.blocks_.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return r.blocks_[a].first() < r.blocks_[b].first(); });
    std::vector<StateSet> blocks;
    std::vector<Formula> witnesses;
    for (std::size_t i : order) {
        blocks.push_back(r.blocks_[i]);
        witnesses.push_back(r.witnesses_[i]);
    }
    return DefinableClosure{state_names(m), lang, {op.name}, std::move(blocks), std::move(witnesses),
                            std::move(r.generators_)};
}

bool logically_equivalent(const Model& m1, std::size_t w1, const Model& m2, std::size_t w2, Lang lang) {
    return !distinguishing_formula(m1, w1, m2, w2, lang).has_value();
}

std::optional<Formula> distinguishing_formula(const Model& m1, std::size_t w1, const Model& m2, std::size_t w2,
                                              Lang lang) {
    if (w1 >= model_size(m1) || w2 >= model_size(m2)) {
        throw SemanticError{"state index out of range"};
    }
    const Model u = disjoint_union(m1, m2);
    return definable_closure(u, lang).separator(w1, model_size(m1) + w2);
}

std::vector<std::size_t> bisimulation_classes(const KripkeModel& m) {
    const std::size_t n = m.size();
    std::vector<std::size_t> cls(n, 0);
    {
        std::map<std::vector<bool>, std::size_t> ids;
        for (std::size_t s = 0; s < n; ++s) {
            std::vector<bool> atoms;
            for (const auto& [atom, set] : m.valuation()) {
                atoms.push_back(set.contains(s));
            }
            cls[s] = ids.emplace(atoms, ids.size()).first->second;
        }
    }
    std::size_t count = 0;
    for (;;) {
        std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> ids;
        std::vector<std::size_t> next(n, 0);
        for (std::size_t s = 0; s < n; ++s) {
            std::vector<std::size_t> succ;
            for (std::size_t t : m.successors(s).indices()) {
                succ.push_back(cls[t]);
            }
            std::sort(succ.begin(), succ.end());
            succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
            next[s] = ids.emplace(std::make_pair(cls[s], std::move(succ)), ids.size()).first->second;
        }
        cls = std::move(next);
        if (ids.size() == count) {
            return cls;
        }
        count = ids.size();
    }
}

bool kripke_bisimilar(const Model& m1, std::size_t w1, const Model& m2, std::size_t w2) {
    if (kind_of(m1) != ModelKind::kripke || kind_of(m2) != ModelKind::kripke) {
        throw ModelError{ModelErrorKind::kind_mismatch, "bisimilarity is defined for Kripke models only"};
    }
    if (w1 >= model_size(m1) || w2 >= model_size(m2)) {
        throw SemanticError{"state index out of range"};
    }
    const KripkeModel u = disjoint_union(std::get<KripkeModel>(m1), std::get<KripkeModel>(m2));
    const auto cls = bisimulation_classes(u);
    return cls[w1] == cls[model_size(m1) + w2];
}

namespace {

struct SaturationContext {
    SaturationReport& report;
    // Bitmask of the fragment formulas true at each state, by point queries.
    std::vector<std::uint64_t> truth;

    // Compactness of one target set: whenever every subset of Gamma is
    // satisfied at some state of target, the intersection of the extensions
    // of Gamma meets target.
    void check(std::size_t s, const StateSet& target) {
        const std::size_t k = report.fragment.size();
        const std::uint64_t limit = std::uint64_t{1} << k;
        std::vector<char> finitely(limit, 0);
        for (std::uint64_t gamma = 0; gamma < limit; ++gamma) {
            bool pointwise = false;
            for (std::size_t t : target.indices()) {
                if ((truth[t] & gamma) == gamma) {
                    pointwise = true;
                    break;
                }
            }
            bool fin = pointwise;
            for (std::uint64_t b = gamma; b != 0 && fin; b &= b - 1) {
                fin = finitely[gamma & ~(b & -b)] != 0;
            }
            finitely[gamma] = fin ? 1 : 0;

            StateSet meet = target;
            for (std::uint64_t b = gamma; b != 0; b &= b - 1) {
                meet &= report.fragment_extensions[static_cast<std::size_t>(std::countr_zero(b))];
            }
            ++report.checked;
            if (fin && meet.none()) {
                SaturationViolation v{s, target, {}};
                for (std::uint64_t b = gamma; b != 0; b &= b - 1) {
                    v.gamma.push_back(static_cast<std::size_t>(std::countr_zero(b)));
                }
                report.violations.push_back(std::move(v));
            }
        }
    }
};

template <typename M>
SaturationContext start_report(SaturationReport& report, const M& m, const std::vector<Formula>& fragment,
                               std::size_t cap) {
    if (fragment.size() > cap) {
        throw SemanticError{"fragment of " + std::to_string(fragment.size()) + " formulas exceeds the cap of " +
                            std::to_string(cap)};
    }
    report.states = m.states();
    report.fragment = fragment;
    SaturationContext ctx{report, std::vector<std::uint64_t>(m.size(), 0)};
    for (std::size_t i = 0; i < fragment.size(); ++i) {
        report.fragment_extensions.push_back(extension(m, fragment[i]));
        for (std::size_t s = 0; s < m.size(); ++s) {
            if (satisfies(m, s, fragment[i])) {
                ctx.truth[s] |= std::uint64_t{1} << i;
            }
        }
    }
    return ctx;
}

} // namespace

SaturationReport check_nabla_saturation(const KripkeModel& m, const std::vector<Formula>& fragment,
                                        std::size_t cap) {
    SaturationReport report;
    SaturationContext ctx = start_report(report, m, fragment, cap);
    for (std::size_t s = 0; s < m.size(); ++s) {
        ctx.check(s, m.successors(s));
    }
    return report;
}

SaturationReport check_delta_saturation(const NeighborhoodModel& m, const std::vector<Formula>& fragment,
                                        std::size_t cap) {
    SaturationReport report;
    SaturationContext ctx = start_report(report, m, fragment, cap);
    const auto closed = [&](const StateSet& x) {
        for (std::size_t t : x.indices()) {
            for (std::size_t u = 0; u < m.size(); ++u) {
                if (ctx.truth[u] == ctx.truth[t] && !x.contains(u)) {
                    return false;
                }
            }
        }
        return true;
    };
    for (std::size_t s = 0; s < m.size(); ++s) {
        for (const auto& x : m.neighborhood(s).members()) {
            if (closed(x)) {
                ctx.check(s, x);
                ctx.check(s, ~x);
            }
        }
    }
    return report;
}

std::string SaturationReport::to_json() const {
    ordered_json j;
    ordered_json vs = ordered_json::array();
    for (const auto& v : violations) {
        ordered_json gamma = ordered_json::array();
        for (std::size_t i : v.gamma) {
            gamma.push_back(print_formula(fragment[i]));
        }
        vs.push_back({{"state", states[v.state]}, {"target", names_of(v.target, states)}, {"gamma", gamma}});
    }
    j["violations"] = std::move(vs);
    ordered_json wf = ordered_json::object();
    for (std::size_t i = 0; i < fragment.size(); ++i) {
        wf[print_formula(fragment[i])] = names_of(fragment_extensions[i], states);
    }
    j["witness_formulas"] = std::move(wf);
    j["checked"] = checked;
    return j.dump(2);
}

TransferResult equivalence_transfer(const Model& m1, std::size_t w1, const Model& m2, std::size_t w2, Lang lang,
                                    UEKind kind) {
    if (kind_of(m1) != kind_of(m2)) {
        throw ModelError{ModelErrorKind::kind_mismatch, "equivalence transfer needs two models of the same kind"};
    }
    const UEModel u1 = build_ue(m1, kind);
    const UEModel u2 = build_ue(m2, kind);
    TransferResult out;
    out.lhs = logically_equivalent(m1, w1, m2, w2, lang);
    out.rhs = logically_equivalent(u1.structure, w1, u2.structure, w2, lang);
    return out;
}

} // namespace uekit
