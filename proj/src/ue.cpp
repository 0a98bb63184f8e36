#include "uekit/ue.hpp"

#include "uekit/equivalence.hpp"
#include "uekit/error.hpp"
#include "uekit/semantics.hpp"

#include <algorithm>
#include <functional>

namespace uekit {

namespace {

void check_cap(std::size_t n) {
    if (n == 0) {
        throw SemanticError{"ultrafilter extension of an empty model"};
    }
    if (n > ue_state_cap) {
        throw SemanticError{"ultrafilter extension enumerates all subsets; " + std::to_string(n) +
                            " states exceeds the cap of " + std::to_string(ue_state_cap)};
    }
}

std::vector<std::string> point_names(const std::vector<std::string>& states) {
    std::vector<std::string> out;
    out.reserve(states.size());
    for (const auto& s : states) {
        out.push_back("pi_" + s);
    }
    return out;
}

// X in t, for a point t of the universe.
bool point_contains(const Ultrafilter& t, const StateSet& x, QuantifierMode mode) {
    return mode == QuantifierMode::literal ? t.contains(x) : x.contains(t.witness());
}

// V^ue(p) = { s | V(p) in s }.
Valuation ue_valuation(const Valuation& val, const std::vector<Ultrafilter>& points, QuantifierMode mode) {
    Valuation out;
    for (const auto& [atom, set] : val) {
        StateSet image = StateSet::empty(points.size());
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (point_contains(points[i], set, mode)) {
                image.insert(i);
            }
        }
        out.emplace(atom, image);
    }
    return out;
}

// All points t with Y in t for every guard Y.
StateSet points_containing_all(const std::vector<StateSet>& guards, const std::vector<Ultrafilter>& points,
                               QuantifierMode mode) {
    const std::size_t n = points.size();
    StateSet out = StateSet::empty(n);
    if (mode == QuantifierMode::principal_shortcut) {
        StateSet core = StateSet::full(n);
        for (const auto& y : guards) {
            core &= y;
        }
        for (std::size_t t = 0; t < n; ++t) {
            if (core.contains(points[t].witness())) {
                out.insert(t);
            }
        }
        return out;
    }
    for (std::size_t t = 0; t < n; ++t) {
        const bool all = std::all_of(guards.begin(), guards.end(), [&](const StateSet& y) { return points[t].contains(y); });
        if (all) {
            out.insert(t);
        }
    }
    return out;
}

// Decides "op(X) in s" for every point s and subset X, by the chosen route.
// The literal route tabulates op(X) for all X once and asks the ultrafilter;
// the shortcut evaluates the pointwise test at the generating state.
class ImageMembership {
public:
    using SetOp = std::function<StateSet(const StateSet&)>;
    using PointOp = std::function<bool(std::size_t, const StateSet&)>;

    ImageMembership(std::size_t n, const std::vector<Ultrafilter>& points, QuantifierMode mode, const SetOp& set_op,
                    PointOp point_op)
        : points_{points}, mode_{mode}, point_op_{std::move(point_op)} {
        if (mode_ == QuantifierMode::literal) {
            table_.reserve(std::size_t{1} << n);
            for_each_subset(n, [&](const StateSet& x) { table_.push_back(set_op(x)); });
        }
    }

    /// op(x) in s
    [[nodiscard]] bool in(std::size_t s, const StateSet& x) const {
        if (mode_ == QuantifierMode::literal) {
            return points_[s].contains(table_[x.bits()]);
        }
        return point_op_(points_[s].witness(), x);
    }

    /// op(x) & op(y) in s
    [[nodiscard]] bool both_in(std::size_t s, const StateSet& x, const StateSet& y) const {
        if (mode_ == QuantifierMode::literal) {
            return points_[s].contains(table_[x.bits()] & table_[y.bits()]);
        }
        const std::size_t w = points_[s].witness();
        return point_op_(w, x) && point_op_(w, y);
    }

private:
    const std::vector<Ultrafilter>& points_;
    QuantifierMode mode_;
    PointOp point_op_;
    std::vector<StateSet> table_;
};

UEModel finish_kripke(UEKind kind, const KripkeModel& m, std::vector<Ultrafilter> points, std::vector<StateSet> succ,
                      QuantifierMode mode) {
    Valuation val = ue_valuation(m.valuation(), points, mode);
    KripkeModel structure{point_names(m.states()), std::move(succ), std::move(val)};
    return UEModel{kind, m, std::move(points), std::move(structure)};
}

UEModel finish_nbhd(UEKind kind, const NeighborhoodModel& m, std::vector<Ultrafilter> points,
                    std::vector<Neighborhood> nbhd, QuantifierMode mode) {
    Valuation val = ue_valuation(m.valuation(), points, mode);
    NeighborhoodModel structure{point_names(m.states()), std::move(nbhd), std::move(val)};
    return UEModel{kind, m, std::move(points), std::move(structure)};
}

// N^ue(s) = { hat(X) | op(X) in s }
std::vector<Neighborhood> hat_neighborhoods(std::size_t n, const std::vector<Ultrafilter>& points,
                                            const ImageMembership& membership, QuantifierMode mode) {
    std::vector<Neighborhood> out;
    for (std::size_t s = 0; s < n; ++s) {
        std::vector<StateSet> family;
        for_each_subset(n, [&](const StateSet& x) {
            if (membership.in(s, x)) {
                family.push_back(mode == QuantifierMode::literal ? hat(x, points) : StateSet{n, x.bits()});
            }
        });
        out.emplace_back(std::move(family));
    }
    return out;
}

} // namespace

UEModel ue_normal(const KripkeModel& m, QuantifierMode mode) {
    const std::size_t n = m.size();
    check_cap(n);
    auto points = principal_universe(n);
    const ImageMembership box{n, points, mode, [&](const StateSet& x) { return m_box(m, x); },
                              [&](std::size_t w, const StateSet& x) { return in_m_box(m, w, x); }};

    // R^ue s t iff for all X: m_box(X) in s implies X in t.
    std::vector<StateSet> succ;
    for (std::size_t s = 0; s < n; ++s) {
        std::vector<StateSet> guards;
        for_each_subset(n, [&](const StateSet& x) {
            if (box.in(s, x)) {
                guards.push_back(x);
            }
        });
        succ.push_back(points_containing_all(guards, points, mode));
    }
    return finish_kripke(UEKind::normal, m, std::move(points), std::move(succ), mode);
}

UEModel ue_contingency_ea(const KripkeModel& m, QuantifierMode mode) {
    const std::size_t n = m.size();
    check_cap(n);
    auto points = principal_universe(n);
    const ImageMembership nabla{n, points, mode, [&](const StateSet& x) { return m_nabla(m, x); },
                                [&](std::size_t w, const StateSet& x) { return in_m_nabla(m, w, x); }};
    const ImageMembership delta{n, points, mode, [&](const StateSet& x) { return m_delta(m, x); },
                                [&](std::size_t w, const StateSet& x) { return in_m_delta(m, w, x); }};

    // R^ue s t iff some X has m_nabla(X) in s and, for all Y,
    // m_delta(Y) & m_delta(~X | Y) in s implies Y in t.
    std::vector<StateSet> succ;
    for (std::size_t s = 0; s < n; ++s) {
        StateSet targets = StateSet::empty(n);
        for_each_subset(n, [&](const StateSet& x) {
            if (!nabla.in(s, x)) {
                return;
            }
            std::vector<StateSet> guards;
            for_each_subset(n, [&](const StateSet& y) {
                if (delta.both_in(s, y, ~x | y)) {
                    guards.push_back(y);
                }
            });
            targets |= points_containing_all(guards, points, mode);
        });
        succ.push_back(targets);
    }
    return finish_kripke(UEKind::contingency_ea, m, std::move(points), std::move(succ), mode);
}

UEModel ue_contingency_a(const KripkeModel& m, QuantifierMode mode) {
    const std::size_t n = m.size();
    check_cap(n);
    auto points = principal_universe(n);
    const ImageMembership delta{n, points, mode, [&](const StateSet& x) { return m_delta(m, x); },
                                [&](std::size_t w, const StateSet& x) { return in_m_delta(m, w, x); }};

    // R^ue s t iff for all Y: (for all X, m_delta(X | Y) in s) implies Y in t.
    std::vector<StateSet> succ;
    for (std::size_t s = 0; s < n; ++s) {
        std::vector<StateSet> guards;
        for_each_subset(n, [&](const StateSet& y) {
            bool every_x = true;
            const std::uint64_t limit = std::uint64_t{1} << n;
            for (std::uint64_t xb = 0; xb < limit && every_x; ++xb) {
                every_x = delta.in(s, StateSet{n, xb} | y);
            }
            if (every_x) {
                guards.push_back(y);
            }
        });
        succ.push_back(points_containing_all(guards, points, mode));
    }
    return finish_kripke(UEKind::contingency_a, m, std::move(points), std::move(succ), mode);
}

UEModel ue_classical_nbhd(const NeighborhoodModel& m, QuantifierMode mode) {
    const std::size_t n = m.size();
    check_cap(n);
    auto points = principal_universe(n);
    const ImageMembership box{n, points, mode, [&](const StateSet& x) { return m_n(m, x); },
                              [&](std::size_t w, const StateSet& x) { return in_m_n(m, w, x); }};
    auto nbhd = hat_neighborhoods(n, points, box, mode);
    return finish_nbhd(UEKind::classical_nbhd, m, std::move(points), std::move(nbhd), mode);
}

UEModel ue_contingency_nbhd(const NeighborhoodModel& m, QuantifierMode mode) {
    const std::size_t n = m.size();
    check_cap(n);
    auto points = principal_universe(n);
    const ImageMembership c{n, points, mode, [&](const StateSet& x) { return m_c(m, x); },
                            [&](std::size_t w, const StateSet& x) { return in_m_c(m, w, x); }};
    auto nbhd = hat_neighborhoods(n, points, c, mode);
    return finish_nbhd(UEKind::contingency_nbhd, m, std::move(points), std::move(nbhd), mode);
}

bool applicable(UEKind kind, ModelKind model_kind) {
    const bool nbhd_kind = kind == UEKind::classical_nbhd || kind == UEKind::contingency_nbhd;
    return nbhd_kind == (model_kind == ModelKind::nbhd);
}

Lang native_language(UEKind kind) {
    return kind == UEKind::normal || kind == UEKind::classical_nbhd ? Lang::box : Lang::nabla;
}

std::vector<Lang> preserved_languages(UEKind kind) {
    if (native_language(kind) == Lang::box) {
        return {Lang::box, Lang::nabla};
    }
    return {Lang::nabla};
}

UEModel build_ue(const Model& m, UEKind kind, QuantifierMode mode) {
    if (!applicable(kind, kind_of(m))) {
        throw SemanticError{"construction '" + to_string(kind) + "' does not apply to a " + to_string(kind_of(m)) +
                            " model"};
    }
    switch (kind) {
    case UEKind::normal: return ue_normal(std::get<KripkeModel>(m), mode);
    case UEKind::contingency_ea: return ue_contingency_ea(std::get<KripkeModel>(m), mode);
    case UEKind::contingency_a: return ue_contingency_a(std::get<KripkeModel>(m), mode);
    case UEKind::classical_nbhd: return ue_classical_nbhd(std::get<NeighborhoodModel>(m), mode);
    case UEKind::contingency_nbhd: return ue_contingency_nbhd(std::get<NeighborhoodModel>(m), mode);
    }
    throw SemanticError{"unknown construction"};
}

std::string to_string(UEKind kind) {
    switch (kind) {
    case UEKind::normal: return "normal";
    case UEKind::classical_nbhd: return "classical_nbhd";
    case UEKind::contingency_ea: return "contingency_ea";
    case UEKind::contingency_a: return "contingency_a";
    case UEKind::contingency_nbhd: return "contingency_nbhd";
    }
    return "?";
}

std::vector<UEKind> all_ue_kinds() {
    return {UEKind::normal, UEKind::classical_nbhd, UEKind::contingency_ea, UEKind::contingency_a,
            UEKind::contingency_nbhd};
}

std::optional<UEKind> parse_ue_kind(std::string_view text) {
    for (UEKind k : all_ue_kinds()) {
        if (to_string(k) == text) {
            return k;
        }
    }
    return std::nullopt;
}

std::string to_json(const UEModel& ue) { return to_json(ue.structure, {{"_ue_kind", to_string(ue.kind)}}); }

bool canonical_map_is_isomorphism(const Model& m, const UEModel& ue) {
    if (kind_of(m) != kind_of(ue.structure) || model_size(m) != ue.size()) {
        return false;
    }
    const std::size_t n = model_size(m);
    const auto same_valuation = [&](const Valuation& a, const Valuation& b) {
        if (a.size() != b.size()) {
            return false;
        }
        return std::all_of(a.begin(), a.end(), [&](const auto& entry) {
            const auto it = b.find(entry.first);
            return it != b.end() && it->second.bits() == entry.second.bits();
        });
    };
    if (const auto* k = std::get_if<KripkeModel>(&m)) {
        const auto& image = std::get<KripkeModel>(ue.structure);
        for (std::size_t v = 0; v < n; ++v) {
            if (k->successors(v).bits() != image.successors(v).bits()) {
                return false;
            }
        }
        return same_valuation(k->valuation(), image.valuation());
    }
    const auto& nm = std::get<NeighborhoodModel>(m);
    const auto& image = std::get<NeighborhoodModel>(ue.structure);
    for (std::size_t v = 0; v < n; ++v) {
        const auto a = nm.neighborhood(v).members();
        const auto b = image.neighborhood(v).members();
        if (a.size() != b.size()) {
            return false;
        }
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i].bits() != b[i].bits()) {
                return false;
            }
        }
    }
    return same_valuation(nm.valuation(), image.valuation());
}

CanonicalMapReport canonical_map_check(const Model& m, const UEModel& ue, Lang lang) {
    if (!(ue.base == m)) {
        throw SemanticError{"ultrafilter extension was not built from this model"};
    }
    const std::size_t n = model_size(m);
    const DefinableClosure closure = definable_closure(disjoint_union(m, ue.structure), lang);
    CanonicalMapReport report;
    for (std::size_t w = 0; w < n; ++w) {
        const bool eq = closure.same_class(w, n + w);
        report.equivalent.push_back(eq);
        report.all_equivalent = report.all_equivalent && eq;
    }
    report.isomorphic = canonical_map_is_isomorphism(m, ue);
    return report;
}

} // namespace uekit
