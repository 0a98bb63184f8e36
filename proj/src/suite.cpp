#include "uekit/suite.hpp"

#include "uekit/equivalence.hpp"
#include "uekit/error.hpp"
#include "uekit/random.hpp"
#include "uekit/semantics.hpp"
#include "uekit/ue.hpp"
#include "uekit/ultrafilter.hpp"

#include "json.hpp"

#include <functional>
#include <optional>

namespace uekit {

namespace {

using ordered_json = nlohmann::ordered_json;

const std::vector<std::string> suite_atoms = {"p", "q"};

ordered_json set_json(const StateSet& x) {
    ordered_json out = ordered_json::array();
    for (std::size_t i : x.indices()) {
        out.push_back(i);
    }
    return out;
}

ordered_json model_json(const Model& m) { return ordered_json::parse(to_json(m)); }

class Battery {
public:
    explicit Battery(const std::vector<std::string>& names) {
        laws_ = ordered_json::object();
        for (const auto& n : names) {
            laws_[n] = {{"passed", 0}, {"failed", 0}};
        }
    }

    void record(const std::string& law, bool ok, const std::function<ordered_json()>& counterexample) {
        auto& entry = laws_.at(law);
        if (ok) {
            entry["passed"] = entry["passed"].get<std::size_t>() + 1;
            return;
        }
        entry["failed"] = entry["failed"].get<std::size_t>() + 1;
        if (!first_) {
            ordered_json cex{{"law", law}};
            cex.update(counterexample());
            first_ = std::move(cex);
        }
    }

    [[nodiscard]] bool passed() const { return !first_.has_value(); }
    [[nodiscard]] const ordered_json& laws() const { return laws_; }
    [[nodiscard]] const std::optional<ordered_json>& first() const { return first_; }

private:
    ordered_json laws_;
    std::optional<ordered_json> first_;
};

const std::vector<std::string> law_names = {
    "ultrafilter_enumeration",    "delta_meet",           "nabla_split",
    "delta_complements_nabla",    "nabla_complement_invariant", "delta_complement_invariant",
    "c_complement_invariant",     "hat_homomorphism",     "m_operator_extension",
    "ue_literal_matches_shortcut", "ue_truth_transfer",   "ue_canonical_equivalence",
    "equivalence_transfer",
};

void check_ultrafilters(Battery& b, std::size_t max_states) {
    for (std::size_t w = 1; w <= std::min(max_states, all_ultrafilters_cap); ++w) {
        const auto ufs = all_ultrafilters(w);
        bool ok = ufs.size() == w;
        for (std::size_t i = 0; ok && i < ufs.size(); ++i) {
            ok = ufs[i].members() == Ultrafilter::principal(w, i).members();
        }
        b.record("ultrafilter_enumeration", ok, [&] { return ordered_json{{"width", w}, {"found", ufs.size()}}; });
    }
}

void run_case(Battery& b, Rng& rng, std::size_t index, const SuiteConfig& cfg) {
    const std::size_t n = 1 + draw(rng, cfg.max_states);
    const KripkeModel k = random_kripke(rng, n, suite_atoms);
    const NeighborhoodModel nm = random_nbhd(rng, n, suite_atoms);
    const StateSet x = random_set(rng, n);
    const StateSet y = random_set(rng, n);
    const StateSet x2 = random_set(rng, n);

    const auto delta = [&](const StateSet& s) { return cfg.delta_mutant ? m_nabla(k, s) : m_delta(k, s); };
    const auto with_sets = [&](const Model& m) {
        return [&, m] {
            return ordered_json{{"case", index},       {"model", model_json(m)}, {"X", set_json(x)},
                                {"Y", set_json(y)},    {"X2", set_json(x2)}};
        };
    };

    b.record("delta_meet", (delta(x) & delta(y)).subset_of(delta(x & y)), with_sets(k));
    b.record("nabla_split", (m_nabla(k, x & y) & m_nabla(k, x2 & ~y)).subset_of(m_nabla(k, y)), with_sets(k));
    b.record("delta_complements_nabla", delta(x) == ~m_nabla(k, x), with_sets(k));
    b.record("nabla_complement_invariant", m_nabla(k, x) == m_nabla(k, ~x), with_sets(k));
    b.record("delta_complement_invariant", delta(x) == delta(~x), with_sets(k));
    b.record("c_complement_invariant", m_c(nm, x) == m_c(nm, ~x), with_sets(nm));

    const auto universe = principal_universe(n);
    const bool hat_ok = hat(x & y, universe) == (hat(x, universe) & hat(y, universe)) &&
                        hat(x | y, universe) == (hat(x, universe) | hat(y, universe)) &&
                        hat(~x, universe) == ~hat(x, universe);
    b.record("hat_homomorphism", hat_ok, with_sets(k));

    {
        const Formula f = random_formula(rng, 2, suite_atoms, {Op::box, Op::diamond, Op::nabla, Op::delta});
        const StateSet v = extension(k, f);
        const bool ok = m_box(k, v) == extension(k, Formula::box(f)) &&
                        m_nabla(k, v) == extension(k, Formula::nabla(f)) &&
                        delta(v) == extension(k, Formula::delta(f));
        b.record("m_operator_extension", ok, [&] {
            return ordered_json{{"case", index}, {"model", model_json(k)}, {"formula", print_formula(f)}};
        });
    }

    // One ultrafilter-extension kind per case, cycling through all five.
    const UEKind kind = all_ue_kinds()[index % all_ue_kinds().size()];
    const Model base = applicable(kind, ModelKind::kripke) ? Model{k} : Model{nm};
    const UEModel ue = build_ue(base, kind);
    const auto ue_cex = [&](const std::string& extra_key, const std::string& extra) {
        return [&, extra_key, extra] {
            return ordered_json{{"case", index},
                                {"ue_kind", to_string(kind)},
                                {"model", model_json(base)},
                                {extra_key, extra}};
        };
    };

    if (n <= 6) {
        const UEModel literal = build_ue(base, kind, QuantifierMode::literal);
        b.record("ue_literal_matches_shortcut", literal.structure == ue.structure, ue_cex("mode", "literal"));
    }

    for (Lang lang : preserved_languages(kind)) {
        const auto ops = modalities_for(lang, kind_of(base));
        for (int i = 0; i < 3; ++i) {
            const Formula f = random_formula(rng, 3, suite_atoms, ops);
            bool ok = true;
            for (std::size_t w = 0; w < n && ok; ++w) {
                ok = satisfies(base, w, f) == satisfies(ue.structure, w, f);
            }
            b.record("ue_truth_transfer", ok, ue_cex("formula", print_formula(f)));
        }
        b.record("ue_canonical_equivalence", canonical_map_check(base, ue, lang).all_equivalent,
                 ue_cex("lang", to_string(lang)));
    }

    // Pair the base with a fresh model or with itself, so both outcomes of
    // the left-hand side occur.
    const bool self = draw(rng, 2) == 0;
    const std::size_t n2 = self ? n : 1 + draw(rng, cfg.max_states);
    const Model other = self ? base : random_model(rng, kind_of(base), n2, suite_atoms);
    const std::size_t w1 = draw(rng, n);
    const std::size_t w2 = draw(rng, n2);
    for (Lang lang : preserved_languages(kind)) {
        const TransferResult t = equivalence_transfer(base, w1, other, w2, lang, kind);
        b.record("equivalence_transfer", t.lhs == t.rhs, [&] {
            return ordered_json{{"case", index},       {"ue_kind", to_string(kind)}, {"lang", to_string(lang)},
                                {"left", model_json(base)}, {"w1", w1}, {"right", model_json(other)}, {"w2", w2},
                                {"lhs", t.lhs},        {"rhs", t.rhs}};
        });
    }
}

} // namespace

SuiteResult run_suite(const SuiteConfig& config) {
    if (config.max_states == 0 || config.max_states > suite_state_cap) {
        throw SemanticError{"--max-states must be between 1 and " + std::to_string(suite_state_cap)};
    }
    Battery b{config.count == 0 ? std::vector<std::string>{} : law_names};
    if (config.count > 0) {
        check_ultrafilters(b, config.max_states);
    }
    Rng rng{config.seed};
    for (std::size_t i = 0; i < config.count; ++i) {
        run_case(b, rng, i, config);
    }

    ordered_json j;
    j["seed"] = config.seed;
    j["count"] = config.count;
    j["max_states"] = config.max_states;
    j["laws"] = b.laws();
    j["status"] = b.passed() ? "pass" : "fail";
    if (b.first()) {
        j["counterexample"] = *b.first();
    }
    return SuiteResult{j.dump(2), b.passed()};
}

} // namespace uekit
