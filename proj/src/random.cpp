#include "uekit/random.hpp"

namespace uekit {

std::size_t draw(Rng& rng, std::size_t k) { return k == 0 ? 0 : static_cast<std::size_t>(rng() % k); }

StateSet random_set(Rng& rng, std::size_t width) { return StateSet{width, rng()}; }

namespace {

std::vector<std::string> numbered_states(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(std::to_string(i));
    }
    return out;
}

Valuation random_valuation(Rng& rng, std::size_t n, const std::vector<std::string>& atoms) {
    Valuation val;
    for (const auto& a : atoms) {
        val.emplace(a, random_set(rng, n));
    }
    return val;
}

} // namespace

KripkeModel random_kripke(Rng& rng, std::size_t n, const std::vector<std::string>& atoms) {
    static constexpr std::size_t densities[] = {10, 30, 50, 75};
    const std::size_t density = densities[draw(rng, 4)];
    std::vector<StateSet> succ;
    for (std::size_t s = 0; s < n; ++s) {
        StateSet row = StateSet::empty(n);
        for (std::size_t t = 0; t < n; ++t) {
            if (draw(rng, 100) < density) {
                row.insert(t);
            }
        }
        succ.push_back(row);
    }
    return KripkeModel{numbered_states(n), std::move(succ), random_valuation(rng, n, atoms)};
}

NeighborhoodModel random_nbhd(Rng& rng, std::size_t n, const std::vector<std::string>& atoms) {
    std::vector<Neighborhood> nbhd;
    for (std::size_t s = 0; s < n; ++s) {
        std::vector<StateSet> family;
        const std::size_t k = draw(rng, 4);
        for (std::size_t i = 0; i < k; ++i) {
            family.push_back(random_set(rng, n));
        }
        nbhd.emplace_back(std::move(family));
    }
    return NeighborhoodModel{numbered_states(n), std::move(nbhd), random_valuation(rng, n, atoms)};
}

Model random_model(Rng& rng, ModelKind kind, std::size_t n, const std::vector<std::string>& atoms) {
    if (kind == ModelKind::kripke) {
        return random_kripke(rng, n, atoms);
    }
    return random_nbhd(rng, n, atoms);
}

namespace {

// budget bounds the number of nodes so the branching process stays finite.
Formula grow(Rng& rng, std::size_t depth, const std::vector<std::string>& atoms, const std::vector<Op>& modalities,
             std::size_t& budget) {
    const auto leaf = [&] {
        const std::size_t pick = draw(rng, atoms.size() + 2);
        if (pick < atoms.size()) {
            return Formula::atom(atoms[pick]);
        }
        return pick == atoms.size() ? Formula::top() : Formula::bot();
    };
    if (budget == 0 || draw(rng, 4) == 0) {
        return leaf();
    }
    --budget;
    const std::size_t modal_choices = depth > 0 ? modalities.size() : 0;
    const std::size_t pick = draw(rng, 4 + modal_choices);
    if (pick == 0) {
        return Formula::neg(grow(rng, depth, atoms, modalities, budget));
    }
    if (pick < 4) {
        static constexpr Op binary[] = {Op::conj, Op::disj, Op::implies};
        Formula a = grow(rng, depth, atoms, modalities, budget);
        return Formula::binary(binary[pick - 1], std::move(a), grow(rng, depth, atoms, modalities, budget));
    }
    return Formula::unary(modalities[pick - 4], grow(rng, depth - 1, atoms, modalities, budget));
}

} // namespace

Formula random_formula(Rng& rng, std::size_t depth, const std::vector<std::string>& atoms,
                       const std::vector<Op>& modalities) {
    std::size_t budget = 12;
    return grow(rng, depth, atoms, modalities, budget);
}

std::vector<Op> modalities_for(Lang lang, ModelKind kind) {
    if (lang == Lang::nabla) {
        return {Op::nabla, Op::delta};
    }
    if (kind == ModelKind::kripke) {
        return {Op::box, Op::diamond};
    }
    return {Op::box};
}

} // namespace uekit
