#pragma once

#include "uekit/formula.hpp"
#include "uekit/models.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace uekit {

/// All generators draw from this engine with plain modulo reduction, so a
/// seed gives the same structures on every platform.
using Rng = std::mt19937_64;

/// Uniform-ish value in [0, k).
std::size_t draw(Rng& rng, std::size_t k);

StateSet random_set(Rng& rng, std::size_t width);

/// States named "0".."n-1". Edge density is itself drawn per model.
KripkeModel random_kripke(Rng& rng, std::size_t n, const std::vector<std::string>& atoms);

/// Each state gets up to three random neighborhoods.
NeighborhoodModel random_nbhd(Rng& rng, std::size_t n, const std::vector<std::string>& atoms);

Model random_model(Rng& rng, ModelKind kind, std::size_t n, const std::vector<std::string>& atoms);

/// Random formula of modal depth at most depth over atoms, using the given
/// modal operators (neg, conj, disj, implies, T and F are always available).
Formula random_formula(Rng& rng, std::size_t depth, const std::vector<std::string>& atoms,
                       const std::vector<Op>& modalities);

/// Modalities of a language as used on a model kind: [] and <> / ? and # on
/// Kripke models; [] / ? and # on neighborhood models.
std::vector<Op> modalities_for(Lang lang, ModelKind kind);

} // namespace uekit
