#pragma once

#include "uekit/formula.hpp"
#include "uekit/models.hpp"
#include "uekit/state_set.hpp"

#include <cstddef>
#include <string_view>

namespace uekit {

// Set-valued lifts of the modalities. Each throws SemanticError when x does
// not have the model's width.

/// { s | every successor of s is in x }
StateSet m_box(const KripkeModel& m, const StateSet& x);
/// { s | some successor of s is in x }
StateSet m_diamond(const KripkeModel& m, const StateSet& x);
/// { s | s has a successor in x and a successor outside x }
StateSet m_nabla(const KripkeModel& m, const StateSet& x);
/// { s | all successors of s agree on membership in x }
StateSet m_delta(const KripkeModel& m, const StateSet& x);
/// { s | x in N(s) }
StateSet m_n(const NeighborhoodModel& m, const StateSet& x);
/// { s | x in N(s) or the complement of x in N(s) }
StateSet m_c(const NeighborhoodModel& m, const StateSet& x);

// Pointwise forms: whether s belongs to the corresponding m-operator image.
bool in_m_box(const KripkeModel& m, std::size_t s, const StateSet& x);
bool in_m_nabla(const KripkeModel& m, std::size_t s, const StateSet& x);
bool in_m_delta(const KripkeModel& m, std::size_t s, const StateSet& x);
bool in_m_n(const NeighborhoodModel& m, std::size_t s, const StateSet& x);
bool in_m_c(const NeighborhoodModel& m, std::size_t s, const StateSet& x);

/// V(f), computed bottom-up. Neighborhood models reject <> with SemanticError;
/// nabla there is the negation of delta.
StateSet extension(const KripkeModel& m, const Formula& f);
StateSet extension(const NeighborhoodModel& m, const Formula& f);
StateSet extension(const Model& m, const Formula& f);

bool satisfies(const KripkeModel& m, std::size_t state, const Formula& f);
bool satisfies(const NeighborhoodModel& m, std::size_t state, const Formula& f);
bool satisfies(const Model& m, std::size_t state, const Formula& f);
/// Point query by state name; throws SemanticError for unknown states.
bool satisfies(const Model& m, std::string_view state, const Formula& f);

} // namespace uekit
