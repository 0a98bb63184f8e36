#pragma once

#include "uekit/formula.hpp"
#include "uekit/models.hpp"
#include "uekit/ultrafilter.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace uekit {

enum class UEKind { normal, classical_nbhd, contingency_ea, contingency_a, contingency_nbhd };

/// How "m(X) in s" is decided while quantifying over subsets X.
///
/// literal: compute the whole set m(X) and ask the ultrafilter s for membership.
/// principal_shortcut: s is pi_w, so test "w in m(X)" pointwise.
/// Both enumerate every X (and Y) in full.
enum class QuantifierMode { literal, principal_shortcut };

/// Largest base the constructions enumerate subsets of.
inline constexpr std::size_t ue_state_cap = 12;

/// An ultrafilter extension over the principal universe of a finite base.
///
/// Point i is pi_i and is named "pi_<state i>". structure holds R^ue (a
/// KripkeModel) or N^ue (a NeighborhoodModel) together with V^ue, so the
/// usual semantics applies to it directly.
struct UEModel {
    UEKind kind;
    Model base;
    std::vector<Ultrafilter> points;
    Model structure;

    [[nodiscard]] std::size_t size() const { return points.size(); }
};

UEModel ue_normal(const KripkeModel& m, QuantifierMode mode = QuantifierMode::principal_shortcut);
UEModel ue_classical_nbhd(const NeighborhoodModel& m, QuantifierMode mode = QuantifierMode::principal_shortcut);
UEModel ue_contingency_ea(const KripkeModel& m, QuantifierMode mode = QuantifierMode::principal_shortcut);
UEModel ue_contingency_a(const KripkeModel& m, QuantifierMode mode = QuantifierMode::principal_shortcut);
UEModel ue_contingency_nbhd(const NeighborhoodModel& m, QuantifierMode mode = QuantifierMode::principal_shortcut);

/// Dispatches on kind. Throws SemanticError when kind does not apply to the model.
UEModel build_ue(const Model& m, UEKind kind, QuantifierMode mode = QuantifierMode::principal_shortcut);

bool applicable(UEKind kind, ModelKind model_kind);
/// The language whose truth the construction is built to preserve.
Lang native_language(UEKind kind);
/// Languages the construction preserves on finite models. The two isomorphic
/// constructions preserve both; the contingency ones only L(nabla).
std::vector<Lang> preserved_languages(UEKind kind);

std::string to_string(UEKind kind);
std::optional<UEKind> parse_ue_kind(std::string_view text);
std::vector<UEKind> all_ue_kinds();

/// Same schema as the base kind, points named "pi_<state>", plus a "_ue_kind" field.
std::string to_json(const UEModel& ue);

struct CanonicalMapReport {
    /// Per base state w: (m, w) and (ue, pi_w) are logically equivalent.
    std::vector<bool> equivalent;
    bool all_equivalent = true;
    /// w -> pi_w is an isomorphism of the structures.
    bool isomorphic = false;
};

/// Checks logical equivalence at (w, pi_w) for every w with the closure oracle,
/// and whether w -> pi_w preserves relation/neighborhoods and valuation.
/// Throws SemanticError when ue was not built from m.
CanonicalMapReport canonical_map_check(const Model& m, const UEModel& ue, Lang lang);

/// w -> pi_w is a structure isomorphism between m and ue.structure.
bool canonical_map_is_isomorphism(const Model& m, const UEModel& ue);

} // namespace uekit
