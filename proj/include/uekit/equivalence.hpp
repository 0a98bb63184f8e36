#pragma once

#include "uekit/formula.hpp"
#include "uekit/models.hpp"
#include "uekit/state_set.hpp"
#include "uekit/ue.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace uekit {

/// Largest model (usually a disjoint union) definable_closure accepts.
inline constexpr std::size_t closure_state_cap = 16;

/// The definable subsets of a model for one language.
///
/// The family is a boolean algebra, so it is stored by its atoms: a partition
/// of the states into blocks. Members are exactly the unions of blocks. Each
/// block carries a formula whose extension is that block, and the generators
/// that cut the partition are kept with their formulas so separations can be
/// explained.
class DefinableClosure {
public:
    struct Generator {
        StateSet set;
        Formula witness;
    };

    DefinableClosure(std::vector<std::string> states, Lang lang, std::vector<std::string> ops,
                     std::vector<StateSet> blocks, std::vector<Formula> block_witnesses,
                     std::vector<Generator> generators);

    [[nodiscard]] std::size_t width() const { return states_.size(); }
    [[nodiscard]] Lang lang() const { return lang_; }
    /// Names of the set operators the closure is taken under.
    [[nodiscard]] const std::vector<std::string>& ops() const { return ops_; }
    [[nodiscard]] const std::vector<StateSet>& blocks() const { return blocks_; }
    [[nodiscard]] const std::vector<Formula>& block_witnesses() const { return block_witnesses_; }
    [[nodiscard]] const std::vector<Generator>& generators() const { return generators_; }

    /// Number of members, 2^(number of blocks).
    [[nodiscard]] std::size_t size() const { return std::size_t{1} << blocks_.size(); }
    [[nodiscard]] bool contains(const StateSet& x) const;
    /// Every member, ordered by the block masks. Throws SemanticError past 2^16 members.
    [[nodiscard]] std::vector<StateSet> members() const;
    /// A formula defining x, or nothing when x is not a member.
    [[nodiscard]] std::optional<Formula> witness(const StateSet& x) const;

    [[nodiscard]] std::size_t block_of(std::size_t state) const;
    /// No member separates the two states.
    [[nodiscard]] bool same_class(std::size_t a, std::size_t b) const { return block_of(a) == block_of(b); }
    /// The first generator holding at exactly one of the two states.
    [[nodiscard]] std::optional<Formula> separator(std::size_t a, std::size_t b) const;

    /// {"lang", "ops", "size", "blocks":[{"states", "witness"}], "generators":[...]}.
    [[nodiscard]] std::string to_json() const;

private:
    std::vector<std::string> states_;
    Lang lang_;
    std::vector<std::string> ops_;
    std::vector<StateSet> blocks_;
    std::vector<Formula> block_witnesses_;
    std::vector<Generator> generators_;
    std::vector<std::size_t> block_index_;
};

/// Least family containing the atom extensions and closed under the boolean
/// operations and the language's set operators: m_box or m_nabla on Kripke
/// models, m_n or m_c on neighborhood models. Throws SemanticError above the cap.
DefinableClosure definable_closure(const Model& m, Lang lang);

/// Equivalence of (m1, w1) and (m2, w2) through the closure of the disjoint union.
/// Throws ModelError(kind_mismatch) for mixed kinds, SemanticError above the cap.
bool logically_equivalent(const Model& m1, std::size_t w1, const Model& m2, std::size_t w2, Lang lang);

/// A formula of the language true at exactly one of the two points, if any.
std::optional<Formula> distinguishing_formula(const Model& m1, std::size_t w1, const Model& m2, std::size_t w2,
                                              Lang lang);

/// Kripke bisimilarity by partition refinement on the disjoint union.
/// Throws ModelError(kind_mismatch) unless both models are Kripke models.
bool kripke_bisimilar(const Model& m1, std::size_t w1, const Model& m2, std::size_t w2);

/// Coarsest bisimulation of one Kripke model, as a block index per state.
std::vector<std::size_t> bisimulation_classes(const KripkeModel& m);

/// Default limit on fragment size for the saturation checks (2^10 subsets).
inline constexpr std::size_t saturation_fragment_cap = 10;

struct SaturationViolation {
    std::size_t state;
    /// The set checked: R(s), a neighborhood X, or its complement.
    StateSet target;
    /// Indices into the fragment.
    std::vector<std::size_t> gamma;
};

struct SaturationReport {
    std::vector<std::string> states;
    std::vector<Formula> fragment;
    std::vector<StateSet> fragment_extensions;
    std::vector<SaturationViolation> violations;
    /// Number of (target, subset) pairs examined.
    std::size_t checked = 0;

    [[nodiscard]] bool ok() const { return violations.empty(); }
    /// {"violations":[...], "witness_formulas":{formula: [states]}}.
    [[nodiscard]] std::string to_json() const;
};

/// For each state s and subset Gamma of the fragment: if every subset of Gamma
/// is satisfiable in R(s), Gamma is. Throws SemanticError when the fragment
/// exceeds cap.
SaturationReport check_nabla_saturation(const KripkeModel& m, const std::vector<Formula>& fragment,
                                        std::size_t cap = saturation_fragment_cap);

/// For each state s and each X in N(s) that is a union of fragment-equivalence
/// classes, the same compactness test on X and on its complement.
SaturationReport check_delta_saturation(const NeighborhoodModel& m, const std::vector<Formula>& fragment,
                                        std::size_t cap = saturation_fragment_cap);

struct TransferResult {
    /// Equivalence of the original points.
    bool lhs = false;
    /// Equivalence of (ue(m1), pi_w1) and (ue(m2), pi_w2).
    bool rhs = false;
};

/// Both sides of an equivalence-transfer statement, for the caller to compare.
/// Throws SemanticError when kind does not apply to the models.
TransferResult equivalence_transfer(const Model& m1, std::size_t w1, const Model& m2, std::size_t w2, Lang lang,
                                    UEKind kind);

} // namespace uekit
