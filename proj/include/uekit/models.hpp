#pragma once

#include "uekit/state_set.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace uekit {

using Valuation = std::map<std::string, StateSet>;

/// Finite Kripke model <S, R, V>. The relation is stored as one successor set per state.
class KripkeModel {
public:
    KripkeModel() = default;
    KripkeModel(std::vector<std::string> states, std::vector<StateSet> successors, Valuation val);

    [[nodiscard]] std::size_t size() const { return states_.size(); }
    [[nodiscard]] const std::vector<std::string>& states() const { return states_; }
    [[nodiscard]] const StateSet& successors(std::size_t s) const { return succ_[s]; }
    [[nodiscard]] const std::vector<StateSet>& successor_sets() const { return succ_; }
    [[nodiscard]] const Valuation& valuation() const { return val_; }
    [[nodiscard]] bool related(std::size_t s, std::size_t t) const { return succ_[s].contains(t); }
    [[nodiscard]] std::vector<std::pair<std::size_t, std::size_t>> relation() const;

    /// V(p); the empty set for atoms the model does not mention.
    [[nodiscard]] StateSet truth_set(const std::string& atom) const;
    [[nodiscard]] std::optional<std::size_t> index_of(std::string_view name) const;
    [[nodiscard]] std::size_t require_state(std::string_view name) const;

    friend bool operator==(const KripkeModel&, const KripkeModel&) = default;

private:
    std::vector<std::string> states_;
    std::vector<StateSet> succ_;
    Valuation val_;
};

/// The neighborhood family N(s) of one state.
///
/// Ordinary families list their sets explicitly over the model's full width.
/// A family lifted into a disjoint union keeps the component's sets and tests
/// membership of X by projecting X onto the component: X is a member iff
/// X restricted to the component is one of the listed sets.
class Neighborhood {
public:
    Neighborhood() = default;
    /// Explicit family; duplicate sets collapse.
    explicit Neighborhood(std::vector<StateSet> sets);
    /// Family over a component occupying bits [offset, offset + component width) of a wider base.
    static Neighborhood lifted(const Neighborhood& component, std::size_t offset, std::size_t full_width);

    [[nodiscard]] bool contains(const StateSet& x) const;
    [[nodiscard]] bool is_lifted() const { return lifted_; }
    /// The listed sets; for a lifted family these live over the component's width.
    [[nodiscard]] const std::vector<StateSet>& listed() const { return sets_; }
    /// Every member as a set over the full width. Lifted families are expanded.
    [[nodiscard]] std::vector<StateSet> members() const;

    friend bool operator==(const Neighborhood&, const Neighborhood&) = default;

private:
    std::vector<StateSet> sets_;
    bool lifted_ = false;
    std::size_t offset_ = 0;
    std::size_t component_width_ = 0;
    std::size_t full_width_ = 0;
};

/// Finite neighborhood model <S, N, V>.
class NeighborhoodModel {
public:
    NeighborhoodModel() = default;
    NeighborhoodModel(std::vector<std::string> states, std::vector<Neighborhood> nbhd, Valuation val);

    [[nodiscard]] std::size_t size() const { return states_.size(); }
    [[nodiscard]] const std::vector<std::string>& states() const { return states_; }
    [[nodiscard]] const Neighborhood& neighborhood(std::size_t s) const { return nbhd_[s]; }
    [[nodiscard]] const Valuation& valuation() const { return val_; }
    [[nodiscard]] StateSet truth_set(const std::string& atom) const;
    [[nodiscard]] std::optional<std::size_t> index_of(std::string_view name) const;
    [[nodiscard]] std::size_t require_state(std::string_view name) const;

    friend bool operator==(const NeighborhoodModel&, const NeighborhoodModel&) = default;

private:
    std::vector<std::string> states_;
    std::vector<Neighborhood> nbhd_;
    Valuation val_;
};

using Model = std::variant<KripkeModel, NeighborhoodModel>;

enum class ModelKind { kripke, nbhd };

ModelKind kind_of(const Model& m);
std::size_t model_size(const Model& m);
const std::vector<std::string>& state_names(const Model& m);
std::size_t require_state(const Model& m, std::string_view name);
std::string to_string(ModelKind kind);

/// A model file as written, before any name resolution. validate() inspects this form.
struct RawModel {
    ModelKind kind = ModelKind::kripke;
    std::vector<std::string> states;
    std::vector<std::pair<std::string, std::string>> rel;
    std::map<std::string, std::vector<std::vector<std::string>>> nbhd;
    std::map<std::string, std::vector<std::string>> val;
};

/// Reads the JSON text into a RawModel. Throws ModelError(schema) on shape errors.
RawModel parse_raw_model(std::string_view json_text, std::optional<ModelKind> kind = std::nullopt);

/// Invariant violations of a raw model, one message each. Empty iff valid.
std::vector<std::string> validate(const RawModel& raw);

/// Resolves names of a valid raw model. Throws ModelError on the first violation.
Model build_model(const RawModel& raw);

/// parse_raw_model + validate + build_model.
Model load_model(std::string_view json_text, std::optional<ModelKind> kind = std::nullopt);
Model load_model_file(const std::string& path, std::optional<ModelKind> kind = std::nullopt);

RawModel to_raw(const Model& m);

/// Canonical JSON: states in model order, relation pairs and sets sorted by
/// state name. extra_fields are appended after the model fields.
std::string to_json(const Model& m, const std::vector<std::pair<std::string, std::string>>& extra_fields = {});

/// Graphviz rendering. Kripke models become digraphs; neighborhood models
/// become a bipartite graph of state nodes and box-shaped neighborhood nodes.
std::string to_dot(const Model& m);

/// States renamed apart with "L:" and "R:" prefixes. Throws ModelError(kind_mismatch).
KripkeModel disjoint_union(const KripkeModel& left, const KripkeModel& right);
NeighborhoodModel disjoint_union(const NeighborhoodModel& left, const NeighborhoodModel& right);
Model disjoint_union(const Model& left, const Model& right);

} // namespace uekit
