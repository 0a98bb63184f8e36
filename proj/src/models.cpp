#include "uekit/models.hpp"

#include "uekit/error.hpp"

#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

namespace uekit {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::optional<std::size_t> find_name(const std::vector<std::string>& states, std::string_view name) {
    const auto it = std::find(states.begin(), states.end(), name);
    if (it == states.end()) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - states.begin());
}

std::size_t require_name(const std::vector<std::string>& states, std::string_view name) {
    if (auto i = find_name(states, name)) {
        return *i;
    }
    throw SemanticError{"unknown state '" + std::string{name} + "'"};
}

StateSet lookup_truth(const Valuation& val, const std::string& atom, std::size_t width) {
    const auto it = val.find(atom);
    return it == val.end() ? StateSet::empty(width) : it->second;
}

} // namespace

// ---------------------------------------------------------------------------

KripkeModel::KripkeModel(std::vector<std::string> states, std::vector<StateSet> successors, Valuation val)
    : states_{std::move(states)}, succ_{std::move(successors)}, val_{std::move(val)} {
    if (states_.size() > max_states) {
        throw SemanticError{"model exceeds " + std::to_string(max_states) + " states"};
    }
    succ_.resize(states_.size(), StateSet::empty(states_.size()));
}

std::vector<std::pair<std::size_t, std::size_t>> KripkeModel::relation() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t s = 0; s < size(); ++s) {
        for (std::size_t t : succ_[s].indices()) {
            out.emplace_back(s, t);
        }
    }
    return out;
}

StateSet KripkeModel::truth_set(const std::string& atom) const { return lookup_truth(val_, atom, size()); }
std::optional<std::size_t> KripkeModel::index_of(std::string_view name) const { return find_name(states_, name); }
std::size_t KripkeModel::require_state(std::string_view name) const { return require_name(states_, name); }

Neighborhood::Neighborhood(std::vector<StateSet> sets) : sets_{std::move(sets)} {
    std::sort(sets_.begin(), sets_.end());
    sets_.erase(std::unique(sets_.begin(), sets_.end()), sets_.end());
    full_width_ = sets_.empty() ? 0 : sets_.front().width();
}

Neighborhood Neighborhood::lifted(const Neighborhood& component, std::size_t offset, std::size_t full_width) {
    Neighborhood out;
    if (component.lifted_) {
        out.sets_ = component.members();
        out.component_width_ = component.full_width_;
    } else {
        out.sets_ = component.sets_;
        out.component_width_ = out.sets_.empty() ? 0 : out.sets_.front().width();
    }
    out.lifted_ = true;
    out.offset_ = offset;
    out.full_width_ = full_width;
    return out;
}

bool Neighborhood::contains(const StateSet& x) const {
    if (!lifted_) {
        return std::binary_search(sets_.begin(), sets_.end(), x);
    }
    if (sets_.empty()) {
        return false;
    }
    const StateSet projected{component_width_, x.bits() >> offset_};
    return std::binary_search(sets_.begin(), sets_.end(), projected);
}

std::vector<StateSet> Neighborhood::members() const {
    if (!lifted_) {
        return sets_;
    }
    std::vector<StateSet> out;
    const std::size_t rest = full_width_ - component_width_;
    const std::uint64_t component_mask = StateSet::mask_for(component_width_) << offset_;
    for (const auto& y : sets_) {
        for (std::uint64_t z = 0; z < (std::uint64_t{1} << rest); ++z) {
            // Scatter z over the bits outside the component.
            std::uint64_t spread = 0;
            std::size_t k = 0;
            for (std::size_t i = 0; i < full_width_; ++i) {
                if (((component_mask >> i) & 1U) == 0) {
                    if (((z >> k) & 1U) != 0) {
                        spread |= std::uint64_t{1} << i;
                    }
                    ++k;
                }
            }
            out.emplace_back(full_width_, spread | (y.bits() << offset_));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

NeighborhoodModel::NeighborhoodModel(std::vector<std::string> states, std::vector<Neighborhood> nbhd, Valuation val)
    : states_{std::move(states)}, nbhd_{std::move(nbhd)}, val_{std::move(val)} {
    if (states_.size() > max_states) {
        throw SemanticError{"model exceeds " + std::to_string(max_states) + " states"};
    }
    nbhd_.resize(states_.size());
}

StateSet NeighborhoodModel::truth_set(const std::string& atom) const { return lookup_truth(val_, atom, size()); }
std::optional<std::size_t> NeighborhoodModel::index_of(std::string_view name) const {
    return find_name(states_, name);
}
std::size_t NeighborhoodModel::require_state(std::string_view name) const { return require_name(states_, name); }

ModelKind kind_of(const Model& m) { return std::holds_alternative<KripkeModel>(m) ? ModelKind::kripke : ModelKind::nbhd; }

std::size_t model_size(const Model& m) {
    return std::visit([](const auto& x) { return x.size(); }, m);
}

const std::vector<std::string>& state_names(const Model& m) {
    return std::visit([](const auto& x) -> const std::vector<std::string>& { return x.states(); }, m);
}

std::size_t require_state(const Model& m, std::string_view name) {
    return std::visit([&](const auto& x) { return x.require_state(name); }, m);
}

std::string to_string(ModelKind kind) { return kind == ModelKind::kripke ? "kripke" : "nbhd"; }

// ---------------------------------------------------------------------------
// Loading and validation.

namespace {

std::vector<std::string> string_list(const json& j, const std::string& where) {
    if (!j.is_array()) {
        throw ModelError{ModelErrorKind::schema, where + " must be an array of strings"};
    }
    std::vector<std::string> out;
    for (const auto& e : j) {
        if (!e.is_string()) {
            throw ModelError{ModelErrorKind::schema, where + " must be an array of strings"};
        }
        out.push_back(e.get<std::string>());
    }
    return out;
}

struct Violation {
    ModelErrorKind kind;
    std::string message;
};

std::vector<Violation> find_violations(const RawModel& raw) {
    std::vector<Violation> out;
    static const std::regex ident{"[a-z][a-z0-9_]*"};
    if (raw.states.empty()) {
        out.push_back({ModelErrorKind::schema, "model has no states"});
    }
    if (raw.states.size() > max_states) {
        out.push_back({ModelErrorKind::schema, "model has more than " + std::to_string(max_states) + " states"});
    }
    std::set<std::string> seen;
    for (const auto& s : raw.states) {
        if (!seen.insert(s).second) {
            out.push_back({ModelErrorKind::duplicate_state, "duplicate state name '" + s + "'"});
        }
    }
    const auto known = [&](const std::string& s) { return seen.count(s) != 0; };
    for (const auto& [a, b] : raw.rel) {
        for (const auto* s : {&a, &b}) {
            if (!known(*s)) {
                out.push_back({ModelErrorKind::reference, "rel references unknown state '" + *s + "'"});
            }
        }
    }
    for (const auto& [state, family] : raw.nbhd) {
        if (!known(state)) {
            out.push_back({ModelErrorKind::reference, "nbhd key references unknown state '" + state + "'"});
        }
        for (const auto& set : family) {
            for (const auto& s : set) {
                if (!known(s)) {
                    out.push_back({ModelErrorKind::reference,
                                   "nbhd of state '" + state + "' references unknown state '" + s + "'"});
                }
            }
        }
    }
    for (const auto& [atom, set] : raw.val) {
        if (!std::regex_match(atom, ident)) {
            out.push_back({ModelErrorKind::schema, "atom name '" + atom + "' is not a valid identifier"});
        }
        for (const auto& s : set) {
            if (!known(s)) {
                out.push_back({ModelErrorKind::reference,
                               "val of atom '" + atom + "' references unknown state '" + s + "'"});
            }
        }
    }
    return out;
}

StateSet resolve_set(const std::vector<std::string>& states, const std::vector<std::string>& names) {
    StateSet out = StateSet::empty(states.size());
    for (const auto& n : names) {
        out.insert(*find_name(states, n));
    }
    return out;
}

} // namespace

RawModel parse_raw_model(std::string_view json_text, std::optional<ModelKind> kind) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ModelError{ModelErrorKind::schema, std::string{"invalid JSON: "} + e.what()};
    }
    if (!j.is_object()) {
        throw ModelError{ModelErrorKind::schema, "model must be a JSON object"};
    }
    RawModel raw;
    if (!j.contains("states")) {
        throw ModelError{ModelErrorKind::schema, "missing field 'states'"};
    }
    raw.states = string_list(j.at("states"), "'states'");

    const bool has_rel = j.contains("rel");
    const bool has_nbhd = j.contains("nbhd");
    if (!kind) {
        if (has_rel == has_nbhd) {
            throw ModelError{ModelErrorKind::schema, "model needs exactly one of 'rel' or 'nbhd'"};
        }
        kind = has_rel ? ModelKind::kripke : ModelKind::nbhd;
    }
    raw.kind = *kind;

    if (raw.kind == ModelKind::kripke) {
        if (!has_rel) {
            throw ModelError{has_nbhd ? ModelErrorKind::kind_mismatch : ModelErrorKind::schema,
                             "missing field 'rel' for a kripke model"};
        }
        const json& rel = j.at("rel");
        if (!rel.is_array()) {
            throw ModelError{ModelErrorKind::schema, "'rel' must be an array of pairs"};
        }
        for (const auto& pair : rel) {
            auto names = string_list(pair, "'rel' entry");
            if (names.size() != 2) {
                throw ModelError{ModelErrorKind::schema, "'rel' entries must have exactly two states"};
            }
            raw.rel.emplace_back(names[0], names[1]);
        }
    } else {
        if (!has_nbhd) {
            throw ModelError{has_rel ? ModelErrorKind::kind_mismatch : ModelErrorKind::schema,
                             "missing field 'nbhd' for a neighborhood model"};
        }
        const json& nbhd = j.at("nbhd");
        if (!nbhd.is_object()) {
            throw ModelError{ModelErrorKind::schema, "'nbhd' must be an object"};
        }
        for (const auto& [state, family] : nbhd.items()) {
            if (!family.is_array()) {
                throw ModelError{ModelErrorKind::schema, "'nbhd' values must be arrays of state lists"};
            }
            auto& sets = raw.nbhd[state];
            for (const auto& set : family) {
                sets.push_back(string_list(set, "'nbhd' set"));
            }
        }
    }

    if (j.contains("val")) {
        const json& val = j.at("val");
        if (!val.is_object()) {
            throw ModelError{ModelErrorKind::schema, "'val' must be an object"};
        }
        for (const auto& [atom, set] : val.items()) {
            raw.val[atom] = string_list(set, "'val' entry");
        }
    }
    return raw;
}

std::vector<std::string> validate(const RawModel& raw) {
    std::vector<std::string> out;
    for (auto& v : find_violations(raw)) {
        out.push_back(std::move(v.message));
    }
    return out;
}

Model build_model(const RawModel& raw) {
    if (auto violations = find_violations(raw); !violations.empty()) {
        throw ModelError{violations.front().kind, violations.front().message};
    }
    const std::size_t n = raw.states.size();
    Valuation val;
    for (const auto& [atom, names] : raw.val) {
        val[atom] = resolve_set(raw.states, names);
    }
    if (raw.kind == ModelKind::kripke) {
        std::vector<StateSet> succ(n, StateSet::empty(n));
        for (const auto& [a, b] : raw.rel) {
            succ[*find_name(raw.states, a)].insert(*find_name(raw.states, b));
        }
        return KripkeModel{raw.states, std::move(succ), std::move(val)};
    }
    std::vector<Neighborhood> nbhd(n);
    for (const auto& [state, family] : raw.nbhd) {
        std::vector<StateSet> sets;
        for (const auto& names : family) {
            sets.push_back(resolve_set(raw.states, names));
        }
        nbhd[*find_name(raw.states, state)] = Neighborhood{std::move(sets)};
    }
    return NeighborhoodModel{raw.states, std::move(nbhd), std::move(val)};
}

Model load_model(std::string_view json_text, std::optional<ModelKind> kind) {
    return build_model(parse_raw_model(json_text, kind));
}

Model load_model_file(const std::string& path, std::optional<ModelKind> kind) {
    std::ifstream in{path};
    if (!in) {
        throw ModelError{ModelErrorKind::schema, "cannot open '" + path + "'"};
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return load_model(buffer.str(), kind);
}

// ---------------------------------------------------------------------------
// Output.

namespace {

std::vector<std::string> names_of(const std::vector<std::string>& states, const StateSet& x) {
    std::vector<std::string> out;
    for (std::size_t i : x.indices()) {
        out.push_back(states[i]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

RawModel to_raw(const Model& m) {
    RawModel raw;
    raw.kind = kind_of(m);
    raw.states = state_names(m);
    std::visit(
        [&](const auto& model) {
            for (const auto& [atom, set] : model.valuation()) {
                raw.val[atom] = names_of(raw.states, set);
            }
        },
        m);
    if (const auto* k = std::get_if<KripkeModel>(&m)) {
        for (const auto& [s, t] : k->relation()) {
            raw.rel.emplace_back(raw.states[s], raw.states[t]);
        }
        std::sort(raw.rel.begin(), raw.rel.end());
    } else {
        const auto& nm = std::get<NeighborhoodModel>(m);
        for (std::size_t s = 0; s < nm.size(); ++s) {
            auto& family = raw.nbhd[raw.states[s]];
            for (const auto& x : nm.neighborhood(s).members()) {
                family.push_back(names_of(raw.states, x));
            }
            std::sort(family.begin(), family.end());
        }
    }
    return raw;
}

std::string to_json(const Model& m, const std::vector<std::pair<std::string, std::string>>& extra_fields) {
    const RawModel raw = to_raw(m);
    ordered_json j;
    j["states"] = raw.states;
    if (raw.kind == ModelKind::kripke) {
        j["rel"] = ordered_json::array();
        for (const auto& [a, b] : raw.rel) {
            j["rel"].push_back({a, b});
        }
    } else {
        j["nbhd"] = ordered_json::object();
        for (const auto& s : raw.states) {
            j["nbhd"][s] = raw.nbhd.at(s);
        }
    }
    j["val"] = ordered_json::object();
    for (const auto& [atom, set] : raw.val) {
        j["val"][atom] = set;
    }
    for (const auto& [key, value] : extra_fields) {
        j[key] = value;
    }
    return j.dump();
}

namespace {

std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
        }
        out += c;
    }
    return out + "\"";
}

template <typename M>
std::string state_label(const M& m, std::size_t s) {
    std::string atoms;
    for (const auto& [atom, set] : m.valuation()) {
        if (set.contains(s)) {
            atoms += atoms.empty() ? atom : "," + atom;
        }
    }
    return atoms.empty() ? m.states()[s] : m.states()[s] + " {" + atoms + "}";
}

} // namespace

std::string to_dot(const Model& m) {
    std::ostringstream out;
    out << "digraph model {\n";
    if (const auto* k = std::get_if<KripkeModel>(&m)) {
        for (std::size_t s = 0; s < k->size(); ++s) {
            out << "  " << dot_quote(k->states()[s]) << " [label=" << dot_quote(state_label(*k, s)) << "];\n";
        }
        for (const auto& [s, t] : k->relation()) {
            out << "  " << dot_quote(k->states()[s]) << " -> " << dot_quote(k->states()[t]) << ";\n";
        }
    } else {
        const auto& nm = std::get<NeighborhoodModel>(m);
        for (std::size_t s = 0; s < nm.size(); ++s) {
            out << "  " << dot_quote(nm.states()[s]) << " [label=" << dot_quote(state_label(nm, s)) << "];\n";
        }
        // One box node per distinct neighborhood set, shared across states.
        std::map<StateSet, std::string> set_nodes;
        for (std::size_t s = 0; s < nm.size(); ++s) {
            for (const auto& x : nm.neighborhood(s).members()) {
                if (set_nodes.count(x) == 0) {
                    const std::string id = "N" + std::to_string(set_nodes.size());
                    set_nodes.emplace(x, id);
                    std::string label = "{";
                    const auto names = names_of(nm.states(), x);
                    for (std::size_t i = 0; i < names.size(); ++i) {
                        label += (i == 0 ? "" : ",") + names[i];
                    }
                    label += "}";
                    out << "  " << id << " [shape=box,label=" << dot_quote(label) << "];\n";
                    for (std::size_t t : x.indices()) {
                        out << "  " << id << " -> " << dot_quote(nm.states()[t]) << " [style=dashed];\n";
                    }
                }
                out << "  " << dot_quote(nm.states()[s]) << " -> " << set_nodes.at(x) << ";\n";
            }
        }
    }
    out << "}\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// Disjoint unions.

namespace {

std::vector<std::string> prefixed_states(const std::vector<std::string>& left, const std::vector<std::string>& right) {
    std::vector<std::string> out;
    for (const auto& s : left) {
        out.push_back("L:" + s);
    }
    for (const auto& s : right) {
        out.push_back("R:" + s);
    }
    return out;
}

Valuation united_valuation(const Valuation& left, std::size_t n1, const Valuation& right, std::size_t n2) {
    const std::size_t n = n1 + n2;
    Valuation out;
    for (const auto& [atom, set] : left) {
        out[atom] = StateSet{n, set.bits()};
    }
    for (const auto& [atom, set] : right) {
        auto it = out.try_emplace(atom, StateSet::empty(n)).first;
        it->second |= StateSet{n, set.bits() << n1};
    }
    return out;
}

void check_union_size(std::size_t n1, std::size_t n2) {
    if (n1 + n2 > max_states) {
        throw SemanticError{"disjoint union exceeds " + std::to_string(max_states) + " states"};
    }
}

} // namespace

KripkeModel disjoint_union(const KripkeModel& left, const KripkeModel& right) {
    const std::size_t n1 = left.size();
    const std::size_t n2 = right.size();
    check_union_size(n1, n2);
    const std::size_t n = n1 + n2;
    std::vector<StateSet> succ;
    for (std::size_t s = 0; s < n1; ++s) {
        succ.emplace_back(n, left.successors(s).bits());
    }
    for (std::size_t s = 0; s < n2; ++s) {
        succ.emplace_back(n, right.successors(s).bits() << n1);
    }
    return KripkeModel{prefixed_states(left.states(), right.states()), std::move(succ),
                       united_valuation(left.valuation(), n1, right.valuation(), n2)};
}

NeighborhoodModel disjoint_union(const NeighborhoodModel& left, const NeighborhoodModel& right) {
    const std::size_t n1 = left.size();
    const std::size_t n2 = right.size();
    check_union_size(n1, n2);
    const std::size_t n = n1 + n2;
    std::vector<Neighborhood> nbhd;
    for (std::size_t s = 0; s < n1; ++s) {
        nbhd.push_back(Neighborhood::lifted(left.neighborhood(s), 0, n));
    }
    for (std::size_t s = 0; s < n2; ++s) {
        nbhd.push_back(Neighborhood::lifted(right.neighborhood(s), n1, n));
    }
    return NeighborhoodModel{prefixed_states(left.states(), right.states()), std::move(nbhd),
                             united_valuation(left.valuation(), n1, right.valuation(), n2)};
}

Model disjoint_union(const Model& left, const Model& right) {
    if (kind_of(left) != kind_of(right)) {
        throw ModelError{ModelErrorKind::kind_mismatch, "disjoint union of a kripke and a neighborhood model"};
    }
    if (const auto* k = std::get_if<KripkeModel>(&left)) {
        return disjoint_union(*k, std::get<KripkeModel>(right));
    }
    return disjoint_union(std::get<NeighborhoodModel>(left), std::get<NeighborhoodModel>(right));
}

} // namespace uekit
