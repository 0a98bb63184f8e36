#pragma once

#include "uekit/state_set.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace uekit {

/// A family of subsets of a finite base, kept sorted and duplicate-free.
class SetFamily {
public:
    explicit SetFamily(std::size_t width, std::vector<StateSet> members = {});

    [[nodiscard]] std::size_t width() const { return width_; }
    [[nodiscard]] const std::vector<StateSet>& members() const { return members_; }
    [[nodiscard]] bool contains(const StateSet& x) const;
    [[nodiscard]] std::size_t size() const { return members_.size(); }
    /// Intersection of all members; the whole base for the empty family.
    [[nodiscard]] StateSet intersection() const;

    friend bool operator==(const SetFamily&, const SetFamily&) = default;

private:
    std::size_t width_;
    std::vector<StateSet> members_;
};

/// The five ultrafilter clauses, in their usual order.
enum class UltrafilterClause {
    contains_base = 1,    // S in U
    intersections = 2,    // X, Y in U implies X & Y in U
    supersets = 3,        // X in U and X <= Z implies Z in U
    excludes_empty = 4,   // empty set not in U
    complements = 5,      // X in U iff complement(X) not in U
};

struct AxiomViolation {
    UltrafilterClause clause;
    StateSet witness;
    std::string message;
};

/// Violated clauses, at most one entry per clause, each with the first
/// witness set in bitmask order. Empty iff fam is an ultrafilter.
std::vector<AxiomViolation> check_ultrafilter(const SetFamily& fam);

/// An ultrafilter over a finite base. Over a finite base every ultrafilter is
/// principal, so the generating point is always available as witness().
///
/// Up to materialize_limit states the member family is stored as an indicator
/// over all subsets and contains() consults it; above that, membership is the
/// test "witness in X".
class Ultrafilter {
public:
    static constexpr std::size_t materialize_limit = 12;

    /// The principal ultrafilter generated by state w.
    static Ultrafilter principal(std::size_t width, std::size_t w);
    /// Promotes a family that passes check_ultrafilter. Throws SemanticError otherwise.
    static Ultrafilter from_family(const SetFamily& fam);

    [[nodiscard]] std::size_t width() const { return width_; }
    [[nodiscard]] std::size_t witness() const { return witness_; }
    [[nodiscard]] bool is_materialized() const { return !indicator_.empty(); }
    [[nodiscard]] bool contains(const StateSet& x) const;
    /// All members as an explicit family (capped at 20 states).
    [[nodiscard]] SetFamily members() const;

    friend bool operator==(const Ultrafilter& a, const Ultrafilter& b) {
        return a.width_ == b.width_ && a.witness_ == b.witness_;
    }

private:
    Ultrafilter(std::size_t width, std::size_t witness) : width_{width}, witness_{witness} {}

    std::size_t width_;
    std::size_t witness_;
    std::vector<bool> indicator_;
};

/// pi_w over the named base. Throws SemanticError for an unknown state.
Ultrafilter principal(const std::vector<std::string>& base, std::string_view w);

/// The principal ultrafilters of a base, one per state, in state order.
std::vector<Ultrafilter> principal_universe(std::size_t width);

/// Every ultrafilter over a base of at most 4 states, found by enumerating
/// families of subsets, in witness order. Throws SemanticError above the cap.
std::vector<Ultrafilter> all_ultrafilters(std::size_t width);
inline constexpr std::size_t all_ultrafilters_cap = 4;

/// Finite intersection property; for a finite family, a nonempty total intersection.
bool has_fip(const SetFamily& fam);

/// The principal ultrafilter of the least state in the total intersection.
/// Throws SemanticError when fam lacks the finite intersection property.
Ultrafilter extend_to_ultrafilter(const SetFamily& fam);

/// { u in universe | x in u }, as a set over universe positions.
StateSet hat(const StateSet& x, const std::vector<Ultrafilter>& universe);

std::string to_string(UltrafilterClause clause);

} // namespace uekit
