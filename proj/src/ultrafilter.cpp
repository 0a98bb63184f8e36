#include "uekit/ultrafilter.hpp"

#include "uekit/error.hpp"

#include <algorithm>

namespace uekit {

namespace {

std::string set_text(const StateSet& x) {
    std::string out = "{";
    for (std::size_t i : x.indices()) {
        out += (out.size() > 1 ? "," : "") + std::to_string(i);
    }
    return out + "}";
}

} // namespace

SetFamily::SetFamily(std::size_t width, std::vector<StateSet> members) : width_{width}, members_{std::move(members)} {
    for (const auto& m : members_) {
        if (m.width() != width_) {
            throw SemanticError{"family member of width " + std::to_string(m.width()) + " over a base of " +
                                std::to_string(width_) + " states"};
        }
    }
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool SetFamily::contains(const StateSet& x) const { return std::binary_search(members_.begin(), members_.end(), x); }

StateSet SetFamily::intersection() const {
    StateSet out = StateSet::full(width_);
    for (const auto& m : members_) {
        out &= m;
    }
    return out;
}

std::string to_string(UltrafilterClause clause) {
    switch (clause) {
    case UltrafilterClause::contains_base: return "(i) contains the whole set";
    case UltrafilterClause::intersections: return "(ii) closed under intersection";
    case UltrafilterClause::supersets: return "(iii) closed under supersets";
    case UltrafilterClause::excludes_empty: return "(iv) excludes the empty set";
    case UltrafilterClause::complements: return "(v) contains exactly one of each set and its complement";
    }
    return "?";
}

std::vector<AxiomViolation> check_ultrafilter(const SetFamily& fam) {
    std::vector<AxiomViolation> out;
    const std::size_t n = fam.width();
    const auto report = [&](UltrafilterClause c, const StateSet& w) {
        out.push_back({c, w, to_string(c) + " fails at " + set_text(w)});
    };

    if (!fam.contains(StateSet::full(n))) {
        report(UltrafilterClause::contains_base, StateSet::full(n));
    }

    [&] {
        for (const auto& x : fam.members()) {
            for (const auto& y : fam.members()) {
                if (!fam.contains(x & y)) {
                    report(UltrafilterClause::intersections, x & y);
                    return;
                }
            }
        }
    }();

    [&] {
        for (const auto& x : fam.members()) {
            // Supersets of x are x | z for z ranging over subsets of the complement.
            const std::uint64_t free = (~x).bits();
            for (std::uint64_t z = free;; z = (z - 1) & free) {
                const StateSet sup{n, x.bits() | z};
                if (!fam.contains(sup)) {
                    report(UltrafilterClause::supersets, sup);
                    return;
                }
                if (z == 0) {
                    break;
                }
            }
        }
    }();

    if (fam.contains(StateSet::empty(n))) {
        report(UltrafilterClause::excludes_empty, StateSet::empty(n));
    }

    [&] {
        bool found = false;
        for_each_subset(n, [&](const StateSet& x) {
            if (!found && fam.contains(x) == fam.contains(~x)) {
                report(UltrafilterClause::complements, x);
                found = true;
            }
        });
    }();

    return out;
}

Ultrafilter Ultrafilter::principal(std::size_t width, std::size_t w) {
    if (width == 0 || w >= width) {
        throw SemanticError{"principal ultrafilter needs a state of a nonempty base"};
    }
    Ultrafilter u{width, w};
    if (width <= materialize_limit) {
        u.indicator_.assign(std::size_t{1} << width, false);
        for_each_subset(width, [&](const StateSet& x) {
            if (x.contains(w)) {
                u.indicator_[x.bits()] = true;
            }
        });
    }
    return u;
}

Ultrafilter Ultrafilter::from_family(const SetFamily& fam) {
    if (auto violations = check_ultrafilter(fam); !violations.empty()) {
        throw SemanticError{"not an ultrafilter: " + violations.front().message};
    }
    // The intersection of a finite ultrafilter is its generating singleton.
    const StateSet core = fam.intersection();
    Ultrafilter u{fam.width(), core.first()};
    if (fam.width() <= materialize_limit) {
        u.indicator_.assign(std::size_t{1} << fam.width(), false);
        for (const auto& x : fam.members()) {
            u.indicator_[x.bits()] = true;
        }
    }
    return u;
}

bool Ultrafilter::contains(const StateSet& x) const {
    if (x.width() != width_) {
        throw SemanticError{"state set of width " + std::to_string(x.width()) + " tested against an ultrafilter over " +
                            std::to_string(width_) + " states"};
    }
    if (is_materialized()) {
        return indicator_[x.bits()];
    }
    return x.contains(witness_);
}

SetFamily Ultrafilter::members() const {
    if (width_ > 20) {
        throw SemanticError{"refusing to materialize 2^" + std::to_string(width_ - 1) + " members"};
    }
    std::vector<StateSet> out;
    for_each_subset(width_, [&](const StateSet& x) {
        if (contains(x)) {
            out.push_back(x);
        }
    });
    return SetFamily{width_, std::move(out)};
}

Ultrafilter principal(const std::vector<std::string>& base, std::string_view w) {
    const auto it = std::find(base.begin(), base.end(), w);
    if (it == base.end()) {
        throw SemanticError{"unknown state '" + std::string{w} + "'"};
    }
    return Ultrafilter::principal(base.size(), static_cast<std::size_t>(it - base.begin()));
}

std::vector<Ultrafilter> principal_universe(std::size_t width) {
    std::vector<Ultrafilter> out;
    for (std::size_t w = 0; w < width; ++w) {
        out.push_back(Ultrafilter::principal(width, w));
    }
    return out;
}

std::vector<Ultrafilter> all_ultrafilters(std::size_t width) {
    if (width == 0) {
        throw SemanticError{"ultrafilters need a nonempty base"};
    }
    if (width > all_ultrafilters_cap) {
        throw SemanticError{"base of " + std::to_string(width) + " states is too large to enumerate (cap " +
                            std::to_string(all_ultrafilters_cap) + ")"};
    }
    // A candidate family is a bitmask over the 2^width subsets.
    const std::size_t subsets = std::size_t{1} << width;
    const std::uint64_t whole = std::uint64_t{1} << (subsets - 1);
    const std::uint64_t empty = 1;
    const bool prune = width == all_ultrafilters_cap;

    std::vector<Ultrafilter> out;
    const std::uint64_t limit = std::uint64_t{1} << subsets;
    for (std::uint64_t candidate = 0; candidate < limit; ++candidate) {
        // At the cap, skip families that already break clause (i) or (iv).
        if (prune && ((candidate & whole) == 0 || (candidate & empty) != 0)) {
            continue;
        }
        std::vector<StateSet> members;
        for (std::size_t i = 0; i < subsets; ++i) {
            if (((candidate >> i) & 1U) != 0) {
                members.emplace_back(width, i);
            }
        }
        SetFamily fam{width, std::move(members)};
        if (check_ultrafilter(fam).empty()) {
            out.push_back(Ultrafilter::from_family(fam));
        }
    }
    std::sort(out.begin(), out.end(), [](const Ultrafilter& a, const Ultrafilter& b) { return a.witness() < b.witness(); });
    return out;
}

bool has_fip(const SetFamily& fam) { return fam.width() > 0 && !fam.intersection().none(); }

Ultrafilter extend_to_ultrafilter(const SetFamily& fam) {
    if (!has_fip(fam)) {
        throw SemanticError{"family lacks the finite intersection property"};
    }
    return Ultrafilter::principal(fam.width(), fam.intersection().first());
}

StateSet hat(const StateSet& x, const std::vector<Ultrafilter>& universe) {
    StateSet out = StateSet::empty(universe.size());
    for (std::size_t i = 0; i < universe.size(); ++i) {
        if (universe[i].contains(x)) {
            out.insert(i);
        }
    }
    return out;
}

} // namespace uekit
