#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace uekit {

/// Maximum number of states a model (or a disjoint union of two models) may have.
inline constexpr std::size_t max_states = 64;

/// A subset of a model's states, stored as a bitmask over the model's state
/// ordering. Bit i is state i.
class StateSet {
public:
    StateSet() = default;
    explicit StateSet(std::size_t width, std::uint64_t bits = 0)
        : bits_{bits & mask_for(width)}, width_{width} {}

    static StateSet empty(std::size_t width) { return StateSet{width}; }
    static StateSet full(std::size_t width) { return StateSet{width, mask_for(width)}; }
    static StateSet singleton(std::size_t width, std::size_t i) { return StateSet{width, std::uint64_t{1} << i}; }

    [[nodiscard]] std::size_t width() const { return width_; }
    [[nodiscard]] std::uint64_t bits() const { return bits_; }
    [[nodiscard]] bool contains(std::size_t i) const { return i < width_ && ((bits_ >> i) & 1U) != 0; }
    [[nodiscard]] bool none() const { return bits_ == 0; }
    [[nodiscard]] bool all() const { return bits_ == mask_for(width_); }
    [[nodiscard]] std::size_t count() const { return static_cast<std::size_t>(std::popcount(bits_)); }
    [[nodiscard]] bool subset_of(const StateSet& other) const { return (bits_ & ~other.bits_) == 0; }

    void insert(std::size_t i) { bits_ |= std::uint64_t{1} << i; }
    void erase(std::size_t i) { bits_ &= ~(std::uint64_t{1} << i); }

    /// Index of the least member; width() when empty.
    [[nodiscard]] std::size_t first() const {
        return bits_ == 0 ? width_ : static_cast<std::size_t>(std::countr_zero(bits_));
    }

    [[nodiscard]] std::vector<std::size_t> indices() const {
        std::vector<std::size_t> out;
        for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
            out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
        }
        return out;
    }

    StateSet operator~() const { return StateSet{width_, ~bits_}; }
    StateSet& operator&=(const StateSet& o) { bits_ &= o.bits_; return *this; }
    StateSet& operator|=(const StateSet& o) { bits_ |= o.bits_; return *this; }
    StateSet& operator-=(const StateSet& o) { bits_ &= ~o.bits_; return *this; }

    friend StateSet operator&(StateSet a, const StateSet& b) { return a &= b; }
    friend StateSet operator|(StateSet a, const StateSet& b) { return a |= b; }
    friend StateSet operator-(StateSet a, const StateSet& b) { return a -= b; }

    friend bool operator==(const StateSet&, const StateSet&) = default;
    friend auto operator<=>(const StateSet& a, const StateSet& b) {
        if (auto c = a.width_ <=> b.width_; c != 0) {
            return c;
        }
        return a.bits_ <=> b.bits_;
    }

    static constexpr std::uint64_t mask_for(std::size_t width) {
        return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
    }

private:
    std::uint64_t bits_ = 0;
    std::size_t width_ = 0;
};

inline StateSet complement(const StateSet& x) { return ~x; }

/// Calls fn(StateSet) for every subset of a width-wide base, in increasing bitmask order.
template <typename Fn>
void for_each_subset(std::size_t width, Fn&& fn) {
    const std::uint64_t limit = std::uint64_t{1} << width;
    for (std::uint64_t b = 0; b < limit; ++b) {
        fn(StateSet{width, b});
    }
}

} // namespace uekit
