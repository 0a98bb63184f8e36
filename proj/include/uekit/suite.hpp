#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace uekit {

/// Largest base the suite draws; pairs of ue models must fit the closure cap.
inline constexpr std::size_t suite_state_cap = 8;

struct SuiteConfig {
    std::uint64_t seed = 0;
    std::size_t count = 100;
    std::size_t max_states = 5;
    /// Test hook: evaluate the laws with m_nabla standing in for m_delta.
    bool delta_mutant = false;
};

struct SuiteResult {
    /// JSON summary with per-law pass/fail counts and the first counterexample.
    std::string json;
    bool passed = true;
};

/// Runs the law battery on count seeded random cases. Throws SemanticError
/// when max_states is 0 or above suite_state_cap.
SuiteResult run_suite(const SuiteConfig& config);

} // namespace uekit
