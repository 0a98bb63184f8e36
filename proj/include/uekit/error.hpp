#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace uekit {

/// Malformed formula text. Carries the byte offset of the failure and the
/// tokens that would have been accepted there.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& found);

    [[nodiscard]] std::size_t offset() const { return offset_; }
    [[nodiscard]] const std::vector<std::string>& expected() const { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

enum class ModelErrorKind { schema, reference, duplicate_state, kind_mismatch };

/// A model file that fails its schema or its invariants.
class ModelError : public std::runtime_error {
public:
    ModelError(ModelErrorKind kind, const std::string& what) : std::runtime_error{what}, kind_{kind} {}
    [[nodiscard]] ModelErrorKind kind() const { return kind_; }

private:
    ModelErrorKind kind_;
};

/// Well-formed input that the requested operation cannot handle: unsupported
/// operator, unknown state, width mismatch, size cap, incompatible kinds.
class SemanticError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace uekit
