#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace loccmc {

/// Raised when an argument violates an operation's precondition.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when an iterative numerical routine fails to converge.
class NumericalFailure : public std::runtime_error {
public:
    NumericalFailure(const std::string& what, std::size_t index)
        : std::runtime_error(what), index_(index) {}

    /// Index of the eigenvalue (or element) that failed.
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/// Raised when a request exceeds a configured resource cap.
class ResourceLimit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace loccmc
