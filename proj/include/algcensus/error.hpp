#pragma once

#include <stdexcept>
#include <string>

namespace algcensus {

/// Bad input or violated precondition; CLI maps this to exit code 1.
struct validation_error : std::runtime_error {
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

/// Enumeration would exceed the configured tuple budget; CLI exit code 3.
struct budget_error : std::runtime_error {
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

/// Invariant broken inside the library (a bug, never a user error); CLI exit code 2.
struct internal_error : std::logic_error {
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace algcensus
