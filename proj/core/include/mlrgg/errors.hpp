#pragma once

#include <stdexcept>

namespace mlrgg {

// Work refused because it would exceed a caller-supplied resource budget.
class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input document is malformed or fails its consistency checks.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Filesystem read or write failed.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace mlrgg
