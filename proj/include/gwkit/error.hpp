#ifndef GWKIT_ERROR_HPP
#define GWKIT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace gwkit {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Operands from mismatched handles, unknown vertices, wrong vertex group.
struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// Invalid construction input (asymmetric adjacency, bad multiplication table, ...).
struct ValidationError : Error {
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

// Operation not defined for this handle (e.g. exact girth of an infinite graph).
struct UnsupportedError : Error {
    explicit UnsupportedError(const std::string& msg) : Error(msg) {}
};

// A bounded search ran out of its node budget.
struct BudgetError : Error {
    explicit BudgetError(const std::string& msg) : Error(msg) {}
};

// A verified postcondition failed; carries the counterexample in the message.
struct PropertyError : Error {
    explicit PropertyError(const std::string& msg) : Error(msg) {}
};

} // namespace gwkit

#endif
