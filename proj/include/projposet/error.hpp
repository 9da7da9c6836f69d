#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace projposet {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range input (bad field spec, ambient mismatch, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

class SingularMatrix : public Error {
public:
    using Error::Error;
};

/// A theorem hypothesis (e.g. lattice length >= 4) does not hold for the input.
class HypothesisNotMet : public Error {
public:
    using Error::Error;
};

/// An exhaustive search ran out of its node budget.
class BudgetExceeded : public Error {
public:
    BudgetExceeded(const std::string & what, std::uint64_t nodes, std::uint64_t found) :
        Error(what), nodes_explored(nodes), solutions_found(found)
    {
    }

    std::uint64_t nodes_explored;
    std::uint64_t solutions_found;
};

/// A checked mathematical statement failed; carries a human-readable witness.
class Falsification : public Error {
public:
    using Error::Error;
};

} // namespace projposet
