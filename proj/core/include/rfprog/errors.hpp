#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rfprog {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Multiplicative inverse of zero requested.
struct ZeroInverse : Error {
    using Error::Error;
};

// {1, F, G} (or {1, F, R}) are linearly dependent over Q.
struct DependentInput : Error {
    using Error::Error;
};

// Expression parse failure; `position` is the byte offset into the input.
struct SyntaxError : Error {
    std::size_t position;
    SyntaxError(const std::string& msg, std::size_t pos)
        : Error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

// A denominator simplified to the zero function.
struct DivisionByZeroFunction : Error {
    using Error::Error;
};

// Norm exponent outside {1, 2, 4, inf}.
struct UnsupportedExponent : Error {
    using Error::Error;
};

struct NonpositiveEpsilon : Error {
    using Error::Error;
};

// Operands live over different primes.
struct PrimeMismatch : Error {
    using Error::Error;
};

// Prime fails validation or the good-prime predicate for the ambient (F, G).
struct BadPrime : Error {
    using Error::Error;
};

// Prime exceeds the limit of an enumeration-based algorithm.
struct PrimeTooLarge : Error {
    using Error::Error;
};

// Floating-point accumulation drifted too far from an integer result.
struct RoundingFailure : Error {
    using Error::Error;
};

struct InsufficientData : Error {
    using Error::Error;
};

// Malformed input file (grid-function CSV, set file).
struct FileFormatError : Error {
    using Error::Error;
};

}  // namespace rfprog
