// SPDX-License-Identifier: MIT
//
// Error taxonomy for the posbid library.
//
// All exceptions derive from posbid::Error.  The CLI maps them to process
// exit codes: ValidationError (malformed user input) -> 2, DomainError
// (arguments outside a function's mathematical domain) -> 2, CapacityError
// (request exceeds a configured size cap) -> 2, InvariantError (an internal
// postcondition failed; always a bug or a deliberately pinned impossible
// case) -> 3.
#pragma once

#include <stdexcept>
#include <string>

namespace posbid {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input text that could not be parsed (bad rational syntax, bad bid file,
// bad JSON payload).  Messages include position information when available.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Structurally valid arguments outside the mathematical domain of the
// requested operation (zero denominator, non-positive modulus, ratio outside
// the range a formula is defined on, index out of range, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// The request is well formed but larger than a configured cap (for example
// an exhaustive search beyond its tractable size).
class CapacityError : public Error {
public:
    using Error::Error;
};

// An internal invariant or construction postcondition failed.  Carries a
// short machine-readable case tag ("builder/case") plus a human explanation.
class InvariantError : public Error {
public:
    InvariantError(std::string tag, const std::string& what)
        : Error(tag + ": " + what), tag_(std::move(tag)) {}

    const std::string& tag() const noexcept { return tag_; }

private:
    std::string tag_;
};

}  // namespace posbid
