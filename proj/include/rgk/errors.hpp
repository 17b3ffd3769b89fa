#pragma once

#include <stdexcept>
#include <string>

namespace rgk {

// Precondition violated by caller-supplied data (bad probability, odd n, ...).
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Operation is well defined mathematically but outside what we implement
// (e.g. automorphism count of a group with a free part).
class Unsupported : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// An internal consistency check failed; indicates a bug, not bad input.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace rgk
