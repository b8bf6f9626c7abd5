#pragma once

#include <stdexcept>
#include <string>

namespace qwalk {

// Numerical or parameter-domain violation (bad pmf parameters, non-unitary
// coin, shift past the allocated lattice, degenerate fit input).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Malformed user input: unparseable spec strings, grids, config files.
class UsageError : public std::invalid_argument {
public:
    explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace qwalk
