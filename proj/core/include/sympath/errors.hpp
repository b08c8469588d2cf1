#pragma once

#include <stdexcept>
#include <string>

namespace sympath {

// Malformed or out-of-contract input (bad JSON, invalid block parameters,
// non-symplectic matrix where one is required).  CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Input is well-formed but violates a documented precondition of the
// requested operation (e.g. a split requested on a path whose end matrix
// mixes unit and non-unit spectrum across the same block).  Exit code 2.
class PreconditionError : public std::runtime_error {
public:
    explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

// A numerical routine could not certify its own result (perturbation ladder
// failed to stabilize, internal consistency check like mu_plus - mu_minus ==
// nu failed, overflow in an explicit matrix evaluation).  Exit code 1.
class NumericalFailure : public std::runtime_error {
public:
    explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

} // namespace sympath
