#pragma once

#include <stdexcept>
#include <string>

namespace frisk {

// Bad argument values (non-finite input, out-of-domain point, invalid parameter).
struct DomainError : std::invalid_argument {
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// A numeric method failed or is not available for the requested regime.
// `method` names what was attempted so callers can report it.
struct EvalError : std::runtime_error {
    std::string method;
    EvalError(std::string m, const std::string& what)
        : std::runtime_error(what), method(std::move(m)) {}
};

// Model-spec rejection; `field` names the offending field or constraint.
struct ValidationError : std::invalid_argument {
    std::string field;
    ValidationError(std::string f, const std::string& what)
        : std::invalid_argument(what), field(std::move(f)) {}
};

// Operation called on a spec outside its supported family.
struct UnsupportedSpecError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operand violates a documented contract (e.g. non-decaying function for a
// right-sided operator).
struct ContractError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Root finding terminated with the wrong number of roots; message lists what
// was found.
struct RootCountError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Characteristic roots closer than the supported separation.
struct MultiplicityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Coefficient solve failed or its post-check did not hold.
struct CoefficientError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace frisk
