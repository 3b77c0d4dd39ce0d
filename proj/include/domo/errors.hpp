#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace domo {

/// A parameter failed its precondition (nonpositive rate, negative alpha, ...).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An argument fell outside the mathematical domain of an operation (u outside (0,1), n = 0, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Malformed textual input (distribution spec strings, unknown family tags).
class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The operation needs something the inputs do not provide (a density, a second parameter triple, ...).
class CapabilityError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

namespace detail {

inline void require_positive(double value, const char* field) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw ValidationError(std::string(field) + " must be > 0");
    }
}

} // namespace detail
} // namespace domo
