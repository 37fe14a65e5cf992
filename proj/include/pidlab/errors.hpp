#pragma once

#include <stdexcept>
#include <string>

namespace pidlab {

// Invalid parameter or argument outside its documented domain.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A series is too short for the requested operation.
struct LengthError : std::length_error {
    using std::length_error::length_error;
};

// Plant state became non-finite; carries the simulation time of blow-up.
struct DivergenceError : std::runtime_error {
    double time;
    explicit DivergenceError(double t)
        : std::runtime_error("plant state diverged at t=" + std::to_string(t)), time(t) {}
};

// Step response never reached steady state within the record.
struct NotSettledError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Step response has zero span; nothing to identify.
struct DegenerateResponseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed or contradictory run configuration.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace pidlab
