#pragma once

#include <stdexcept>
#include <string>

namespace oddwalks {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed parameters or input files.
struct InvalidArgumentError : Error {
    using Error::Error;
};

// Structurally valid input that the requested analysis cannot accept
// (degenerate instance, missing perfect matching, unmet hypotheses, ...).
struct InfeasibleError : Error {
    using Error::Error;
};

// State space larger than the configured cap.
struct StateCapError : Error {
    using Error::Error;
};

// Eigensolver or iteration failed to meet its accuracy contract.
struct NumericError : Error {
    using Error::Error;
};

}  // namespace oddwalks
