#pragma once

#include <stdexcept>

namespace lbd {

// Invalid sizes, values or flags. The CLI maps this (and its subclasses)
// to exit code 2.
struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Dimension disagreement between two operands.
struct ShapeError : ParameterError {
    using ParameterError::ParameterError;
};

// Descriptor payload kind does not fit the requested operation.
struct TypeError : ParameterError {
    using ParameterError::ParameterError;
};

// Data that does not belong together: pattern id mismatch, bad file magic.
// CLI exit code 3.
struct MismatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// File system and decoding failures. CLI exit code 4.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace lbd
