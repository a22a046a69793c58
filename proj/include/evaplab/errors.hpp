#pragma once

#include <stdexcept>
#include <string>

namespace evaplab {

/// Bad caller input: unknown labels, dimension mismatches, parameters out of range.
struct ArgumentError : std::invalid_argument {
    explicit ArgumentError(const std::string& what) : std::invalid_argument(what) {}
};

/// Requested object would exceed the configured amplitude budget.
struct CapacityError : std::runtime_error {
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical validity violated beyond tolerance (non-PSD spectrum, broken
/// uncertainty relation, singular dynamical matrix).
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Not enough usable data points for a fit.
struct InsufficientDataError : std::runtime_error {
    explicit InsufficientDataError(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid run configuration; message names the offending field.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace evaplab
