#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace oemi {

// Invalid physical input: nonpositive damping, negative coupling, bad grid.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Singular systems, degenerate closed forms, non-converged iterations,
// spectra that do not cover a requested feature.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Non-fatal diagnostic attached to a result. `code` is a stable short
// identifier ("rwa", "noise_regime", ...) suitable for filtering.
struct Warning {
    std::string code;
    std::string message;

    friend bool operator==(const Warning&, const Warning&) = default;
};

using Warnings = std::vector<Warning>;

} // namespace oemi
