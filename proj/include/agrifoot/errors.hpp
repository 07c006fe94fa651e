#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace agrifoot {

/// Malformed or inconsistent user input (configuration files, tables, catalogs).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Failure while evaluating a valid model (coverage gaps, infeasible reconstruction, ...).
class EngineError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The allocation profile gives zero total weight at one or more farm sizes.
class CoverageError : public EngineError {
public:
    CoverageError(std::vector<double> sizes, const std::string& what)
        : EngineError(what), sizes_(std::move(sizes)) {}

    const std::vector<double>& sizes() const noexcept { return sizes_; }

private:
    std::vector<double> sizes_;
};

/// No non-negative continuous density reproduces the requested coarse statistics.
class ReconstructionError : public EngineError {
public:
    using EngineError::EngineError;
};

/// Too many Monte Carlo samples failed.
class SensitivityAbort : public EngineError {
public:
    using EngineError::EngineError;
};

}  // namespace agrifoot
