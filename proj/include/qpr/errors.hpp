#pragma once

#include <stdexcept>
#include <string>

namespace qpr {

// Process exit codes used by the CLI; each error class maps to one.
enum class ExitCode : int {
    ok = 0,
    internal = 1,
    usage = 2,
    io = 3,
    convergence = 4,
    numerical = 5,
    incompatible = 6,
};

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
    virtual ExitCode exit_code() const { return ExitCode::internal; }
};

// Bad sizes, indices, dimension mismatches: caller bugs or bad CLI input.
struct UsageError : Error {
    using Error::Error;
    ExitCode exit_code() const override { return ExitCode::usage; }
};

struct IoError : Error {
    using Error::Error;
    ExitCode exit_code() const override { return ExitCode::io; }
};

// Iterative solver failed to reach tolerance; carries the final residual.
struct ConvergenceError : Error {
    double residual;
    ConvergenceError(const std::string& msg, double res)
        : Error(msg + " (residual " + std::to_string(res) + ")"), residual(res) {}
    ExitCode exit_code() const override { return ExitCode::convergence; }
};

// Norm drift, non-real Hermitian expectations, NaN loss: numerical health.
struct NumericalError : Error {
    using Error::Error;
    ExitCode exit_code() const override { return ExitCode::numerical; }
};

// Schema-version or config-digest mismatch between artifacts.
struct CompatibilityError : Error {
    using Error::Error;
    ExitCode exit_code() const override { return ExitCode::incompatible; }
};

struct FitError : Error {
    using Error::Error;
    ExitCode exit_code() const override { return ExitCode::numerical; }
};

}  // namespace qpr
