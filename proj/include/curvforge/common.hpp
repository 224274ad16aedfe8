#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace curvforge {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

// Base of every error the library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid input, configuration, or violated precondition.
class ConfigError : public Error {
public:
    using Error::Error;
};

// A point or descriptor outside what an operation supports.
class DomainError : public Error {
public:
    using Error::Error;
};

// Iterative solve failed; carries the iteration count and last residual.
class SolverError : public Error {
public:
    SolverError(const std::string& what, int iterations, double residual)
        : Error(what), iterations_(iterations), residual_(residual) {}

    int iterations() const noexcept { return iterations_; }
    double residual() const noexcept { return residual_; }

private:
    int iterations_;
    double residual_;
};

// A checked mathematical property failed (comparison, bounds, |f| < 1, ...).
class VerificationError : public Error {
public:
    VerificationError(const std::string& what, Complex worst_point, double worst_value)
        : Error(what), worst_point_(worst_point), worst_value_(worst_value) {}

    Complex worst_point() const noexcept { return worst_point_; }
    double worst_value() const noexcept { return worst_value_; }

private:
    Complex worst_point_;
    double worst_value_;
};

// Failure inside a multi-stage pipeline, tagged with the stage name.
class PipelineError : public Error {
public:
    PipelineError(std::string stage, const std::string& what)
        : Error("[" + stage + "] " + what), stage_(std::move(stage)) {}

    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

inline double abs2(Complex z) { return std::norm(z); }

}  // namespace curvforge
