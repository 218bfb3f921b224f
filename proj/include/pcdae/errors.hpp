#pragma once

#include <stdexcept>
#include <string>

namespace pcdae {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Newton iteration failed to reach its tolerances.
class NewtonDivergence : public Error {
public:
    NewtonDivergence(const std::string& what, int iterations, double final_residual)
        : Error(what), iterations_(iterations), final_residual_(final_residual) {}

    [[nodiscard]] int iterations() const noexcept { return iterations_; }
    [[nodiscard]] double final_residual() const noexcept { return final_residual_; }

private:
    int iterations_;
    double final_residual_;
};

/// A pivot fell below the singularity threshold during factorization.
class SingularJacobian : public Error {
public:
    using Error::Error;
};

/// The step controller asked for a step below h_min.
class StepSizeUnderflow : public Error {
public:
    using Error::Error;
};

class InitializationFailure : public Error {
public:
    using Error::Error;
};

/// Case file could not be parsed or describes an inconsistent network.
class MalformedCase : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// Two trajectories do not carry the same variables.
class VariableMismatch : public Error {
public:
    using Error::Error;
};

}  // namespace pcdae
