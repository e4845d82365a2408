#pragma once

#include <stdexcept>
#include <string>

namespace fermicorr {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An enumeration or operator would exceed a configured memory/dimension cap.
class CapacityError : public Error {
public:
    using Error::Error;
};

// A brute-force evaluation was requested above its configured size ceiling.
class BudgetError : public Error {
public:
    using Error::Error;
};

// Iterative eigensolver did not reach the requested residual.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double residual)
        : Error(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

// Open-shell particle number: the unperturbed ground state is degenerate.
class DegeneracyError : public Error {
public:
    using Error::Error;
};

// Precondition on an argument violated (wrong sign, zero momentum, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Malformed configuration or input file.
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace fermicorr
