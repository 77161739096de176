#pragma once

#include <stdexcept>
#include <string>

namespace lieprop {

/// Tolerances shared by the series and quadrature routines.
struct EvaluationPolicy {
    double rel_tol = 1e-12;
    double abs_tol = 1e-300;
    int max_terms = 500;
    int quadrature_nodes = 64;

    void validate() const;
};

/// Evolution parameter: Euclidean (imaginary time beta, kernels of exp(-beta H / hbar))
/// or real time tau.
enum class Mode { euclidean, real_time };

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class UnsupportedMode : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a function value does not fit in a double; a scaled variant exists.
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

/// Quadrature or series failed to reach the requested tolerance.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double estimate)
        : std::runtime_error(what), estimate_(estimate) {}
    double estimate() const noexcept { return estimate_; }

private:
    double estimate_;
};

inline void EvaluationPolicy::validate() const {
    if (!(rel_tol > 0.0)) throw DomainError("EvaluationPolicy: rel_tol must be positive");
    if (max_terms < 16) throw DomainError("EvaluationPolicy: max_terms must be at least 16");
    if (quadrature_nodes < 1) throw DomainError("EvaluationPolicy: quadrature_nodes must be positive");
}

} // namespace lieprop
