#pragma once

#include <stdexcept>
#include <string>

namespace kgedp {

/// Argument outside the domain where a physical quantity is defined
/// (r <= 0, 1 + delta*E <= 0, |E| > m0c2, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// No real eta: 1/4 + eta(eta+1) < 0.
class BranchError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Quantization denominator n + 1 + eta vanishes at this energy.
class PoleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Root refinement ran out of iterations; carries the best iterate seen.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double best_iterate, int iterations)
        : std::runtime_error(what), best_iterate_(best_iterate), iterations_(iterations) {}

    double best_iterate() const noexcept { return best_iterate_; }
    int iterations() const noexcept { return iterations_; }

private:
    double best_iterate_;
    int iterations_;
};

/// Special-function evaluation failed to converge within its term cap.
class EvaluationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A requested eigenstate does not exist for the given parameters.
class AbsentError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace kgedp
