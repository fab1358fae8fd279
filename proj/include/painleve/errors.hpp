#ifndef PAINLEVE_ERRORS_HPP
#define PAINLEVE_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace painleve {

/// Result of an iterative solve. `converged` implies `final_residual <= tolerance`.
struct SolveReport {
    int iterations = 0;
    double final_residual = 0.0;
    double tolerance = 0.0;
    bool converged = false;
    int damping_events = 0;
    int flow_steps = 0;
    /// Largest absolute mismatch between adjacent boundary edges at shared corners.
    double corner_mismatch = 0.0;
};

class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class OutOfDomain : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

class NoConvergence : public std::runtime_error {
public:
    NoConvergence(const std::string& what, SolveReport report)
        : std::runtime_error(what), report_(std::move(report)) {}
    const SolveReport& report() const noexcept { return report_; }

private:
    SolveReport report_;
};

/// A converged iterate that breaks a structural property (sign, bound, monotonicity).
class InvariantViolation : public std::runtime_error {
public:
    InvariantViolation(const std::string& what, double x1, double x2, SolveReport report = {})
        : std::runtime_error(what), x1_(x1), x2_(x2), report_(std::move(report)) {}
    double x1() const noexcept { return x1_; }
    double x2() const noexcept { return x2_; }
    const SolveReport& report() const noexcept { return report_; }

private:
    double x1_;
    double x2_;
    SolveReport report_;
};

class InsufficientCoverage : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SupportViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace painleve

#endif  // PAINLEVE_ERRORS_HPP
