#pragma once

#include <stdexcept>
#include <string>

namespace bdm {

/// Argument outside [0,1] by more than the clamp tolerance.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Degree below what an operator requires (the order-II basis needs n >= 3).
class InvalidDegree : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A function model was asked for piecewise structure it does not carry.
class StructureMissing : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Composite quadrature hit its refinement cap before reaching the target.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double best_estimate, double achieved_tolerance)
        : std::runtime_error(what), best_estimate_(best_estimate), achieved_(achieved_tolerance) {}

    double best_estimate() const noexcept { return best_estimate_; }
    double achieved_tolerance() const noexcept { return achieved_; }

private:
    double best_estimate_;
    double achieved_;
};

} // namespace bdm
