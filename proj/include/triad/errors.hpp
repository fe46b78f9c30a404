#pragma once

#include <stdexcept>
#include <string>

namespace triad {

// Argument outside the mathematical domain of a function (negative
// concentration, x0 <= 0 for xi, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Growth curve used where its hypothesis class does not allow it.
class ClassError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Parameter set violating a model constraint.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A numerical procedure failed to meet its residual tolerance.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Integrator step size collapsed.
class StiffnessError : public std::runtime_error {
public:
    StiffnessError(const std::string& what, double t, double h)
        : std::runtime_error(what), time(t), step(h) {}
    double time;
    double step;
};

// Jacobian handed to the block eigen-solver lacks the expected zero block.
class StructuralError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace triad
