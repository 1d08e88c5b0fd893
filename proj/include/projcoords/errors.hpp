#pragma once

#include <stdexcept>
#include <string>

namespace projcoords {

// Bad arguments or violated preconditions. CLI exit code 2.
class InvalidInput : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A computation that could not be completed numerically. CLI exit code 3.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A data point outside every ball of a cover.
class CoverageError : public InvalidInput {
public:
    explicit CoverageError(int point)
        : InvalidInput("point " + std::to_string(point) + " is not covered by any ball"), point_(point) {}
    int point() const { return point_; }

private:
    int point_;
};

// Integer lift of a mod-p cocycle is not an integer cocycle.
class LiftError : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

class CannotAlign : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

class DegenerateError : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

} // namespace projcoords
