#pragma once

#include <stdexcept>
#include <string>

namespace isac {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input geometry collapses (e.g. query point coincides with a circle center).
struct DegenerateInput : Error {
    using Error::Error;
};

/// A point expected on a circle boundary is off it beyond tolerance.
struct NotOnBoundary : Error {
    using Error::Error;
};

/// Consecutive path segments do not join within tolerance.
struct Discontinuous : Error {
    using Error::Error;
};

/// Antenna gain evaluated at (or too close to) the nadir singularity.
struct SingularElevation : Error {
    using Error::Error;
};

/// Scalar argument outside its documented range.
struct OutOfRange : Error {
    using Error::Error;
};

/// Data threshold cannot be met because the worst point sees zero rate.
struct InfeasibleThreshold : Error {
    using Error::Error;
};

/// A descent step increased the objective beyond numerical tolerance.
struct MonotonicityViolation : Error {
    using Error::Error;
};

/// Halving the integration step moved the verified minimum by more than 1%.
struct ResolutionTooCoarse : Error {
    using Error::Error;
};

/// Scenario or plan file could not be parsed; message names the field.
struct ParseError : Error {
    using Error::Error;
};

/// Parsed input violates a documented invariant; message names it.
struct ValidationError : Error {
    using Error::Error;
};

} // namespace isac
