#pragma once

#include <stdexcept>
#include <string>

namespace wlab {

// Base class for all toolkit errors. Subclasses distinguish input problems
// (bad files, bad geometry) from numerical non-convergence; the CLI maps the
// former to exit code 3 and the latter to exit code 2.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct InputError : Error {
    using Error::Error;
};

struct NumericalError : Error {
    using Error::Error;
};

// det(g) fell below tol_g at an evaluation point.
struct DegenerateImmersion : InputError {
    using InputError::InputError;
};

// Malformed OBJ/OFF input.
struct ParseError : InputError {
    using InputError::InputError;
};

// Mesh connectivity violates manifold-with-boundary assumptions.
struct NonManifold : InputError {
    using InputError::InputError;
};

// A chart cutoff boundary crosses the interior of an integration region and
// the caller did not pass allow_truncation.
struct TruncationUnsound : InputError {
    using InputError::InputError;
};

// Extrapolation models disagree beyond their own uncertainty.
struct NonConvergent : NumericalError {
    using NumericalError::NumericalError;
};

// Inversion base point lies on the surface and no puncture was declared.
struct BasePointOnSurface : InputError {
    using InputError::InputError;
};

// Point sample lacks per-point tangent planes.
struct MissingTangents : InputError {
    using InputError::InputError;
};

// Point cloud is too collinear to define a 2-plane.
struct DegenerateCloud : InputError {
    using InputError::InputError;
};

// Sample spacing too coarse for the requested scan scales.
struct SamplingTooCoarse : InputError {
    using InputError::InputError;
};

struct EmptyBall : InputError {
    using InputError::InputError;
};

// End counts failed to stabilize over the last radii of the schedule.
struct Unstable : NumericalError {
    using NumericalError::NumericalError;
};

} // namespace wlab
