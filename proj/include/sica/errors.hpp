#pragma once

#include <stdexcept>

namespace sica {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A parameter, configuration value, or input document is unusable.
struct InvalidParams : Error { using Error::Error; };
// Total population reached zero where a division by N is required.
struct ZeroPopulation : Error { using Error::Error; };
// Step size h <= 0.
struct NonpositiveStep : Error { using Error::Error; };
// Endemic equilibrium requested while R0 <= 1.
struct NoEndemicEquilibrium : Error { using Error::Error; };
// Trajectory has too few states for the requested computation.
struct TrajectoryTooShort : Error { using Error::Error; };
// A compartment is zero or negative where strict positivity is required.
struct NonpositiveCompartment : Error { using Error::Error; };
// Trajectory does not reach the requested year.
struct HorizonTooShort : Error { using Error::Error; };
// Two aligned series have different lengths or misaligned years.
struct LengthMismatch : Error { using Error::Error; };
// An internal numeric cross-check or iterative routine failed.
struct NumericalFailure : Error { using Error::Error; };

} // namespace sica
