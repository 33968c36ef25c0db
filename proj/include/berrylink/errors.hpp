#pragma once

#include <stdexcept>
#include <string>

namespace berrylink {

// Error taxonomy. Config/usage errors and numerical failures are kept as
// distinct branches so the CLI can map them onto distinct exit codes.

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// chart / domain
struct PoleError : NumericalError {
    using NumericalError::NumericalError;
};
struct SizeError : ConfigError {
    using ConfigError::ConfigError;
};
struct DomainMismatch : ConfigError {
    using ConfigError::ConfigError;
};

// gauge patches and frames
struct PatchSingularity : NumericalError {
    using NumericalError::NumericalError;
};
struct DegenerateFrame : NumericalError {
    using NumericalError::NumericalError;
};
struct BandDegeneracy : NumericalError {
    using NumericalError::NumericalError;
};

// curves
struct CurvesTooClose : NumericalError {
    using NumericalError::NumericalError;
};
struct OpenCurve : ConfigError {
    using ConfigError::ConfigError;
};

// harmonic labels / ladders
struct LadderBottom : ConfigError {
    using ConfigError::ConfigError;
};
struct InvalidLabel : ConfigError {
    using ConfigError::ConfigError;
};

// eigensolvers
struct ConvergenceError : NumericalError {
    using NumericalError::NumericalError;
};

}  // namespace berrylink
