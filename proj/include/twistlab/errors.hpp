#pragma once

#include <stdexcept>
#include <string>

namespace twistlab {

/// Base class for all domain errors raised by the toolkit.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A usage error: bad input shape, unsupported parameter range, malformed file.
/// CLI maps these to exit code 2.
struct UsageError : Error {
    using Error::Error;
};

/// A mathematical check that was expected to hold failed. CLI maps these to
/// exit code 1.
struct CheckError : Error {
    using Error::Error;
};

struct DimensionMismatch : UsageError {
    using UsageError::UsageError;
};

struct UnsupportedRank : UsageError {
    using UsageError::UsageError;
};

struct NotARoot : UsageError {
    using UsageError::UsageError;
};

struct NotPrimitive : UsageError {
    using UsageError::UsageError;
};

struct IndexOutOfRange : UsageError {
    using UsageError::UsageError;
};

struct InvalidDegrees : UsageError {
    using UsageError::UsageError;
};

struct NotGeneralType : UsageError {
    using UsageError::UsageError;
};

struct ZeroSection : Error {
    using Error::Error;
};

struct ChartSingularity : Error {
    using Error::Error;
};

struct SampleOnSingularLocus : Error {
    using Error::Error;
};

struct IntegrationDiverged : CheckError {
    using CheckError::CheckError;
};

struct OverflowError : Error {
    using Error::Error;
};

struct ConfigError : UsageError {
    using UsageError::UsageError;
};

} // namespace twistlab
