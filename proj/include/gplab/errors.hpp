#pragma once

#include <stdexcept>
#include <string>

namespace gplab {

// Base class for all library errors. Subclasses exist so callers can
// distinguish configuration mistakes from runtime solver failures.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Two fields live on grids with different period/size/dimension.
struct GridMismatchError : Error {
    using Error::Error;
};

// A quantity was requested past the validity horizon of a trajectory.
struct BeyondHorizonError : Error {
    using Error::Error;
};

// A requested time is not among the stored sample times.
struct TimeNotSampledError : Error {
    using Error::Error;
};

// A field developed NaN/Inf samples; `time` is the simulation time at
// which the check failed.
struct NonFiniteFieldError : Error {
    double time;
    explicit NonFiniteFieldError(const std::string& what, double t)
        : Error(what), time(t) {}
};

// The symmetrizer-positivity condition f'(|a|^2) > 0 failed: the limit
// system is elliptic and ill-posed outside analytic data. The message
// names the violated condition.
struct EllipticRegionError : Error {
    using Error::Error;
};

// The solution left the smooth-solution window (blow-up proxy).
struct SmoothWindowError : Error {
    double time;
    explicit SmoothWindowError(const std::string& what, double t)
        : Error(what), time(t) {}
};

struct InvalidArgumentError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace gplab
