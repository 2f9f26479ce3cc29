#pragma once

#include <stdexcept>
#include <string>

namespace cfomimo {

// Base for every error raised by the library; the CLI maps these to exit code 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// PDP table does not have K rows of L strictly positive entries.
class DimensionError : public Error {
public:
    using Error::Error;
};

// Pilot or uplink slot too short for the requested K, L.
class TimelineError : public Error {
public:
    using Error::Error;
};

// max |omega| * K * L exceeds the estimator's unambiguous range.
class CfoBoundError : public Error {
public:
    using Error::Error;
};

// Argument outside the domain of a closed-form expression (e.g. N <= KL).
class DomainError : public Error {
public:
    using Error::Error;
};

// Block correlation sum is exactly zero, so the CFO phase is undefined.
class DegenerateError : public Error {
public:
    using Error::Error;
};

// Input array shape does not match the configuration.
class ShapeError : public Error {
public:
    using Error::Error;
};

// Target rate lies above what the SNR search bracket can reach.
class UnachievableError : public Error {
public:
    using Error::Error;
};

class EmptyStatsError : public Error {
public:
    using Error::Error;
};

// Malformed config file or --set override.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace cfomimo
