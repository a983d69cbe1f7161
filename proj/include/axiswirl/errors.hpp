#pragma once

#include <stdexcept>
#include <string>

namespace axiswirl {

/// Base class for recoverable run-time failures. Precondition violations
/// by the caller are reported with std::invalid_argument instead.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A region has no grid node inside it.
class EmptyRegionError : public Error {
public:
    using Error::Error;
};

/// The stream-function solve did not reach its residual tolerance.
class EllipticSolveError : public Error {
public:
    EllipticSolveError(const std::string& what, double residual)
        : Error(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

/// The retained trajectory does not cover a monitor's look-back window.
class RetentionError : public Error {
public:
    using Error::Error;
};

/// Invalid run configuration. key() names the offending key.
class ConfigError : public Error {
public:
    ConfigError(const std::string& key, const std::string& what)
        : Error(key + ": " + what), key_(key) {}
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

/// Corrupt or inconsistent snapshot file.
class SnapshotError : public Error {
public:
    using Error::Error;
};

}  // namespace axiswirl
