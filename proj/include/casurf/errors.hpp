#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace casurf {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A point asserted to lie on S^3 x R does not.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Surface parameters (or a trivial-surface selector) outside their domain.
class ParameterError : public Error {
public:
    using Error::Error;
};

class ProjectionError : public Error {
public:
    ProjectionError(const std::string& what, std::size_t sample_index)
        : Error(what), sample_index_(sample_index) {}
    std::size_t sample_index() const { return sample_index_; }

private:
    std::size_t sample_index_;
};

/// The first partials of an immersion are (numerically) dependent.
class DegenerateImmersionError : public Error {
public:
    using Error::Error;
};

/// dt has no tangential part, so the adapted frame is undefined.
class NormalAngleDegenerateError : public Error {
public:
    using Error::Error;
};

class DegenerateMetricError : public Error {
public:
    using Error::Error;
};

class InvalidMetricError : public Error {
public:
    using Error::Error;
};

/// A frame and a jet that do not describe the same point.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

class FrameAlignmentError : public Error {
public:
    using Error::Error;
};

/// Shape-operator entries that violate beta1^2 + beta2^2 = cos^2(theta).
class InconsistentInputError : public Error {
public:
    InconsistentInputError(const std::string& what, double residual)
        : Error(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

}  // namespace casurf
