#pragma once

#include <stdexcept>
#include <string>

namespace qagap {

/// Requested problem exceeds a configured resource bound (enumeration, dense, state vector).
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: bad instance parameters, invalid schedules, broken files.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Vector or matrix length does not match the Hilbert-space dimension.
class DimensionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A mathematical guarantee the solver relies on was violated. Never expected in practice.
class InternalInvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// The requested eigenvalue sits on a deflated pole; its eigenvector is not the
/// closed-form secular vector and must be built from the level subspace instead.
class DeflatedEigenvectorError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Time integration lost unitarity beyond tolerance.
class IntegrationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace qagap
