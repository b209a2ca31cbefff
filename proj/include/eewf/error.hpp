// Copyright 2026 the eewf authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace eewf {

/// Base class for all library errors.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Bad argument: dimension mismatch, out-of-domain parameter, invalid active set.
class invalid_input : public error {
public:
    using error::error;
};

/// Non-finite data or a numerical procedure that lost its guarantees
/// (e.g. no sign change in a root bracket).
class numeric_error : public error {
public:
    using error::error;
};

/// Spectrum with no positive eigenvalue: no power can reach the receiver.
class degenerate_channel : public error {
public:
    using error::error;
};

/// Water-level denominator went nonpositive for an active channel, or the
/// converged multiplier is not strictly positive.
class infeasible_multiplier : public error {
public:
    using error::error;
};

/// Requested efficiency at zero transmit power.
class undefined_efficiency : public error {
public:
    using error::error;
};

/// Oracle asked to enumerate more dimensions than it supports.
class unsupported_dimension : public error {
public:
    using error::error;
};

/// Too many per-trial solver failures inside one ensemble run.
class ensemble_failure : public error {
public:
    using error::error;
};

} // namespace eewf
