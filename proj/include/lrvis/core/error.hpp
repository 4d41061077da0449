// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace lrvis {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A dataset or scene violates a structural invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Malformed or truncated input file.
class FormatError : public Error {
public:
    using Error::Error;
};

/// A lookup structure reached an inconsistent state (cycle, bad pointer).
class StructureError : public Error {
public:
    using Error::Error;
};

/// Numerical failure during evaluation or integration.
class NumericError : public Error {
public:
    using Error::Error;
};

}  // namespace lrvis
