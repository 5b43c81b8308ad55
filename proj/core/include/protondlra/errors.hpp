// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pdlra
{
//! Base class for all library errors.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! Malformed input text. Carries the 1-based line number of the offending row.
class ParseError : public Error
{
  public:
    ParseError(std::string const& what, std::size_t line)
        : Error(what + " (line " + std::to_string(line) + ")"), line_(line)
    {
    }

    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

//! Input that parsed but violates a structural invariant.
class ValidationError : public Error
{
  public:
    using Error::Error;
};

//! Query outside the coverage of a table or mesh.
class DomainError : public Error
{
  public:
    using Error::Error;
};

//! Numerical procedure failed to reach its accuracy target.
class AccuracyError : public Error
{
  public:
    using Error::Error;
};

//! Time stepping or ray marching failure.
class SolverError : public Error
{
  public:
    using Error::Error;
};

//! Bad run configuration.
class ConfigError : public Error
{
  public:
    using Error::Error;
};

}  // namespace pdlra
