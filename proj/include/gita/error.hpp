// SPDX-License-Identifier: Apache-2.0
//
// Error hierarchy shared by every gita module.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gita {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Invalid argument or unsatisfiable generator / builder parameters.
class ParameterError : public Error {
  public:
    using Error::Error;
};

/// Input violates a task's structural precondition (e.g. cyclic graph for TS).
class PreconditionError : public Error {
  public:
    using Error::Error;
};

class NoPathError : public Error {
  public:
    using Error::Error;
};

/// Input exceeds a hard size bound of an exact solver.
class CapacityError : public Error {
  public:
    using Error::Error;
};

class ConfigError : public Error {
  public:
    using Error::Error;
};

class IoError : public Error {
  public:
    using Error::Error;
};

class TransportError : public Error {
  public:
    using Error::Error;
};

class ParseError : public Error {
  public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " (at offset " + std::to_string(position) + ")"), position_(position) {}

    std::size_t position() const noexcept { return position_; }

  private:
    std::size_t position_;
};

}  // namespace gita
