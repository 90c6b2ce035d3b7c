#pragma once

#include <stdexcept>
#include <string>

namespace gridsched {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Invalid solver/generator parameters or instance construction arguments.
class ConfigError : public Error {
  public:
    using Error::Error;
};

class MalformedAssignment : public Error {
  public:
    using Error::Error;
};

// NaN or infinity where a finite value is required.
class NumericDomainError : public Error {
  public:
    using Error::Error;
};

// Exhaustive enumeration would exceed the configured budget.
class OracleInfeasible : public Error {
  public:
    using Error::Error;
};

}  // namespace gridsched
