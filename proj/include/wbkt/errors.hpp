#pragma once

#include <stdexcept>
#include <string>

namespace wbkt {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid grid, model or experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Base for failures raised while advancing a solution.
class SolverError : public Error {
 public:
  using Error::Error;
};

class NonphysicalState : public SolverError {
 public:
  using SolverError::SolverError;
};

// A central fan subdomain collapsed (time step too large for the local speeds).
class DegenerateFan : public SolverError {
 public:
  using SolverError::SolverError;
};

// a+ == a- at an interface whose one-sided states differ and no speed floor is set.
class DivisionByZeroSpeed : public SolverError {
 public:
  using SolverError::SolverError;
};

class PointOutsideCell : public Error {
 public:
  using Error::Error;
};

class GridMismatch : public Error {
 public:
  using Error::Error;
};

class NonPositiveError : public Error {
 public:
  using Error::Error;
};

}  // namespace wbkt
