#ifndef ETCONS_ERROR_HPP
#define ETCONS_ERROR_HPP

#include <stdexcept>
#include <string>

namespace etcons {

// Base for every error the library raises on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or dimensionally inconsistent input (scenario files, matrices).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A standing assumption of the method does not hold for the given data.
class AssumptionError : public Error {
 public:
  using Error::Error;
};

// Numerical routine could not produce a trustworthy result.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Integration produced a non-finite state.
class SimulationAbort : public Error {
 public:
  using Error::Error;
};

}  // namespace etcons

#endif  // ETCONS_ERROR_HPP
