#ifndef QBATTERY_ERRORS_HPP
#define QBATTERY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qbattery {

// Base class for every error raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Basis would exceed the configured state cap.
class capacity_error : public error {
 public:
  using error::error;
};

// Basis and parameters describe different systems.
class mismatch_error : public error {
 public:
  using error::error;
};

class parameter_error : public error {
 public:
  using error::error;
};

// A requested configuration is not part of the basis (e.g. cutoff too low).
class missing_state_error : public error {
 public:
  using error::error;
};

// No dynamics: zero Rabi frequency.
class degenerate_error : public error {
 public:
  using error::error;
};

class insufficient_data_error : public error {
 public:
  using error::error;
};

// Logarithm of a non-positive value requested.
class nonpositive_error : public error {
 public:
  using error::error;
};

class convergence_error : public error {
 public:
  using error::error;
};

class dimension_error : public error {
 public:
  using error::error;
};

class usage_error : public error {
 public:
  using error::error;
};

class io_error : public error {
 public:
  using error::error;
};

}  // namespace qbattery

#endif  // QBATTERY_ERRORS_HPP
