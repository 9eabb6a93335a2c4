#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace eulerfv {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A state violates rho > 0 or p > 0 (or internal energy > 0).
class NonPhysicalState : public Error {
 public:
  using Error::Error;
};

/// The Riemann data would open a vacuum between the two nonlinear waves.
class VacuumFormation : public Error {
 public:
  using Error::Error;
};

/// The star-pressure iteration exhausted both Newton and bisection budgets.
class NoConvergence : public Error {
 public:
  using Error::Error;
};

/// Raised by the time stepper when a cell drops below the density or
/// pressure alarm floor.
class MonitorViolation : public Error {
 public:
  MonitorViolation(const std::string& what, double time, std::size_t cell)
      : Error(what), time_(time), cell_(cell) {}

  double time() const { return time_; }
  std::size_t cell() const { return cell_; }

 private:
  double time_;
  std::size_t cell_;
};

/// Fine and coarse meshes are not related by integer refinement.
class NonNestedMesh : public Error {
 public:
  using Error::Error;
};

/// Two fields that must share a mesh do not.
class MeshMismatch : public Error {
 public:
  using Error::Error;
};

class UnknownScenario : public Error {
 public:
  using Error::Error;
};

/// Scenario document or run configuration is malformed.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace eulerfv
