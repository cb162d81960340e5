#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kho {

/// Input outside the mathematical domain of an operation (odd grid size,
/// non-finite amplitudes, a wavepacket that does not fit on the grid, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A documented precondition of a numerical method was violated, e.g. the
/// split-step stability bound.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Requested problem size exceeds a configured memory cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The evolved state leaked into the outer band of the grid.
class ConfinementError : public std::runtime_error {
 public:
  ConfinementError(const std::string& what, std::size_t kick)
      : std::runtime_error(what), kick_(kick) {}

  /// Last kick index whose state was still confined.
  std::size_t kick() const noexcept { return kick_; }

 private:
  std::size_t kick_;
};

/// Dense eigensolver failure. `certified()` is the number of eigenpairs that
/// converged and passed the residual check.
class DecompositionError : public std::runtime_error {
 public:
  DecompositionError(const std::string& what, std::size_t certified)
      : std::runtime_error(what), certified_(certified) {}

  std::size_t certified() const noexcept { return certified_; }

 private:
  std::size_t certified_;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kho
