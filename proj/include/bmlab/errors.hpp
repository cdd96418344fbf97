#pragma once

#include <stdexcept>
#include <string>

namespace bmlab {

/// Base of every error raised by the library. `contract()` names the module
/// contract that was violated so front-ends can report it verbatim.
class Error : public std::runtime_error {
 public:
  Error(std::string contract, const std::string& what)
      : std::runtime_error(contract + ": " + what), contract_(std::move(contract)) {}

  const std::string& contract() const noexcept { return contract_; }

 private:
  std::string contract_;
};

/// Invalid or inconsistent configuration (bad key, violated invariant).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Precondition of an operation not met by its arguments.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Iterative solver gave up before reaching its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(std::string contract, const std::string& what, double last_residual)
      : Error(std::move(contract), what), last_residual_(last_residual) {}

  double last_residual() const noexcept { return last_residual_; }

 private:
  double last_residual_;
};

/// First-order transverse correction is not valid for this atom number.
class PerturbationBreakdown : public Error {
 public:
  PerturbationBreakdown(std::string contract, const std::string& what, long atom_count)
      : Error(std::move(contract), what), atom_count_(atom_count) {}

  long atom_count() const noexcept { return atom_count_; }

 private:
  long atom_count_;
};

}  // namespace bmlab
