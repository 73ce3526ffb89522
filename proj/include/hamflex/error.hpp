// SPDX-License-Identifier: Apache-2.0

#ifndef HAMFLEX_ERROR_HPP
#define HAMFLEX_ERROR_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hamflex {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid user input: bad dimensions, unknown names, out-of-range parameters.
class ConfigError : public Error {
public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

/// A numerical operation failed (factorization breakdown, divergence, ...).
class NumericalError : public Error {
public:
  explicit NumericalError(const std::string& what) : Error(what) {}
};

/// SPD factorization hit a non-positive pivot.
class NotPositiveDefinite : public NumericalError {
public:
  NotPositiveDefinite(std::int64_t pivot, const std::string& what)
      : NumericalError(what), pivot_index(pivot) {}
  std::int64_t pivot_index;
};

/// Iterative solver exhausted its iteration budget.
class IterationBudgetError : public NumericalError {
public:
  IterationBudgetError(int iterations, double residual, const std::string& what)
      : NumericalError(what), iterations(iterations), final_residual(residual) {}
  int iterations;
  double final_residual;
};

/// A time step could not be completed (e.g. Newton non-convergence).
class StepFailure : public NumericalError {
public:
  StepFailure(std::int64_t step, double time, std::vector<double> residuals,
              const std::string& what)
      : NumericalError(what), step(step), time(time),
        residual_history(std::move(residuals)) {}
  std::int64_t step;
  double time;
  std::vector<double> residual_history;
};

class MeshError : public Error {
public:
  explicit MeshError(const std::string& what) : Error(what) {}
};

class FileError : public Error {
public:
  explicit FileError(const std::string& what) : Error(what) {}
};

} // namespace hamflex

#endif
