#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace chieq {

namespace detail {
inline std::string residual_text(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}
}  // namespace detail

/// Base class for failures raised by the implicit stage solvers.
class SolverError : public std::runtime_error {
public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

/// The Picard iteration exhausted its iteration budget.
class NonConvergenceError : public SolverError {
public:
  NonConvergenceError(int iterations, double last_residual)
      : SolverError("stage solver did not converge after " +
                    std::to_string(iterations) + " iterations (residual " +
                    detail::residual_text(last_residual) + ")"),
        iterations(iterations),
        last_residual(last_residual) {}

  int iterations;
  double last_residual;
};

/// The iterate left the finite range or the residual exceeded the
/// divergence guard; the time step is too large for the fixed-point map.
class BlowupError : public SolverError {
public:
  explicit BlowupError(const std::string& what) : SolverError(what) {}
};

/// A per-mode stage matrix is numerically singular.
class SingularStageMatrixError : public SolverError {
public:
  explicit SingularStageMatrixError(const std::string& what) : SolverError(what) {}
};

/// Two fields that must live on the same grid do not.
class GridMismatchError : public std::invalid_argument {
public:
  explicit GridMismatchError(const std::string& what) : std::invalid_argument(what) {}
};

/// Malformed run configuration (file or override).
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace chieq
