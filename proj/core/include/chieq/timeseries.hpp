#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chieq/model.hpp"

namespace chieq {

/// Per-step nonlinear-solver settings for the implicit stage systems.
struct SolverOptions {
  double tol = 1e-12;            // relative stage residual, discrete L2
  int max_iter = 200;            // Picard sweep budget
  double divergence_guard = 1e6; // residuals above this abort the step
};

/// One recorded step of an integration (step 0 is the initial data).
struct StepRecord {
  int step = 0;
  double t = 0.0;
  double energy = 0.0;           // E(phi)
  double modified_energy = 0.0;  // F(phi, q)
  double q_residual_inf = 0.0;   // max |q - (phi^2 - 1 - C)|
  double mass = 0.0;             // integral of phi
  double balance_defect = 0.0;   // E_{n+1} - E_n + dt sum_i b_i M |grad mu_i|^2
  int iterations = 0;
  bool converged = true;
};

enum class RunStatus { Completed, NonConvergence, Blowup };

std::string to_string(RunStatus status);

struct RunMetadata {
  std::string tableau;
  double dt = 0.0;
  int dim = 1;
  int n = 0;
  double length = 0.0;
  double mobility = 1.0;
  double eps = 1.0;
  double stabilization = 0.0;
  std::uint64_t seed = 0;
  SolverOptions solver;
};

/// Recorded trajectory: one record per step plus the initial record, with
/// strictly increasing t. `final_state` is present for completed runs.
struct TimeSeries {
  RunMetadata meta;
  std::vector<StepRecord> records;
  std::optional<CHState> final_state;
  RunStatus status = RunStatus::Completed;
  int failed_step = -1;  // step index that raised, when status != Completed
};

}  // namespace chieq
