#pragma once

#include <string>
#include <vector>

#include "chieq/errors.hpp"
#include "chieq/model.hpp"
#include "chieq/tableau.hpp"
#include "chieq/timeseries.hpp"

namespace chieq {

/// Convergence data for one stage solve.
struct StepReport {
  int iterations = 0;
  double final_residual = 0.0;
  bool converged = false;
  /// M * |grad mu_i|^2 per stage, from the converged stage chemical
  /// potentials; these are the dissipation terms of the discrete energy
  /// balance.
  std::vector<double> stage_mu_grad_norms;
};

/// Converged stage values and slopes of the s-stage quadratized RK step.
/// The structural relations phi_i = phi^n + dt sum_j a_ij k_j,
/// l_i = 2 phi_i k_i and q_i = q^n + dt sum_j a_ij l_j hold exactly as
/// stored; the stage equation k_i = M Lap(mu_i) holds to the solver
/// residual.
struct StageSystem {
  std::vector<ScalarField> phi;
  std::vector<ScalarField> q;
  std::vector<ScalarField> k;
  std::vector<ScalarField> l;
  StepReport report;
};

struct StepResult {
  CHState state;
  StepReport report;
};

/// Solves the coupled nonlinear stage system by Picard iteration with the
/// stiff linear part treated implicitly: each sweep freezes the nonlinear
/// stage term, solves one dense s x s system per Fourier mode for all
/// stage slopes simultaneously, rebuilds the stage values from the new
/// slopes, and measures the stage residual
/// max_i |k_i - M Lap(mu_i)| / max(1, |k_i|) in the discrete L2 norm.
///
/// Throws NonConvergenceError, BlowupError, or SingularStageMatrixError.
StageSystem solve_stage_system(const CHState& state, const ButcherTableau& tab,
                               double dt, const CHParams& p,
                               const SolverOptions& opts = {});

/// One step of the quadratized RK scheme: solve the stage system, then
/// phi^{n+1} = phi^n + dt sum_i b_i k_i and q^{n+1} = q^n + dt sum_i b_i l_i
/// using exactly the converged slopes.
StepResult step(const CHState& state, const ButcherTableau& tab, double dt,
                const CHParams& p, const SolverOptions& opts = {});

/// Raised by integrate; carries the partially recorded trajectory.
class IntegrationError : public SolverError {
public:
  IntegrationError(int step_index, RunStatus status, const std::string& what,
                   TimeSeries partial);

  int step_index;
  RunStatus status;
  TimeSeries partial;
};

/// Runs n_steps steps from phi0 with the consistent initial condition
/// q0 = phi0^2 - 1 - C, recording energies, the q-consistency residual,
/// mass, and the per-step energy-balance defect.
TimeSeries integrate(const ScalarField& phi0, const ButcherTableau& tab,
                     double dt, int n_steps, const CHParams& p,
                     const SolverOptions& opts = {});

}  // namespace chieq
