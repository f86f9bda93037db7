#pragma once

#include "chieq/model.hpp"
#include "chieq/timeseries.hpp"

namespace chieq {

/// One step of the fully implicit midpoint scheme in phi alone:
///   (phi^{n+1} - phi^n)/dt = M Lap(mu_half),
///   mu_half = -eps*Lap((phi^{n+1}+phi^n)/2)
///             + (1/(2 eps)) (phi^{n+1}+phi^n) [((phi^{n+1})^2+(phi^n)^2)/2 - 1].
///
/// Independent of the stage solver: it shares only the grid operators and
/// never touches the auxiliary variable. Used as the cross-validation
/// oracle for the 1-stage Gauss scheme.
///
/// Throws NonConvergenceError or BlowupError like the stage solver.
ScalarField step_midpoint(const ScalarField& phi_n, double dt,
                          const CHParams& p, const SolverOptions& opts = {});

}  // namespace chieq
