#pragma once

#include "chieq/field.hpp"
#include "chieq/grid.hpp"

namespace chieq {

/// Cahn-Hilliard model constants. `stabilization` is the constant C that
/// shifts the auxiliary variable q = phi^2 - 1 - C; the modified energy and
/// the operator L = -eps*Lap + C/eps depend on it, the dynamics do not.
struct CHParams {
  CHParams(double mobility, double eps, double stabilization, GridPtr grid);

  double mobility;       // M > 0
  double eps;            // interface width > 0
  double stabilization;  // C, user-chosen
  GridPtr grid;
};

/// The (phi, q) pair of the quadratized system at a point in time.
struct CHState {
  ScalarField phi;
  ScalarField q;
  double time = 0.0;
};

/// Consistent auxiliary variable phi0^2 - 1 - C.
ScalarField initial_q(const ScalarField& phi0, const CHParams& p);

/// mu = -eps*Lap(phi) + (1/eps) * phi * (q + C), products taken pointwise
/// on the collocation grid.
ScalarField chemical_potential(const ScalarField& phi, const ScalarField& q,
                               const CHParams& p);

/// Mobility operator G f = -M * Lap(f); positive semi-definite.
ScalarField apply_G(const ScalarField& f, const CHParams& p);

/// L f = -eps*Lap(f) + (C/eps) f, applied spectrally plus a scalar shift.
ScalarField apply_L(const ScalarField& f, const CHParams& p);

/// Ginzburg-Landau free energy
/// E(phi) = int (eps/2)|grad phi|^2 + (1/(4 eps)) (phi^2-1)^2.
double original_energy(const ScalarField& phi, const CHParams& p);

/// Quadratized energy
/// F(phi,q) = int (eps/2)|grad phi|^2 + (C/(2 eps)) phi^2
///            + (1/(4 eps)) (q^2 - C^2 - 2C).
/// Equals E(phi) whenever q = phi^2 - 1 - C.
double modified_energy(const ScalarField& phi, const ScalarField& q,
                       const CHParams& p);

/// Same functional evaluated through the quadratic form
/// (1/2)(phi, L phi) + (1/(4 eps))(q, q) - ((C^2+2C)/(4 eps)) |domain|.
/// Independent code path from modified_energy; the two agree to roundoff.
double modified_energy_quadratic(const ScalarField& phi, const ScalarField& q,
                                 const CHParams& p);

/// Instantaneous energy production -M * |grad mu|^2 <= 0.
double dissipation_rate(const ScalarField& phi, const ScalarField& q,
                        const CHParams& p);

}  // namespace chieq
