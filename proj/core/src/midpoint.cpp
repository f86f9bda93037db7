#include "chieq/midpoint.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "chieq/errors.hpp"

namespace chieq {

ScalarField step_midpoint(const ScalarField& phi_n, double dt,
                          const CHParams& p, const SolverOptions& opts) {
  if (!std::isfinite(dt) || dt <= 0.0) {
    throw std::invalid_argument("time step must be finite and positive");
  }
  if (!phi_n.grid()->compatible(*p.grid)) {
    throw GridMismatchError("field does not live on the model grid");
  }

  const PeriodicGrid& grid = *p.grid;
  const std::size_t points = grid.total_points();
  const std::size_t modes = grid.spectral_size();
  const auto symbol = grid.laplacian_symbol();
  const auto weight = grid.mode_weight();
  const double mob = p.mobility;
  const double eps = p.eps;
  const double norm_scale =
      grid.cell_volume() / static_cast<double>(grid.total_points());

  Spectrum phi_hat_n(modes);
  grid.forward(phi_n.values(), phi_hat_n);

  const auto pn = phi_n.values();
  std::vector<double> u(pn.begin(), pn.end());  // iterate for phi^{n+1}
  std::vector<double> nonlin(points);
  Spectrum nonlin_hat(modes);
  Spectrum u_hat(modes);
  Spectrum scratch(modes);

  auto refresh_nonlinearity = [&] {
    for (std::size_t j = 0; j < points; ++j) {
      const double sum = u[j] + pn[j];
      nonlin[j] = sum * (0.5 * (u[j] * u[j] + pn[j] * pn[j]) - 1.0) / (2.0 * eps);
    }
    grid.forward(nonlin, nonlin_hat);
  };
  refresh_nonlinearity();

  // Picard sweeps: freeze the nonlinear midpoint term, treat the
  // biharmonic part implicitly; per mode
  //   (1 - dt*lam/2) u_hat = (1 + dt*lam/2) phi_hat_n + dt*M*sig*nonlin_hat
  // with lam = -M*eps*sig^2 <= 0, so the scalar is never singular.
  double residual = std::numeric_limits<double>::infinity();
  for (int iter = 1; iter <= opts.max_iter; ++iter) {
    for (std::size_t m = 0; m < modes; ++m) {
      const double lam = -mob * eps * symbol[m] * symbol[m];
      u_hat[m] = ((1.0 + 0.5 * dt * lam) * phi_hat_n[m] +
                  dt * mob * symbol[m] * nonlin_hat[m]) /
                 (1.0 - 0.5 * dt * lam);
    }
    std::copy(u_hat.begin(), u_hat.end(), scratch.begin());
    grid.inverse(scratch, u);

    // Residual of the implicit equation on the fresh iterate; the fresh
    // nonlinear spectrum doubles as next sweep's frozen term.
    refresh_nonlinearity();
    double num = 0.0, den = 0.0;
    for (std::size_t m = 0; m < modes; ++m) {
      const std::complex<double> rate = (u_hat[m] - phi_hat_n[m]) / dt;
      const std::complex<double> mu_half =
          -0.5 * eps * symbol[m] * (u_hat[m] + phi_hat_n[m]) + nonlin_hat[m];
      const std::complex<double> r = rate - mob * symbol[m] * mu_half;
      num += weight[m] * std::norm(r);
      den += weight[m] * std::norm(rate);
    }
    residual = std::sqrt(norm_scale * num) /
               std::max(1.0, std::sqrt(norm_scale * den));

    if (!std::isfinite(residual) || residual > opts.divergence_guard) {
      throw BlowupError("midpoint residual diverged (" +
                        detail::residual_text(residual) +
                        "); reduce the time step");
    }
    if (residual <= opts.tol) {
      return ScalarField(phi_n.grid(), std::move(u));
    }
  }
  throw NonConvergenceError(opts.max_iter, residual);
}

}  // namespace chieq
