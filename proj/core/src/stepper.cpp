#include "chieq/stepper.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace chieq {

namespace {

// Dense LU with partial pivoting for the per-mode stage matrices, stored
// flat for all modes of the grid.
class ModeFactors {
public:
  ModeFactors(int stages, std::size_t modes)
      : s_(stages),
        lu_(static_cast<std::size_t>(stages) * stages * modes),
        piv_(static_cast<std::size_t>(stages) * modes) {}

  // Factor I - dt*lambda*A for one mode.
  void factor(std::size_t mode, double dt_lambda, const ButcherTableau& tab) {
    double* lu = lu_.data() + mode * s_ * s_;
    int* piv = piv_.data() + mode * s_;
    double max_entry = 0.0;
    for (int i = 0; i < s_; ++i) {
      for (int j = 0; j < s_; ++j) {
        const double v = (i == j ? 1.0 : 0.0) - dt_lambda * tab.a_at(i, j);
        lu[i * s_ + j] = v;
        max_entry = std::max(max_entry, std::abs(v));
      }
    }
    for (int col = 0; col < s_; ++col) {
      int pivot_row = col;
      double pivot = std::abs(lu[col * s_ + col]);
      for (int r = col + 1; r < s_; ++r) {
        const double v = std::abs(lu[r * s_ + col]);
        if (v > pivot) {
          pivot = v;
          pivot_row = r;
        }
      }
      if (!(pivot > max_entry * DBL_EPSILON)) {
        throw SingularStageMatrixError(
            "stage matrix is numerically singular at spectral mode " +
            std::to_string(mode));
      }
      piv[col] = pivot_row;
      if (pivot_row != col) {
        for (int j = 0; j < s_; ++j) {
          std::swap(lu[col * s_ + j], lu[pivot_row * s_ + j]);
        }
      }
      const double inv = 1.0 / lu[col * s_ + col];
      for (int r = col + 1; r < s_; ++r) {
        const double factor = lu[r * s_ + col] * inv;
        lu[r * s_ + col] = factor;
        for (int j = col + 1; j < s_; ++j) {
          lu[r * s_ + j] -= factor * lu[col * s_ + j];
        }
      }
    }
  }

  void solve(std::size_t mode, double* x) const {
    const double* lu = lu_.data() + mode * s_ * s_;
    const int* piv = piv_.data() + mode * s_;
    for (int i = 0; i < s_; ++i) {
      if (piv[i] != i) std::swap(x[i], x[piv[i]]);
    }
    for (int i = 1; i < s_; ++i) {
      for (int j = 0; j < i; ++j) x[i] -= lu[i * s_ + j] * x[j];
    }
    for (int i = s_ - 1; i >= 0; --i) {
      for (int j = i + 1; j < s_; ++j) x[i] -= lu[i * s_ + j] * x[j];
      x[i] /= lu[i * s_ + i];
    }
  }

private:
  int s_;
  std::vector<double> lu_;
  std::vector<int> piv_;
};

ScalarField checked_field(const GridPtr& grid, std::vector<double> values,
                          const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw BlowupError(std::string(what) +
                        " left the finite range; reduce the time step");
    }
  }
  return ScalarField(grid, std::move(values));
}

void validate_inputs(const CHState& state, double dt, const CHParams& p) {
  if (!std::isfinite(dt) || dt < 0.0) {
    throw std::invalid_argument("time step must be finite and nonnegative");
  }
  if (!state.phi.grid()->compatible(*p.grid) ||
      !state.q.grid()->compatible(*p.grid)) {
    throw GridMismatchError("state fields do not live on the model grid");
  }
  if (!state.phi.all_finite() || !state.q.all_finite()) {
    throw std::invalid_argument("state fields must be finite");
  }
}

}  // namespace

StageSystem solve_stage_system(const CHState& state, const ButcherTableau& tab,
                               double dt, const CHParams& p,
                               const SolverOptions& opts) {
  validate_inputs(state, dt, p);
  const PeriodicGrid& grid = *p.grid;
  const int s = tab.stages;
  const std::size_t points = grid.total_points();
  const std::size_t modes = grid.spectral_size();
  const auto symbol = grid.laplacian_symbol();
  const auto weight = grid.mode_weight();
  const double mob = p.mobility;
  const double eps = p.eps;
  const double shift_c = p.stabilization;
  const double inv_eps = 1.0 / eps;
  const double norm_scale =
      grid.cell_volume() / static_cast<double>(grid.total_points());

  // Stiff linear part M*Lap(-eps*Lap) is diagonal per mode with coefficient
  // lambda = -M*eps*symbol^2 <= 0; factor I - dt*lambda*A once, reuse
  // across all Picard sweeps.
  std::vector<double> lambda(modes);
  ModeFactors factors(s, modes);
  for (std::size_t m = 0; m < modes; ++m) {
    lambda[m] = -mob * eps * symbol[m] * symbol[m];
    factors.factor(m, dt * lambda[m], tab);
  }

  Spectrum phi_hat_n(modes);
  grid.forward(state.phi.values(), phi_hat_n);

  const auto phi_n = state.phi.values();
  const auto q_n = state.q.values();

  // Stage iterates: physical values plus the spectra the mode solves need.
  std::vector<std::vector<double>> phi_s(s, std::vector<double>(phi_n.begin(), phi_n.end()));
  std::vector<std::vector<double>> q_s(s, std::vector<double>(q_n.begin(), q_n.end()));
  std::vector<std::vector<double>> k_s(s, std::vector<double>(points, 0.0));
  std::vector<std::vector<double>> l_s(s, std::vector<double>(points, 0.0));
  std::vector<Spectrum> k_hat(s, Spectrum(modes));
  std::vector<Spectrum> nonlin_hat(s, Spectrum(modes));

  std::vector<double> scratch_real(points);
  Spectrum scratch_spec(modes);

  auto refresh_nonlinearity = [&](int i) {
    const auto& phi_i = phi_s[i];
    const auto& q_i = q_s[i];
    for (std::size_t j = 0; j < points; ++j) {
      scratch_real[j] = inv_eps * phi_i[j] * (q_i[j] + shift_c);
    }
    grid.forward(scratch_real, nonlin_hat[i]);
  };
  for (int i = 0; i < s; ++i) refresh_nonlinearity(i);

  StepReport report;
  report.stage_mu_grad_norms.assign(s, 0.0);
  double residual = std::numeric_limits<double>::infinity();
  std::vector<double> rhs_re(s), rhs_im(s);

  for (int iter = 1; iter <= opts.max_iter; ++iter) {
    // Linear solve for all stage slopes, one dense system per mode.
    for (std::size_t m = 0; m < modes; ++m) {
      const double lam = lambda[m];
      const double msig = mob * symbol[m];
      for (int i = 0; i < s; ++i) {
        rhs_re[i] = lam * phi_hat_n[m].real() + msig * nonlin_hat[i][m].real();
        rhs_im[i] = lam * phi_hat_n[m].imag() + msig * nonlin_hat[i][m].imag();
      }
      factors.solve(m, rhs_re.data());
      factors.solve(m, rhs_im.data());
      for (int i = 0; i < s; ++i) {
        k_hat[i][m] = {rhs_re[i], rhs_im[i]};
      }
    }

    // Rebuild stage values from the new slopes; these structural relations
    // hold exactly for whatever slopes the final sweep leaves behind.
    for (int i = 0; i < s; ++i) {
      std::copy(k_hat[i].begin(), k_hat[i].end(), scratch_spec.begin());
      grid.inverse(scratch_spec, k_s[i]);
    }
    for (int i = 0; i < s; ++i) {
      auto& phi_i = phi_s[i];
      for (std::size_t j = 0; j < points; ++j) {
        double acc = phi_n[j];
        for (int jj = 0; jj < s; ++jj) acc += dt * tab.a_at(i, jj) * k_s[jj][j];
        phi_i[j] = acc;
      }
    }
    for (int i = 0; i < s; ++i) {
      auto& l_i = l_s[i];
      const auto& phi_i = phi_s[i];
      const auto& k_i = k_s[i];
      for (std::size_t j = 0; j < points; ++j) l_i[j] = 2.0 * phi_i[j] * k_i[j];
    }
    for (int i = 0; i < s; ++i) {
      auto& q_i = q_s[i];
      for (std::size_t j = 0; j < points; ++j) {
        double acc = q_n[j];
        for (int jj = 0; jj < s; ++jj) acc += dt * tab.a_at(i, jj) * l_s[jj][j];
        q_i[j] = acc;
      }
    }

    // Residual of the stage equations on the fresh iterate. The new
    // nonlinear spectra double as next sweep's frozen term.
    for (int i = 0; i < s; ++i) refresh_nonlinearity(i);
    residual = 0.0;
    for (int i = 0; i < s; ++i) {
      double num = 0.0, den = 0.0, grad = 0.0;
      for (std::size_t m = 0; m < modes; ++m) {
        std::complex<double> phi_hat_i = phi_hat_n[m];
        for (int jj = 0; jj < s; ++jj) {
          phi_hat_i += dt * tab.a_at(i, jj) * k_hat[jj][m];
        }
        const std::complex<double> mu_hat =
            -eps * symbol[m] * phi_hat_i + nonlin_hat[i][m];
        const std::complex<double> r = k_hat[i][m] - mob * symbol[m] * mu_hat;
        num += weight[m] * std::norm(r);
        den += weight[m] * std::norm(k_hat[i][m]);
        grad += weight[m] * (-symbol[m]) * std::norm(mu_hat);
      }
      const double res_i = std::sqrt(norm_scale * num) /
                           std::max(1.0, std::sqrt(norm_scale * den));
      residual = std::max(residual, res_i);
      report.stage_mu_grad_norms[i] = mob * norm_scale * grad;
    }

    report.iterations = iter;
    report.final_residual = residual;
    if (!std::isfinite(residual) || residual > opts.divergence_guard) {
      throw BlowupError("stage residual diverged (" +
                        detail::residual_text(residual) +
                        "); reduce the time step");
    }
    if (residual <= opts.tol) {
      report.converged = true;
      break;
    }
  }
  if (!report.converged) {
    throw NonConvergenceError(report.iterations, residual);
  }

  StageSystem sys;
  sys.report = std::move(report);
  sys.phi.reserve(s);
  sys.q.reserve(s);
  sys.k.reserve(s);
  sys.l.reserve(s);
  for (int i = 0; i < s; ++i) {
    // The slope product 2*phi_i*k_i can overflow even when the residual
    // stayed finite (it never enters the residual), so these checks must
    // report a blowup, not an invariant violation.
    sys.phi.push_back(checked_field(p.grid, std::move(phi_s[i]), "stage phi"));
    sys.q.push_back(checked_field(p.grid, std::move(q_s[i]), "stage q"));
    sys.k.push_back(checked_field(p.grid, std::move(k_s[i]), "stage slope"));
    sys.l.push_back(checked_field(p.grid, std::move(l_s[i]), "stage q slope"));
  }
  return sys;
}

StepResult step(const CHState& state, const ButcherTableau& tab, double dt,
                const CHParams& p, const SolverOptions& opts) {
  StageSystem sys = solve_stage_system(state, tab, dt, p, opts);
  const std::size_t points = p.grid->total_points();
  const int s = tab.stages;

  // The update must use exactly the converged slopes; recomputing them
  // would break the exact q-consistency algebra.
  std::vector<double> phi_next(state.phi.values().begin(), state.phi.values().end());
  std::vector<double> q_next(state.q.values().begin(), state.q.values().end());
  for (int i = 0; i < s; ++i) {
    const double w = dt * tab.b[i];
    const auto k_i = sys.k[i].values();
    const auto l_i = sys.l[i].values();
    for (std::size_t j = 0; j < points; ++j) {
      phi_next[j] += w * k_i[j];
      q_next[j] += w * l_i[j];
    }
  }

  CHState next{checked_field(p.grid, std::move(phi_next), "phi update"),
               checked_field(p.grid, std::move(q_next), "q update"),
               state.time + dt};
  return StepResult{std::move(next), std::move(sys.report)};
}

IntegrationError::IntegrationError(int step_index_, RunStatus status_,
                                   const std::string& what, TimeSeries partial_)
    : SolverError("step " + std::to_string(step_index_) + ": " + what),
      step_index(step_index_),
      status(status_),
      partial(std::move(partial_)) {}

std::string to_string(RunStatus status) {
  switch (status) {
    case RunStatus::Completed: return "completed";
    case RunStatus::NonConvergence: return "nonconvergence";
    case RunStatus::Blowup: return "blowup";
  }
  return "unknown";
}

namespace {

double consistency_residual_inf(const CHState& state, const CHParams& p) {
  const auto phi = state.phi.values();
  const auto q = state.q.values();
  double m = 0.0;
  for (std::size_t j = 0; j < phi.size(); ++j) {
    m = std::max(m, std::abs(q[j] - (phi[j] * phi[j] - 1.0 - p.stabilization)));
  }
  return m;
}

StepRecord make_record(int step_idx, double t, const CHState& state,
                       const CHParams& p, double balance_defect,
                       const StepReport& report) {
  StepRecord rec;
  rec.step = step_idx;
  rec.t = t;
  rec.energy = original_energy(state.phi, p);
  rec.modified_energy = modified_energy(state.phi, state.q, p);
  rec.q_residual_inf = consistency_residual_inf(state, p);
  rec.mass = quadrature(state.phi);
  rec.balance_defect = balance_defect;
  rec.iterations = report.iterations;
  rec.converged = report.converged;
  return rec;
}

}  // namespace

TimeSeries integrate(const ScalarField& phi0, const ButcherTableau& tab,
                     double dt, int n_steps, const CHParams& p,
                     const SolverOptions& opts) {
  if (n_steps < 1) {
    throw std::invalid_argument("integration needs at least one step");
  }
  if (!std::isfinite(dt) || dt <= 0.0) {
    throw std::invalid_argument("time step must be finite and positive");
  }

  TimeSeries ts;
  ts.meta.tableau = tab.name;
  ts.meta.dt = dt;
  ts.meta.dim = p.grid->dim();
  ts.meta.n = p.grid->points_per_dim();
  ts.meta.length = p.grid->length();
  ts.meta.mobility = p.mobility;
  ts.meta.eps = p.eps;
  ts.meta.stabilization = p.stabilization;
  ts.meta.solver = opts;

  CHState state{phi0, initial_q(phi0, p), 0.0};
  StepReport initial_report;
  initial_report.converged = true;
  ts.records.push_back(make_record(0, 0.0, state, p, 0.0, initial_report));
  double energy_prev = ts.records.front().energy;

  for (int i = 1; i <= n_steps; ++i) {
    StepResult result = [&] {
      try {
        return step(state, tab, dt, p, opts);
      } catch (const NonConvergenceError& e) {
        ts.status = RunStatus::NonConvergence;
        ts.failed_step = i;
        throw IntegrationError(i, RunStatus::NonConvergence, e.what(), std::move(ts));
      } catch (const BlowupError& e) {
        ts.status = RunStatus::Blowup;
        ts.failed_step = i;
        throw IntegrationError(i, RunStatus::Blowup, e.what(), std::move(ts));
      } catch (const SingularStageMatrixError& e) {
        ts.status = RunStatus::Blowup;
        ts.failed_step = i;
        throw IntegrationError(i, RunStatus::Blowup, e.what(), std::move(ts));
      }
    }();

    state = std::move(result.state);
    state.time = dt * i;

    double dissipated = 0.0;
    for (int j = 0; j < tab.stages; ++j) {
      dissipated += tab.b[j] * result.report.stage_mu_grad_norms[j];
    }
    StepRecord rec = make_record(i, state.time, state, p, 0.0, result.report);
    rec.balance_defect = rec.energy - energy_prev + dt * dissipated;
    ts.records.push_back(rec);
    energy_prev = rec.energy;
  }

  ts.final_state = std::move(state);
  return ts;
}

}  // namespace chieq
