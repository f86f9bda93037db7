#include "chieq/model.hpp"

#include <cmath>
#include <stdexcept>

#include "chieq/errors.hpp"

namespace chieq {

namespace {

void require_on_grid(const ScalarField& f, const CHParams& p) {
  if (!f.grid()->compatible(*p.grid)) {
    throw GridMismatchError("field does not live on the model grid");
  }
}

}  // namespace

CHParams::CHParams(double mobility_, double eps_, double stabilization_,
                   GridPtr grid_)
    : mobility(mobility_),
      eps(eps_),
      stabilization(stabilization_),
      grid(std::move(grid_)) {
  if (!std::isfinite(mobility) || mobility <= 0.0) {
    throw std::invalid_argument("mobility must be finite and positive");
  }
  if (!std::isfinite(eps) || eps <= 0.0) {
    throw std::invalid_argument("interface width must be finite and positive");
  }
  if (!std::isfinite(stabilization)) {
    throw std::invalid_argument("stabilization constant must be finite");
  }
  if (!grid) {
    throw std::invalid_argument("model requires a grid");
  }
}

ScalarField initial_q(const ScalarField& phi0, const CHParams& p) {
  require_on_grid(phi0, p);
  std::vector<double> values(phi0.size());
  const auto phi = phi0.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = phi[i] * phi[i] - 1.0 - p.stabilization;
  }
  return ScalarField(phi0.grid(), std::move(values));
}

ScalarField chemical_potential(const ScalarField& phi, const ScalarField& q,
                               const CHParams& p) {
  require_on_grid(phi, p);
  require_on_grid(q, p);
  ScalarField mu = laplacian(phi);
  auto out = mu.values();
  const auto pv = phi.values();
  const auto qv = q.values();
  const double inv_eps = 1.0 / p.eps;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = -p.eps * out[i] + inv_eps * pv[i] * (qv[i] + p.stabilization);
  }
  return mu;
}

ScalarField apply_G(const ScalarField& f, const CHParams& p) {
  require_on_grid(f, p);
  ScalarField out = laplacian(f);
  for (double& v : out.values()) v *= -p.mobility;
  return out;
}

ScalarField apply_L(const ScalarField& f, const CHParams& p) {
  require_on_grid(f, p);
  ScalarField out = laplacian(f);
  auto ov = out.values();
  const auto fv = f.values();
  const double shift = p.stabilization / p.eps;
  for (std::size_t i = 0; i < ov.size(); ++i) {
    ov[i] = -p.eps * ov[i] + shift * fv[i];
  }
  return out;
}

double original_energy(const ScalarField& phi, const CHParams& p) {
  require_on_grid(phi, p);
  double well = 0.0;
  for (double v : phi.values()) {
    const double w = v * v - 1.0;
    well += w * w;
  }
  well *= phi.grid()->cell_volume();
  return 0.5 * p.eps * grad_norm_sq(phi) + well / (4.0 * p.eps);
}

double modified_energy(const ScalarField& phi, const ScalarField& q,
                       const CHParams& p) {
  require_on_grid(phi, p);
  require_on_grid(q, p);
  double phi_sq = 0.0;
  double q_sq = 0.0;
  const auto pv = phi.values();
  const auto qv = q.values();
  for (std::size_t i = 0; i < pv.size(); ++i) {
    phi_sq += pv[i] * pv[i];
    q_sq += qv[i] * qv[i];
  }
  const double vol = phi.grid()->cell_volume();
  phi_sq *= vol;
  q_sq *= vol;
  const double c = p.stabilization;
  const double measure = phi.grid()->domain_measure();
  return 0.5 * p.eps * grad_norm_sq(phi) + c / (2.0 * p.eps) * phi_sq +
         (q_sq - (c * c + 2.0 * c) * measure) / (4.0 * p.eps);
}

double modified_energy_quadratic(const ScalarField& phi, const ScalarField& q,
                                 const CHParams& p) {
  require_on_grid(phi, p);
  require_on_grid(q, p);
  const double c = p.stabilization;
  const double measure = phi.grid()->domain_measure();
  return 0.5 * inner_product(phi, apply_L(phi, p)) +
         inner_product(q, q) / (4.0 * p.eps) -
         (c * c + 2.0 * c) / (4.0 * p.eps) * measure;
}

double dissipation_rate(const ScalarField& phi, const ScalarField& q,
                        const CHParams& p) {
  return -p.mobility * grad_norm_sq(chemical_potential(phi, q, p));
}

}  // namespace chieq
