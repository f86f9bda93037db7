#include "chieq/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "chieq/errors.hpp"

namespace chieq {

namespace {

void require_same_grid(const ScalarField& f, const ScalarField& g) {
  if (!f.grid()->compatible(*g.grid())) {
    throw GridMismatchError("fields live on incompatible grids");
  }
}

}  // namespace

ScalarField::ScalarField(GridPtr grid)
    : grid_(std::move(grid)), values_(grid_->total_points(), 0.0) {}

ScalarField::ScalarField(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_->total_points()) {
    throw std::invalid_argument("field size does not match grid");
  }
  if (!all_finite()) {
    throw std::invalid_argument("field values must be finite");
  }
}

bool ScalarField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return std::isfinite(v); });
}

ScalarField laplacian(const ScalarField& f) {
  const PeriodicGrid& g = *f.grid();
  Spectrum spec(g.spectral_size());
  g.forward(f.values(), spec);
  const auto symbol = g.laplacian_symbol();
  for (std::size_t m = 0; m < spec.size(); ++m) spec[m] *= symbol[m];
  return to_field(f.grid(), std::move(spec));
}

double inner_product(const ScalarField& f, const ScalarField& g) {
  require_same_grid(f, g);
  const auto fv = f.values();
  const auto gv = g.values();
  double sum = 0.0;
  for (std::size_t i = 0; i < fv.size(); ++i) sum += fv[i] * gv[i];
  return f.grid()->cell_volume() * sum;
}

double grad_norm_sq(const ScalarField& f) {
  const PeriodicGrid& g = *f.grid();
  Spectrum spec(g.spectral_size());
  g.forward(f.values(), spec);
  const auto symbol = g.laplacian_symbol();
  const auto weight = g.mode_weight();
  double sum = 0.0;
  for (std::size_t m = 0; m < spec.size(); ++m) {
    sum += weight[m] * (-symbol[m]) * std::norm(spec[m]);
  }
  return g.cell_volume() / static_cast<double>(g.total_points()) * sum;
}

double quadrature(const ScalarField& f) {
  double sum = 0.0;
  for (double v : f.values()) sum += v;
  return f.grid()->cell_volume() * sum;
}

double l2_norm(const ScalarField& f) { return std::sqrt(inner_product(f, f)); }

double max_abs(const ScalarField& f) {
  double m = 0.0;
  for (double v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_diff(const ScalarField& f, const ScalarField& g) {
  require_same_grid(f, g);
  const auto fv = f.values();
  const auto gv = g.values();
  double m = 0.0;
  for (std::size_t i = 0; i < fv.size(); ++i) {
    m = std::max(m, std::abs(fv[i] - gv[i]));
  }
  return m;
}

Spectrum to_spectrum(const ScalarField& f) {
  Spectrum spec(f.grid()->spectral_size());
  f.grid()->forward(f.values(), spec);
  return spec;
}

ScalarField to_field(GridPtr grid, Spectrum&& spectrum) {
  std::vector<double> values(grid->total_points());
  grid->inverse(spectrum, values);
  return ScalarField(std::move(grid), std::move(values));
}

double spectral_l2_sq(const PeriodicGrid& grid,
                      std::span<const std::complex<double>> spectrum) {
  const auto weight = grid.mode_weight();
  double sum = 0.0;
  for (std::size_t m = 0; m < spectrum.size(); ++m) {
    sum += weight[m] * std::norm(spectrum[m]);
  }
  return grid.cell_volume() / static_cast<double>(grid.total_points()) * sum;
}

}  // namespace chieq
