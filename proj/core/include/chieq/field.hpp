#pragma once

#include <complex>
#include <span>
#include <vector>

#include "chieq/grid.hpp"

namespace chieq {

using Spectrum = std::vector<std::complex<double>>;

/// Real-valued grid function. Owns its samples; copies are deep.
class ScalarField {
public:
  /// Zero field on `grid`.
  explicit ScalarField(GridPtr grid);

  /// Takes ownership of `values`; rejects wrong sizes and non-finite entries.
  ScalarField(GridPtr grid, std::vector<double> values);

  /// Samples `f(x)` in 1D or `f(x, y)` in 2D at the collocation points.
  template <class F>
  static ScalarField sampled(GridPtr grid, F&& f) {
    std::vector<double> values(grid->total_points());
    if (grid->dim() == 1) {
      for (std::size_t i = 0; i < values.size(); ++i) {
        values[i] = f(grid->coordinate(i), 0.0);
      }
    } else {
      for (std::size_t i = 0; i < values.size(); ++i) {
        values[i] = f(grid->coordinate(i, 0), grid->coordinate(i, 1));
      }
    }
    return ScalarField(std::move(grid), std::move(values));
  }

  const GridPtr& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  bool all_finite() const;

private:
  GridPtr grid_;
  std::vector<double> values_;
};

/// Spectral Laplacian: forward transform, multiply by the grid symbol,
/// inverse transform. Linear, self-adjoint, negative semi-definite.
ScalarField laplacian(const ScalarField& f);

/// Collocation inner product cell_volume * sum(f * g).
/// Throws GridMismatchError when the grids differ.
double inner_product(const ScalarField& f, const ScalarField& g);

/// Integral of |grad f|^2 evaluated through Parseval; agrees with
/// inner_product(f, -laplacian(f)) to roundoff.
double grad_norm_sq(const ScalarField& f);

/// Rectangle-rule integral of f over the domain.
double quadrature(const ScalarField& f);

double l2_norm(const ScalarField& f);
double max_abs(const ScalarField& f);
double max_abs_diff(const ScalarField& f, const ScalarField& g);

/// Forward transform into a freshly allocated half-complex spectrum.
Spectrum to_spectrum(const ScalarField& f);

/// Inverse transform; clobbers `spectrum`.
ScalarField to_field(GridPtr grid, Spectrum&& spectrum);

/// Squared discrete L2 norm of a half-complex spectrum (Parseval form of
/// cell_volume * sum(f^2) for the corresponding real field).
double spectral_l2_sq(const PeriodicGrid& grid,
                      std::span<const std::complex<double>> spectrum);

}  // namespace chieq
