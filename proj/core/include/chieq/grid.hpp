#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace chieq {

/// Uniform periodic collocation grid in 1D or 2D with Fourier-diagonal
/// differential operators and rectangle-rule quadrature.
///
/// Every differential operator acts per Fourier mode through
/// `laplacian_symbol` (real, nonpositive, exactly zero on the constant
/// mode), which makes the discrete Laplacian self-adjoint and negative
/// semi-definite in the collocation inner product. Spectra use the
/// half-complex (real-to-complex) storage, so fields coming back from an
/// inverse transform are real by construction.
///
/// Grids are immutable after construction and meant to be shared through
/// `GridPtr`; transform execution on caller-owned buffers is safe from
/// concurrent contexts.
class PeriodicGrid {
public:
  /// `dim` must be 1 or 2, `points_per_dim` even and >= 8, `length` > 0.
  PeriodicGrid(int dim, int points_per_dim, double length);
  ~PeriodicGrid();

  PeriodicGrid(const PeriodicGrid&) = delete;
  PeriodicGrid& operator=(const PeriodicGrid&) = delete;

  int dim() const { return dim_; }
  int points_per_dim() const { return n_; }
  std::size_t total_points() const { return total_points_; }
  std::size_t spectral_size() const { return spectral_size_; }
  double length() const { return length_; }
  double spacing() const { return spacing_; }
  double cell_volume() const { return cell_volume_; }
  double domain_measure() const { return domain_measure_; }

  /// Per-mode eigenvalue -|k|^2 of the spectral Laplacian, half-complex order.
  std::span<const double> laplacian_symbol() const { return laplacian_symbol_; }

  /// Conjugate-pair multiplicity (1 or 2) of each stored mode; used to turn
  /// half-spectrum sums into full-spectrum Parseval sums.
  std::span<const double> mode_weight() const { return mode_weight_; }

  /// Physical coordinate of grid point `flat` along `axis` (row-major in 2D).
  double coordinate(std::size_t flat, int axis = 0) const;

  /// Unnormalized forward transform into half-complex storage.
  void forward(std::span<const double> values,
               std::span<std::complex<double>> spectrum) const;

  /// Inverse transform, scaled by 1/total_points so that
  /// inverse(forward(f)) == f up to roundoff. Clobbers `spectrum`.
  void inverse(std::span<std::complex<double>> spectrum,
               std::span<double> values) const;

  /// True when the two grids describe the same discretization.
  bool compatible(const PeriodicGrid& other) const;

private:
  int dim_;
  int n_;
  double length_;
  double spacing_;
  double cell_volume_;
  double domain_measure_;
  std::size_t total_points_;
  std::size_t spectral_size_;
  std::vector<double> laplacian_symbol_;
  std::vector<double> mode_weight_;

  struct Plans;
  std::unique_ptr<Plans> plans_;
};

using GridPtr = std::shared_ptr<const PeriodicGrid>;

GridPtr make_grid(int dim, int points_per_dim, double length);

}  // namespace chieq
