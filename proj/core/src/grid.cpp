#include "chieq/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace chieq {

struct PeriodicGrid::Plans {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;

  ~Plans() {
    if (r2c) fftw_destroy_plan(r2c);
    if (c2r) fftw_destroy_plan(c2r);
  }
};

namespace {

// Integer frequency of spectral index i along a full (non-halved) axis.
int axis_frequency(int i, int n) { return i <= n / 2 ? i : i - n; }

}  // namespace

PeriodicGrid::PeriodicGrid(int dim, int points_per_dim, double length)
    : dim_(dim), n_(points_per_dim), length_(length) {
  if (dim != 1 && dim != 2) {
    throw std::invalid_argument("grid dimension must be 1 or 2, got " +
                                std::to_string(dim));
  }
  if (n_ < 8 || n_ % 2 != 0) {
    throw std::invalid_argument(
        "points per dimension must be even and >= 8, got " + std::to_string(n_));
  }
  if (!std::isfinite(length) || length <= 0.0) {
    throw std::invalid_argument("grid length must be finite and positive");
  }

  spacing_ = length_ / n_;
  total_points_ = dim_ == 1 ? static_cast<std::size_t>(n_)
                            : static_cast<std::size_t>(n_) * n_;
  cell_volume_ = std::pow(spacing_, dim_);
  domain_measure_ = std::pow(length_, dim_);

  const int half = n_ / 2 + 1;
  spectral_size_ = dim_ == 1 ? static_cast<std::size_t>(half)
                             : static_cast<std::size_t>(n_) * half;
  laplacian_symbol_.resize(spectral_size_);
  mode_weight_.resize(spectral_size_);

  const double base = 2.0 * std::numbers::pi / length_;
  if (dim_ == 1) {
    for (int i = 0; i < half; ++i) {
      const double k = base * i;
      laplacian_symbol_[i] = -k * k;
      mode_weight_[i] = (i == 0 || i == n_ / 2) ? 1.0 : 2.0;
    }
  } else {
    for (int i0 = 0; i0 < n_; ++i0) {
      const double k0 = base * axis_frequency(i0, n_);
      for (int i1 = 0; i1 < half; ++i1) {
        const double k1 = base * i1;
        const std::size_t m = static_cast<std::size_t>(i0) * half + i1;
        laplacian_symbol_[m] = -(k0 * k0 + k1 * k1);
        mode_weight_[m] = (i1 == 0 || i1 == n_ / 2) ? 1.0 : 2.0;
      }
    }
  }

  // Plan with FFTW_UNALIGNED so the new-array execute interface accepts any
  // caller buffer; FFTW_ESTIMATE keeps planning deterministic.
  std::vector<double> real_scratch(total_points_);
  std::vector<std::complex<double>> cplx_scratch(spectral_size_);
  auto* rs = real_scratch.data();
  auto* cs = reinterpret_cast<fftw_complex*>(cplx_scratch.data());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;

  plans_ = std::make_unique<Plans>();
  if (dim_ == 1) {
    plans_->r2c = fftw_plan_dft_r2c_1d(n_, rs, cs, flags);
    plans_->c2r = fftw_plan_dft_c2r_1d(n_, cs, rs, flags);
  } else {
    plans_->r2c = fftw_plan_dft_r2c_2d(n_, n_, rs, cs, flags);
    plans_->c2r = fftw_plan_dft_c2r_2d(n_, n_, cs, rs, flags);
  }
  if (!plans_->r2c || !plans_->c2r) {
    throw std::runtime_error("FFT planning failed");
  }
}

PeriodicGrid::~PeriodicGrid() = default;

double PeriodicGrid::coordinate(std::size_t flat, int axis) const {
  if (dim_ == 1) {
    return static_cast<double>(flat) * spacing_;
  }
  const std::size_t i = axis == 0 ? flat / n_ : flat % n_;
  return static_cast<double>(i) * spacing_;
}

void PeriodicGrid::forward(std::span<const double> values,
                           std::span<std::complex<double>> spectrum) const {
  if (values.size() != total_points_ || spectrum.size() != spectral_size_) {
    throw std::invalid_argument("transform buffer size mismatch");
  }
  fftw_execute_dft_r2c(plans_->r2c, const_cast<double*>(values.data()),
                       reinterpret_cast<fftw_complex*>(spectrum.data()));
}

void PeriodicGrid::inverse(std::span<std::complex<double>> spectrum,
                           std::span<double> values) const {
  if (values.size() != total_points_ || spectrum.size() != spectral_size_) {
    throw std::invalid_argument("transform buffer size mismatch");
  }
  fftw_execute_dft_c2r(plans_->c2r,
                       reinterpret_cast<fftw_complex*>(spectrum.data()),
                       values.data());
  const double scale = 1.0 / static_cast<double>(total_points_);
  for (double& v : values) v *= scale;
}

bool PeriodicGrid::compatible(const PeriodicGrid& other) const {
  if (this == &other) return true;
  return dim_ == other.dim_ && n_ == other.n_ && length_ == other.length_;
}

GridPtr make_grid(int dim, int points_per_dim, double length) {
  return std::make_shared<const PeriodicGrid>(dim, points_per_dim, length);
}

}  // namespace chieq
