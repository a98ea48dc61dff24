#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "corot2d/grid.hpp"

namespace corot2d {

using cplx = std::complex<double>;

/// Fourier coefficients of a real periodic field, f(x) = sum_k c_k e^{i k.x}.
///
/// Only the non-negative-m half plane is stored; c(-m,-n) = conj(c(m,n)) is
/// implied. The coefficient normalisation makes c_{0,0} the spatial mean.
class SpectralScalar {
 public:
  SpectralScalar() = default;
  explicit SpectralScalar(GridPtr grid);

  const PeriodicGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  bool empty() const { return !grid_; }

  std::span<cplx> coeffs() { return c_; }
  std::span<const cplx> coeffs() const { return c_; }
  cplx& at(int row, int col) { return c_[static_cast<std::size_t>(row) * grid_->nc() + col]; }
  const cplx& at(int row, int col) const { return c_[static_cast<std::size_t>(row) * grid_->nc() + col]; }

  /// Coefficient for signed mode indices (m, n); uses conjugate symmetry for m < 0.
  cplx mode(int m, int n) const;
  /// Sets coefficient (m, n) and, where stored, its conjugate partner.
  void set_mode(int m, int n, cplx value);

  /// Whether the (0,0) coefficient is held at zero (zero-mean space).
  bool zero_mode_pinned() const { return pinned_; }
  void pin_zero_mode();
  void unpin_zero_mode() { pinned_ = false; }

  /// Physical samples on the field's own grid.
  std::vector<double> physical() const;

  SpectralScalar& operator+=(const SpectralScalar& o);
  SpectralScalar& operator-=(const SpectralScalar& o);
  SpectralScalar& operator*=(double a);
  /// this += a * x
  SpectralScalar& axpy(double a, const SpectralScalar& x);

 private:
  GridPtr grid_;
  std::vector<cplx> c_;
  bool pinned_ = false;
};

SpectralScalar operator+(SpectralScalar a, const SpectralScalar& b);
SpectralScalar operator-(SpectralScalar a, const SpectralScalar& b);
SpectralScalar operator*(double s, SpectralScalar a);

/// Physical grid used to evaluate products: 3/2 padding when dealiasing,
/// the base grid otherwise.
GridPtr product_grid(const PeriodicGrid& g, bool dealias);

/// Forward transform of row-major physical samples.
SpectralScalar forward(const GridPtr& grid, std::span<const double> samples);
/// Inverse transform to the field's own grid.
std::vector<double> inverse(const SpectralScalar& f);
/// Inverse transform to a finer (or equal) grid by zero padding.
std::vector<double> inverse_on(const SpectralScalar& f, const PeriodicGrid& target);
/// Forward transform on `source` followed by truncation to the modes of `target`;
/// with `mask` the 2/3 rule of `target` is applied as well.
SpectralScalar forward_truncated(const PeriodicGrid& source, std::span<const double> samples,
                                 const GridPtr& target, bool mask);

/// Spectral copy onto another resolution of the same cell: coefficients are
/// truncated or zero padded, Nyquist lines dropped.
SpectralScalar resample(const SpectralScalar& f, const GridPtr& target);

/// Multiplies by (i k_axis)^order, axis in {1, 2}; the Nyquist lines are zeroed.
SpectralScalar spectral_derivative(const SpectralScalar& f, int axis, int order);
/// Applies the 2/3 rule and zeroes the Nyquist lines.
SpectralScalar dealias(const SpectralScalar& f);
/// Laplacian, -|k|^2 per mode.
SpectralScalar laplacian(const SpectralScalar& f);

/// Modewise (I - k k^T / |k|^2); the zero mode of the result is pinned to 0.
std::pair<SpectralScalar, SpectralScalar> leray_project(const SpectralScalar& u1, const SpectralScalar& u2);

/// (I - eps Delta)^{-1}: divides each mode by 1 + eps |k|^2. Rejects eps < 0.
SpectralScalar mass_solve(const SpectralScalar& f, double eps);
/// Integrating factor exp(-eps |k|^2 dt). Rejects negative eps or dt.
SpectralScalar heat_factor(const SpectralScalar& f, double eps, double dt);

/// L^2(Omega) pairing of two fields on the same grid (Parseval).
double inner(const SpectralScalar& a, const SpectralScalar& b);
/// Pairing weighted by |k|^(2p): p = 1 gives (grad a, grad b).
double inner_weighted(const SpectralScalar& a, const SpectralScalar& b, int p);
/// Sum of |c_k| over the full spectrum.
double coeff_l1(const SpectralScalar& f);
double max_abs_coeff(const SpectralScalar& f);

/// Grid quadrature of f^2 from physical samples.
double quadrature_l2sq(const PeriodicGrid& g, std::span<const double> samples);

void require_same_grid(const SpectralScalar& a, const SpectralScalar& b, const char* what);

}  // namespace corot2d
