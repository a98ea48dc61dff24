#pragma once

#include <cstddef>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace corot2d {

/// Raised for invalid grids, malformed configuration and inconsistent options.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an array does not match the grid it is used with.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Periodic rectangle (0,L1) x (0,L2) sampled on N1 x N2 points.
///
/// Physical samples are stored row-major with x fastest: sample (i, j) at
/// x = i L1/N1, y = j L2/N2 lives at index j*N1 + i. Spectral coefficients
/// use the real-to-complex half layout: row r in [0, N2) holds mode index
/// n = r (r < N2/2) or r - N2, column c in [0, N1/2] holds m = c.
class PeriodicGrid {
 public:
  PeriodicGrid(double l1, double l2, int n1, int n2);

  double l1() const { return l1_; }
  double l2() const { return l2_; }
  int n1() const { return n1_; }
  int n2() const { return n2_; }
  /// Number of complex columns in the half layout.
  int nc() const { return n1_ / 2 + 1; }
  std::size_t physical_size() const { return static_cast<std::size_t>(n1_) * n2_; }
  std::size_t spectral_size() const { return static_cast<std::size_t>(nc()) * n2_; }
  double area() const { return l1_ * l2_; }
  double dx() const { return l1_ / n1_; }
  double dy() const { return l2_ / n2_; }

  /// Signed mode index along x for a full-length FFT index in [0, N1).
  int mode1(int idx) const { return idx < n1_ / 2 ? idx : idx - n1_; }
  /// Signed mode index along y for row r in [0, N2).
  int mode2(int row) const { return row < n2_ / 2 ? row : row - n2_; }

  /// Wavenumbers in FFT order over the full index range: k = 2 pi m / L.
  const std::vector<double>& k1() const { return k1_; }
  const std::vector<double>& k2() const { return k2_; }
  /// |k|^2 on the half layout, indexed row*nc() + col.
  const std::vector<double>& ksq() const { return ksq_; }

  /// 2/3-rule mask on the half layout: |m| <= N1/3 and |n| <= N2/3.
  bool retained(int row, int col) const { return mask_[static_cast<std::size_t>(row) * nc() + col] != 0; }
  /// True for the x or y Nyquist line (m = -N1/2 or n = -N2/2).
  bool nyquist(int row, int col) const { return col == n1_ / 2 || row == n2_ / 2; }
  /// Multiplicity of a half-layout column in sums over the full spectrum.
  double weight(int col) const { return (col == 0 || col == n1_ / 2) ? 1.0 : 2.0; }

  /// Mode index bound kept by the 2/3 rule along each axis.
  int mask_m() const { return n1_ / 3; }
  int mask_n() const { return n2_ / 3; }

  bool same_shape(const PeriodicGrid& other) const {
    return n1_ == other.n1_ && n2_ == other.n2_ && l1_ == other.l1_ && l2_ == other.l2_;
  }

 private:
  double l1_, l2_;
  int n1_, n2_;
  std::vector<double> k1_, k2_, ksq_;
  std::vector<unsigned char> mask_;
};

using GridPtr = std::shared_ptr<const PeriodicGrid>;

/// Validates and builds a shared grid. Lengths must be positive and the
/// resolutions even and at least 8.
GridPtr make_grid(double l1, double l2, int n1, int n2);

/// Same cell, different resolution.
GridPtr regrid(const PeriodicGrid& g, int n1, int n2);

}  // namespace corot2d
