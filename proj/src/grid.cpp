#include "corot2d/grid.hpp"

#include <cmath>
#include <sstream>

namespace corot2d {

PeriodicGrid::PeriodicGrid(double l1, double l2, int n1, int n2) : l1_(l1), l2_(l2), n1_(n1), n2_(n2) {
  if (!(l1 > 0.0) || !(l2 > 0.0) || !std::isfinite(l1) || !std::isfinite(l2)) {
    std::ostringstream os;
    os << "grid lengths must be positive and finite, got L1=" << l1 << " L2=" << l2;
    throw ConfigError(os.str());
  }
  if (n1 < 8 || n2 < 8 || n1 % 2 != 0 || n2 % 2 != 0) {
    std::ostringstream os;
    os << "grid resolutions must be even and >= 8, got N1=" << n1 << " N2=" << n2;
    throw ConfigError(os.str());
  }
  k1_.resize(n1);
  for (int i = 0; i < n1; ++i) k1_[i] = kTwoPi * mode1(i) / l1;
  k2_.resize(n2);
  for (int r = 0; r < n2; ++r) k2_[r] = kTwoPi * mode2(r) / l2;

  const int cols = nc();
  ksq_.resize(spectral_size());
  mask_.resize(spectral_size());
  for (int r = 0; r < n2; ++r) {
    const int n = mode2(r);
    for (int c = 0; c < cols; ++c) {
      const std::size_t idx = static_cast<std::size_t>(r) * cols + c;
      ksq_[idx] = k1_[c] * k1_[c] + k2_[r] * k2_[r];
      mask_[idx] = (3 * c <= n1 && 3 * std::abs(n) <= n2) ? 1 : 0;
    }
  }
}

GridPtr make_grid(double l1, double l2, int n1, int n2) {
  return std::make_shared<const PeriodicGrid>(l1, l2, n1, n2);
}

GridPtr regrid(const PeriodicGrid& g, int n1, int n2) { return make_grid(g.l1(), g.l2(), n1, n2); }

}  // namespace corot2d
