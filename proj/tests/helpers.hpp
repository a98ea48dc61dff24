#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "corot2d/fields.hpp"
#include "corot2d/initial_data.hpp"

namespace testing {

using namespace corot2d;

// Samples f(x, y) on the grid's physical points.
inline std::vector<double> samples(const PeriodicGrid& g, const std::function<double(double, double)>& f) {
  std::vector<double> out(g.physical_size());
  for (int j = 0; j < g.n2(); ++j)
    for (int i = 0; i < g.n1(); ++i) out[static_cast<std::size_t>(j) * g.n1() + i] = f(i * g.dx(), j * g.dy());
  return out;
}

inline ScalarField field(const GridPtr& g, const std::function<double(double, double)>& f) {
  return forward(g, samples(*g, f));
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs(const std::vector<double>& a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

inline double coeff_diff(const ScalarField& a, const ScalarField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) m = std::max(m, std::abs(a.coeffs()[i] - b.coeffs()[i]));
  return m;
}

inline State random_state(const GridPtr& g, std::uint64_t seed, double v_l2 = 0.5, double s_l2 = 0.5,
                          bool trace_free = false) {
  InitSpec spec;
  spec.v_l2 = v_l2;
  spec.s_l2 = s_l2;
  spec.trace_free = trace_free;
  return make_initial_state(g, spec, seed);
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace testing
