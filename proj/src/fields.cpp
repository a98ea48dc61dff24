#include "corot2d/fields.hpp"

#include <algorithm>
#include <cmath>

namespace corot2d {

VectorField2& VectorField2::operator+=(const VectorField2& o) {
  v1 += o.v1;
  v2 += o.v2;
  return *this;
}

VectorField2& VectorField2::operator*=(double a) {
  v1 *= a;
  v2 *= a;
  return *this;
}

VectorField2& VectorField2::axpy(double a, const VectorField2& x) {
  v1.axpy(a, x.v1);
  v2.axpy(a, x.v2);
  return *this;
}

SymTensor2Field& SymTensor2Field::operator+=(const SymTensor2Field& o) {
  s11 += o.s11;
  s12 += o.s12;
  s22 += o.s22;
  return *this;
}

SymTensor2Field& SymTensor2Field::operator*=(double a) {
  s11 *= a;
  s12 *= a;
  s22 *= a;
  return *this;
}

SymTensor2Field& SymTensor2Field::axpy(double a, const SymTensor2Field& x) {
  s11.axpy(a, x.s11);
  s12.axpy(a, x.s12);
  s22.axpy(a, x.s22);
  return *this;
}

SymTensor2Field sym_grad(const VectorField2& v) {
  SymTensor2Field d;
  d.s11 = spectral_derivative(v.v1, 1, 1);
  d.s22 = spectral_derivative(v.v2, 2, 1);
  d.s12 = spectral_derivative(v.v1, 2, 1) + spectral_derivative(v.v2, 1, 1);
  d.s12 *= 0.5;
  return d;
}

ScalarField vorticity(const VectorField2& v) {
  return spectral_derivative(v.v1, 2, 1) - spectral_derivative(v.v2, 1, 1);
}

ScalarField divergence(const VectorField2& v) {
  return spectral_derivative(v.v1, 1, 1) + spectral_derivative(v.v2, 2, 1);
}

VectorField2 divergence(const SymTensor2Field& s) {
  return {spectral_derivative(s.s11, 1, 1) + spectral_derivative(s.s12, 2, 1),
          spectral_derivative(s.s12, 1, 1) + spectral_derivative(s.s22, 2, 1)};
}

State project_state(const State& s, bool mask) {
  auto trunc = [mask](const ScalarField& f) {
    if (mask) return dealias(f);
    ScalarField out = f;
    const PeriodicGrid& g = f.grid();
    for (int r = 0; r < g.n2(); ++r)
      for (int c = 0; c < g.nc(); ++c)
        if (g.nyquist(r, c)) out.at(r, c) = 0.0;
    return out;
  };
  State out;
  out.t = s.t;
  auto [p1, p2] = leray_project(trunc(s.v.v1), trunc(s.v.v2));
  out.v = {std::move(p1), std::move(p2)};
  out.s = s.s.map(trunc);
  return out;
}

double seminorm_sq(const ScalarField& f, int order) { return inner_weighted(f, f, order); }

double seminorm_sq(const VectorField2& v, int order) { return seminorm_sq(v.v1, order) + seminorm_sq(v.v2, order); }

double seminorm_sq(const SymTensor2Field& s, int order) {
  return kSymWeights[0] * seminorm_sq(s.s11, order) + kSymWeights[1] * seminorm_sq(s.s12, order) +
         kSymWeights[2] * seminorm_sq(s.s22, order);
}

std::vector<double> padded_samples(const ScalarField& f) {
  return inverse_on(f, *product_grid(f.grid(), true));
}

double max_abs_padded(const ScalarField& f) {
  double m = 0.0;
  for (double x : padded_samples(f)) m = std::max(m, std::abs(x));
  return m;
}

namespace {

// Given pointwise squared magnitudes on the padded grid, fills L4 and Linf.
void fill_pointwise(Norms& n, const std::vector<double>& mag2, const PeriodicGrid& pg) {
  double s4 = 0.0, mx = 0.0;
  for (double q : mag2) {
    s4 += q * q;
    mx = std::max(mx, q);
  }
  n.l4 = std::pow(s4 * pg.area() / static_cast<double>(pg.physical_size()), 0.25);
  n.linf = std::sqrt(mx);
}

template <class F>
Norms spectral_parts(const F& f) {
  Norms n;
  const double a = seminorm_sq(f, 0), b = seminorm_sq(f, 1), c = seminorm_sq(f, 2);
  n.l2 = std::sqrt(a);
  n.h1 = std::sqrt(b);
  n.h2 = std::sqrt(c);
  n.w22 = std::sqrt(a + b + c);
  return n;
}

}  // namespace

Norms norms(const ScalarField& f) {
  Norms n = spectral_parts(f);
  const auto pg = product_grid(f.grid(), true);
  auto x = inverse_on(f, *pg);
  for (auto& q : x) q *= q;
  fill_pointwise(n, x, *pg);
  return n;
}

Norms norms(const VectorField2& v) {
  Norms n = spectral_parts(v);
  const auto pg = product_grid(v.grid(), true);
  auto a = inverse_on(v.v1, *pg);
  const auto b = inverse_on(v.v2, *pg);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = a[i] * a[i] + b[i] * b[i];
  fill_pointwise(n, a, *pg);
  return n;
}

Norms norms(const SymTensor2Field& s) {
  Norms n = spectral_parts(s);
  const auto pg = product_grid(s.grid(), true);
  auto a = inverse_on(s.s11, *pg);
  const auto b = inverse_on(s.s12, *pg);
  const auto c = inverse_on(s.s22, *pg);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = a[i] * a[i] + 2.0 * b[i] * b[i] + c[i] * c[i];
  fill_pointwise(n, a, *pg);
  return n;
}

}  // namespace corot2d
