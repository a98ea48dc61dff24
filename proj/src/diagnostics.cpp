#include "corot2d/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace corot2d {

namespace {

double cell_mean(const ScalarField& f) { return f.coeffs()[0].real(); }

ScalarField mixed_derivative(const ScalarField& f, int nx, int ny) {
  ScalarField out = f;
  if (nx > 0) out = spectral_derivative(out, 1, nx);
  if (ny > 0) out = spectral_derivative(out, 2, ny);
  return out;
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

DiagRecord make_record(const State& state, long step, const RegularizationKind& reg, const DynamicsOptions& opts,
                       const Forcing* forcing, double dissipation_integral, double energy0) {
  DiagRecord r;
  r.step = step;
  r.t = state.t;
  r.v_l2sq = seminorm_sq(state.v, 0);
  r.s_l2sq = seminorm_sq(state.s, 0);
  r.grad_v_l2sq = seminorm_sq(state.v, 1);
  r.grad_s_l2sq = seminorm_sq(state.s, 1);
  r.lap_s_l2sq = seminorm_sq(state.s, 2);
  r.s_linf = norms(state.s).linf;
  r.energy = r.v_l2sq + r.s_l2sq;
  r.energy_i = r.energy + reg.eps * r.grad_s_l2sq;
  r.dissipation_integral = dissipation_integral;
  r.energy_ii_residual = r.energy + 2.0 * reg.eps * dissipation_integral - energy0;

  DynamicsOptions full = opts;
  full.include_diffusion = true;
  ForcingTerms ft;
  if (forcing) ft = forcing->at(state.t);
  const Tendency tend = tendency(state, reg, full, forcing ? &ft : nullptr);
  r.xi_integral = dissipation_rate(state, tend, opts.dealias).integral;

  r.x = r.grad_v_l2sq + r.grad_s_l2sq;
  r.y_e = std::numbers::e + r.x + r.lap_s_l2sq;
  const AppendixTerm a = appendix_monitor(state, 3);
  r.appendix_b = a.b;
  r.d3v_l2 = a.d3v;
  r.d3s_l2 = a.d3s;
  r.mean_s11 = cell_mean(state.s.s11);
  r.mean_s12 = cell_mean(state.s.s12);
  r.mean_s22 = cell_mean(state.s.s22);
  r.max_abs_trace = max_abs_padded(state.s.trace());
  return r;
}

double ln_plus(double x) {
  if (x < 0.0 || std::isnan(x)) throw std::invalid_argument("ln_plus: argument must be >= 0");
  return x < std::numbers::e ? 1.0 : std::log(x);
}

double brezis_gallouet_ratio(const ScalarField& f) {
  const Norms n = norms(f);
  return n.linf / (1.0 + n.h1 * std::sqrt(ln_plus(n.w22)));
}

double ladyzhenskaya_ratio(const ScalarField& f) {
  const Norms n = norms(f);
  const double d = std::sqrt(n.l2 * n.h1);
  return d > 0.0 ? n.l4 / d : 0.0;
}

double agmon_ratio(const ScalarField& f) {
  const Norms n = norms(f);
  const double d = std::sqrt(n.l2 * n.w22);
  return d > 0.0 ? n.linf / d : 0.0;
}

FourierSplit fourier_split_bound(const ScalarField& f, double radius) {
  if (!(radius >= 0.0)) throw std::invalid_argument("fourier_split_bound: radius must be >= 0");
  const PeriodicGrid& g = f.grid();
  FourierSplit s;
  double inv_low = 0.0, w12 = 0.0, inv_high = 0.0, h2 = 0.0;
  for (int r = 0; r < g.n2(); ++r) {
    for (int c = 0; c < g.nc(); ++c) {
      if (g.nyquist(r, c)) continue;
      const double w = g.weight(c);
      const double k2 = g.ksq()[static_cast<std::size_t>(r) * g.nc() + c];
      const double a = std::abs(f.at(r, c));
      if (std::sqrt(k2) < radius) {
        s.low += w * a;
        inv_low += w / (1.0 + k2);
      } else {
        s.high += w * a;
        if (k2 > 0.0) inv_high += w / (k2 * k2);
      }
      w12 += w * (1.0 + k2) * a * a;
      h2 += w * k2 * k2 * a * a;
    }
  }
  s.low_bound = std::sqrt(inv_low * w12);
  // The zero mode cannot be controlled by |k|^2; with R = 0 it is counted in the
  // high part, so add it back explicitly.
  s.high_bound = std::sqrt(inv_high * h2) + (radius == 0.0 ? std::abs(f.at(0, 0)) : 0.0);
  return s;
}

AppendixTerm appendix_monitor(const State& state, int order) {
  if (order < 0 || order > 3) throw std::invalid_argument("appendix_monitor: order must be in 0..3");
  AppendixTerm out;
  const ScalarField w = vorticity(state.v);
  const GridPtr pg = product_grid(state.grid(), true);
  const auto s11 = inverse_on(state.s.s11, *pg);
  const auto s12 = inverse_on(state.s.s12, *pg);
  const auto s22 = inverse_on(state.s.s22, *pg);
  const std::size_t np = s11.size();

  // Ordered tuples with j derivatives in y occur binomial(order, j) times.
  double sum = 0.0;
  for (int j = 0; j <= order; ++j) {
    const int i = order - j;
    const auto dw = inverse_on(mixed_derivative(w, i, j), *pg);
    const auto d11 = inverse_on(mixed_derivative(state.s.s11, i, j), *pg);
    const auto d12 = inverse_on(mixed_derivative(state.s.s12, i, j), *pg);
    const auto d22 = inverse_on(mixed_derivative(state.s.s22, i, j), *pg);
    double part = 0.0;
    for (std::size_t p = 0; p < np; ++p) {
      const Sym2 st{2.0 * s12[p], s22[p] - s11[p], -2.0 * s12[p]};
      part += dw[p] * contract(st, {d11[p], d12[p], d22[p]});
    }
    sum += binomial(order, j) * part;
  }
  out.b = 0.5 * sum * pg->area() / static_cast<double>(np);
  out.d3v = std::sqrt(seminorm_sq(state.v, 3));
  out.d3s = std::sqrt(seminorm_sq(state.s, 3));
  return out;
}

ScalarField lab_field(const GridPtr& grid, std::uint64_t seed, int index, double decay, double amplitude) {
  RandomFieldSpec spec;
  spec.decay = decay;
  ScalarField f = random_scalar(grid, seed, 16 + index, spec);
  const double n2 = seminorm_sq(f, 0);
  if (n2 > 0.0) f *= amplitude / std::sqrt(n2);
  return f;
}

InequalityLab inequality_lab(LabInequality which, const GridPtr& grid, std::uint64_t seed, int count, double decay,
                             double amp_min, double amp_max) {
  if (count < 1) throw std::invalid_argument("inequality_lab: count must be >= 1");
  if (!(amp_min > 0.0) || !(amp_max >= amp_min)) throw std::invalid_argument("inequality_lab: bad amplitude range");
  auto ratio = [which](const ScalarField& f) {
    switch (which) {
      case LabInequality::BrezisGallouet:
        return brezis_gallouet_ratio(f);
      case LabInequality::Ladyzhenskaya:
        return ladyzhenskaya_ratio(f);
      case LabInequality::Agmon:
        return agmon_ratio(f);
    }
    return 0.0;
  };
  SplitMix64 amp_rng(seed ^ 0xa5a5a5a5a5a5a5a5ULL);
  const double la = std::log(amp_min), lb = std::log(amp_max);
  InequalityLab lab;
  for (int i = 0; i < 2 * count; ++i) {
    const double amp = std::exp(la + (lb - la) * amp_rng.uniform());
    const ScalarField f = lab_field(grid, seed, i, decay, amp);
    const double q = ratio(f);
    if (i < count) {
      lab.fit_ratios.push_back(q);
      continue;
    }
    lab.heldout_ratios.push_back(q);
    const Norms n = norms(f);
    const FourierSplit s = fourier_split_bound(f, n.w22);
    const double tol = 1e-12 * (s.low + s.high);
    if (n.linf > s.low + s.high + tol || s.low > s.low_bound + tol || s.high > s.high_bound + tol)
      ++lab.split_violations;
  }
  lab.fitted_constant = *std::max_element(lab.fit_ratios.begin(), lab.fit_ratios.end());
  lab.heldout_max = *std::max_element(lab.heldout_ratios.begin(), lab.heldout_ratios.end());
  lab.heldout_over_fit = lab.fitted_constant > 0.0 ? lab.heldout_max / lab.fitted_constant : 0.0;
  return lab;
}

}  // namespace corot2d
