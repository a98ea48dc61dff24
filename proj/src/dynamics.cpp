#include "corot2d/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace corot2d {

RegularizationKind RegularizationKind::time_derivative(double eps) {
  RegularizationKind r{Type::TimeDerivative, eps};
  r.validate();
  return r;
}

RegularizationKind RegularizationKind::diffusive(double eps) {
  RegularizationKind r{Type::Diffusive, eps};
  r.validate();
  return r;
}

std::string RegularizationKind::name() const {
  switch (type) {
    case Type::None:
      return "none";
    case Type::TimeDerivative:
      return "timederiv";
    case Type::Diffusive:
      return "diffusive";
  }
  return "unknown";
}

void RegularizationKind::validate() const {
  if (type == Type::None) {
    if (eps != 0.0) throw ConfigError("regime 'none' takes no epsilon (got " + std::to_string(eps) + ")");
    return;
  }
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    std::ostringstream os;
    os << "regime '" << name() << "' needs epsilon > 0, got " << eps;
    throw ConfigError(os.str());
  }
}

RegularizationKind parse_regime(const std::string& name, double eps) {
  if (name == "none") {
    if (eps != 0.0) throw ConfigError("regime 'none' takes epsilon = 0");
    return RegularizationKind::none();
  }
  if (name == "timederiv") return RegularizationKind::time_derivative(eps);
  if (name == "diffusive") return RegularizationKind::diffusive(eps);
  throw ConfigError("unknown regime '" + name + "' (expected none, timederiv or diffusive)");
}

namespace {

using Samples = std::vector<double>;

// Physical samples of everything the quadratic terms need.
struct PhysicalState {
  GridPtr pg;
  Samples v1, v2, v1x, v1y, v2x, v2y;
  std::array<Samples, 3> s, sx, sy;
};

PhysicalState sample(const VectorField2& v, const SymTensor2Field* s, bool dealias) {
  PhysicalState p;
  p.pg = product_grid(v.grid(), dealias);
  const PeriodicGrid& pg = *p.pg;
  p.v1 = inverse_on(v.v1, pg);
  p.v2 = inverse_on(v.v2, pg);
  p.v1x = inverse_on(spectral_derivative(v.v1, 1, 1), pg);
  p.v1y = inverse_on(spectral_derivative(v.v1, 2, 1), pg);
  p.v2x = inverse_on(spectral_derivative(v.v2, 1, 1), pg);
  p.v2y = inverse_on(spectral_derivative(v.v2, 2, 1), pg);
  if (s) {
    const std::array<const ScalarField*, 3> comps{&s->s11, &s->s12, &s->s22};
    for (int c = 0; c < 3; ++c) {
      p.s[c] = inverse_on(*comps[c], pg);
      p.sx[c] = inverse_on(spectral_derivative(*comps[c], 1, 1), pg);
      p.sy[c] = inverse_on(spectral_derivative(*comps[c], 2, 1), pg);
    }
  }
  return p;
}

ScalarField back(const PhysicalState& p, const Samples& x, const GridPtr& base, bool dealias) {
  return forward_truncated(*p.pg, x, base, dealias);
}

void check_pair(const VectorField2& v, const SymTensor2Field& s) {
  require_same_grid(v.v1, s.s11, "state");
}

}  // namespace

SymTensor2Field corotational(const SymTensor2Field& s, const VectorField2& v, bool dealias) {
  check_pair(v, s);
  const PhysicalState p = sample(v, &s, dealias);
  const std::size_t n = p.v1.size();
  std::array<Samples, 3> out;
  for (auto& o : out) o.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Sym2 c = corotational_pointwise({p.s[0][i], p.s[1][i], p.s[2][i]}, p.v1y[i] - p.v2x[i]);
    out[0][i] = c.a11;
    out[1][i] = c.a12;
    out[2][i] = c.a22;
  }
  const auto& g = s.grid_ptr();
  return {back(p, out[0], g, dealias), back(p, out[1], g, dealias), back(p, out[2], g, dealias)};
}

VectorField2 advect_velocity(const VectorField2& v, bool dealias) {
  const PhysicalState p = sample(v, nullptr, dealias);
  const std::size_t n = p.v1.size();
  Samples a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = p.v1[i] * p.v1x[i] + p.v2[i] * p.v1y[i];
    b[i] = p.v1[i] * p.v2x[i] + p.v2[i] * p.v2y[i];
  }
  return {back(p, a, v.grid_ptr(), dealias), back(p, b, v.grid_ptr(), dealias)};
}

SymTensor2Field advect_stress(const VectorField2& v, const SymTensor2Field& s, bool dealias) {
  check_pair(v, s);
  const PhysicalState p = sample(v, &s, dealias);
  const std::size_t n = p.v1.size();
  std::array<ScalarField, 3> out;
  for (int c = 0; c < 3; ++c) {
    Samples a(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = p.v1[i] * p.sx[c][i] + p.v2[i] * p.sy[c][i];
    out[c] = back(p, a, s.grid_ptr(), dealias);
  }
  return {std::move(out[0]), std::move(out[1]), std::move(out[2])};
}

NonlinearTerms nonlinear_terms(const State& state, bool dealias) {
  check_pair(state.v, state.s);
  const PhysicalState p = sample(state.v, &state.s, dealias);
  const std::size_t n = p.v1.size();
  Samples a(n), b(n);
  std::array<Samples, 3> st;
  for (auto& o : st) o.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = p.v1[i], w = p.v2[i];
    a[i] = u * p.v1x[i] + w * p.v1y[i];
    b[i] = u * p.v2x[i] + w * p.v2y[i];
    const Sym2 c = corotational_pointwise({p.s[0][i], p.s[1][i], p.s[2][i]}, p.v1y[i] - p.v2x[i]);
    st[0][i] = u * p.sx[0][i] + w * p.sy[0][i] + c.a11;
    st[1][i] = u * p.sx[1][i] + w * p.sy[1][i] + c.a12;
    st[2][i] = u * p.sx[2][i] + w * p.sy[2][i] + c.a22;
  }
  const GridPtr& g = state.grid_ptr();
  NonlinearTerms nl;
  nl.adv_v = {back(p, a, g, dealias), back(p, b, g, dealias)};
  nl.stress = {back(p, st[0], g, dealias), back(p, st[1], g, dealias), back(p, st[2], g, dealias)};
  return nl;
}

namespace {

VectorField2 assemble_momentum(const State& state, const NonlinearTerms& nl, const DynamicsOptions& opts,
                               const ForcingTerms* forcing) {
  if (opts.freeze_velocity) return VectorField2::zeros(state.grid_ptr());
  VectorField2 rhs = divergence(state.s);
  rhs.axpy(-1.0, nl.adv_v);
  if (forcing) rhs += forcing->fv;
  auto [p1, p2] = leray_project(rhs.v1, rhs.v2);
  return {std::move(p1), std::move(p2)};
}

SymTensor2Field assemble_stress(const State& state, const NonlinearTerms& nl, const RegularizationKind& reg,
                                const DynamicsOptions& opts, const ForcingTerms* forcing) {
  SymTensor2Field rhs = sym_grad(state.v);
  rhs.axpy(-1.0, nl.stress);
  if (forcing) rhs += forcing->fs;
  switch (reg.type) {
    case RegularizationKind::Type::None:
      break;
    case RegularizationKind::Type::TimeDerivative:
      rhs = rhs.map([&](const ScalarField& f) { return mass_solve(f, reg.eps); });
      break;
    case RegularizationKind::Type::Diffusive:
      if (opts.include_diffusion) rhs.axpy(reg.eps, state.s.map([](const ScalarField& f) { return laplacian(f); }));
      break;
  }
  return rhs;
}

}  // namespace

VectorField2 momentum_rhs(const State& state, const DynamicsOptions& opts) {
  if (opts.freeze_velocity) return VectorField2::zeros(state.grid_ptr());
  VectorField2 rhs = divergence(state.s);
  rhs.axpy(-1.0, advect_velocity(state.v, opts.dealias));
  auto [p1, p2] = leray_project(rhs.v1, rhs.v2);
  return {std::move(p1), std::move(p2)};
}

SymTensor2Field stress_rhs(const State& state, const RegularizationKind& reg, const DynamicsOptions& opts) {
  reg.validate();
  NonlinearTerms nl;
  nl.stress = advect_stress(state.v, state.s, opts.dealias);
  nl.stress += corotational(state.s, state.v, opts.dealias);
  return assemble_stress(state, nl, reg, opts, nullptr);
}

Tendency tendency(const State& state, const RegularizationKind& reg, const DynamicsOptions& opts,
                  const ForcingTerms* forcing) {
  const NonlinearTerms nl = nonlinear_terms(state, opts.dealias);
  return {assemble_momentum(state, nl, opts, forcing), assemble_stress(state, nl, reg, opts, forcing)};
}

Dissipation dissipation_rate(const State& state, const Tendency& tend, bool dealias) {
  const NonlinearTerms nl = nonlinear_terms(state, dealias);
  // D - dS/dt - (v.grad)S - (SW - WS)
  SymTensor2Field x = sym_grad(state.v);
  x.axpy(-1.0, tend.ds);
  x.axpy(-1.0, nl.stress);

  const GridPtr pg = product_grid(state.grid(), dealias);
  const std::array<const ScalarField*, 3> sc{&state.s.s11, &state.s.s12, &state.s.s22};
  const std::array<const ScalarField*, 3> xc{&x.s11, &x.s12, &x.s22};
  std::vector<double> xi(pg->physical_size(), 0.0);
  for (int c = 0; c < 3; ++c) {
    const auto a = inverse_on(*sc[c], *pg);
    const auto b = inverse_on(*xc[c], *pg);
    for (std::size_t i = 0; i < xi.size(); ++i) xi[i] += kSymWeights[c] * a[i] * b[i];
  }
  double sum = 0.0;
  for (double q : xi) sum += q;
  Dissipation d;
  d.integral = sum * pg->area() / static_cast<double>(pg->physical_size());
  d.xi = forward_truncated(*pg, xi, state.grid_ptr(), dealias);
  return d;
}

double orthogonality_residual(const State& state) {
  const PhysicalState p = sample(state.v, &state.s, true);
  double worst = 0.0;
  for (std::size_t i = 0; i < p.v1.size(); ++i) {
    const Sym2 s{p.s[0][i], p.s[1][i], p.s[2][i]};
    const Sym2 c = corotational_pointwise(s, p.v1y[i] - p.v2x[i]);
    const double scale = std::sqrt(contract(c, c) * contract(s, s));
    if (scale > 0.0) worst = std::max(worst, std::abs(contract(c, s)) / scale);
  }
  return worst;
}

std::pair<double, double> energy_exchange(const State& state) {
  const VectorField2 div = divergence(state.s);
  const double lhs = inner(div.v1, state.v.v1) + inner(div.v2, state.v.v2);
  const SymTensor2Field d = sym_grad(state.v);
  const double sd = kSymWeights[0] * inner(state.s.s11, d.s11) + kSymWeights[1] * inner(state.s.s12, d.s12) +
                    kSymWeights[2] * inner(state.s.s22, d.s22);
  return {lhs, -sd};
}

double velocity_gradient_inertia(const VectorField2& v) {
  const VectorField2 a = advect_velocity(v, true);
  return inner_weighted(a.v1, v.v1, 1) + inner_weighted(a.v2, v.v2, 1);
}

std::pair<double, double> advection_identity(const VectorField2& v, const SymTensor2Field& s) {
  const SymTensor2Field a = advect_stress(v, s, true);
  const double lhs = kSymWeights[0] * inner_weighted(a.s11, s.s11, 1) +
                     kSymWeights[1] * inner_weighted(a.s12, s.s12, 1) +
                     kSymWeights[2] * inner_weighted(a.s22, s.s22, 1);

  const PhysicalState p = sample(v, &s, true);
  double sum = 0.0;
  for (std::size_t i = 0; i < p.v1.size(); ++i) {
    // grad v entries dv_k/dx_l
    const double g11 = p.v1x[i], g12 = p.v1y[i], g21 = p.v2x[i], g22 = p.v2y[i];
    for (int c = 0; c < 3; ++c) {
      const double ax = p.sx[c][i], ay = p.sy[c][i];
      sum += kSymWeights[c] * (g11 * ax * ax + g12 * ax * ay + g21 * ay * ax + g22 * ay * ay);
    }
  }
  const PeriodicGrid& pg = *p.pg;
  return {lhs, sum * pg.area() / static_cast<double>(pg.physical_size())};
}

}  // namespace corot2d
