#include "corot2d/manufactured.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

namespace corot2d {

std::string to_string(MmsFamily f) { return f == MmsFamily::Trigonometric ? "trig" : "smooth"; }

double MmsProfile::g(double t) const { return amp_v * (1.0 + 0.5 * std::sin(omega * t)); }
double MmsProfile::dg(double t) const { return amp_v * 0.5 * omega * std::cos(omega * t); }
double MmsProfile::h(double t) const { return amp_s * (1.0 + 0.5 * std::cos(omega * t)); }
double MmsProfile::dh(double t) const { return -amp_s * 0.5 * omega * std::sin(omega * t); }

namespace {

// Samples f(X, Y, a, b) with X = a x, Y = b y and returns the masked transform.
template <class F>
ScalarField sample(const GridPtr& g, F f) {
  std::vector<double> x(g->physical_size());
  const double a = kTwoPi / g->l1(), b = kTwoPi / g->l2();
  for (int j = 0; j < g->n2(); ++j)
    for (int i = 0; i < g->n1(); ++i) {
      const double X = a * g->dx() * i, Y = b * g->dy() * j;
      x[static_cast<std::size_t>(j) * g->n1() + i] = f(X, Y, a, b);
    }
  return dealias(forward(g, x));
}

GridPtr fine_grid(const GridPtr& g, MmsFamily family) {
  if (family == MmsFamily::Trigonometric) return g;
  const int n1 = std::max(256, 2 * g->n1()), n2 = std::max(256, 2 * g->n2());
  return regrid(*g, n1, n2);
}

MmsPieces resample(const MmsPieces& p, const GridPtr& g) {
  auto r = [&](const ScalarField& f) { return dealias(corot2d::resample(f, g)); };
  MmsPieces o;
  o.vel = p.vel.map(r);
  o.adv = p.adv.map(r);
  o.div_sigma = p.div_sigma.map(r);
  o.sigma = p.sigma.map(r);
  o.transport = p.transport.map(r);
  o.sym_grad_vel = p.sym_grad_vel.map(r);
  o.lap_sigma = p.lap_sigma.map(r);
  return o;
}

}  // namespace

MmsPieces trig_pieces(const GridPtr& g) {
  MmsPieces p;
  p.vel.v1 = sample(g, [](double, double Y, double, double) { return std::sin(Y); });
  p.vel.v2 = sample(g, [](double X, double, double, double) { return std::sin(X); });
  p.vel.v1.pin_zero_mode();
  p.vel.v2.pin_zero_mode();
  p.adv.v1 = sample(g, [](double X, double Y, double, double b) { return b * std::sin(X) * std::cos(Y); });
  p.adv.v2 = sample(g, [](double X, double Y, double a, double) { return a * std::cos(X) * std::sin(Y); });
  p.div_sigma.v1 =
      sample(g, [](double X, double Y, double a, double b) { return a * std::cos(X) - b * std::sin(Y); });
  p.div_sigma.v2 = ScalarField(g);
  p.sigma.s11 = sample(g, [](double X, double, double, double) { return std::sin(X); });
  p.sigma.s12 = sample(g, [](double, double Y, double, double) { return std::cos(Y); });
  p.sigma.s22 = sample(g, [](double X, double, double, double) { return -std::sin(X); });
  // (V.grad)Sigma plus (omega_V / 2) Sigma~ with omega_V = b cos Y - a cos X.
  p.transport.s11 = sample(g, [](double X, double Y, double a, double b) {
    return a * std::sin(Y) * std::cos(X) + (b * std::cos(Y) - a * std::cos(X)) * std::cos(Y);
  });
  p.transport.s12 = sample(g, [](double X, double Y, double a, double b) {
    return -b * std::sin(X) * std::sin(Y) - (b * std::cos(Y) - a * std::cos(X)) * std::sin(X);
  });
  p.transport.s22 = sample(g, [](double X, double Y, double a, double b) {
    return -a * std::sin(Y) * std::cos(X) - (b * std::cos(Y) - a * std::cos(X)) * std::cos(Y);
  });
  p.sym_grad_vel.s11 = ScalarField(g);
  p.sym_grad_vel.s22 = ScalarField(g);
  p.sym_grad_vel.s12 =
      sample(g, [](double X, double Y, double a, double b) { return 0.5 * (b * std::cos(Y) + a * std::cos(X)); });
  p.lap_sigma.s11 = sample(g, [](double X, double, double a, double) { return -a * a * std::sin(X); });
  p.lap_sigma.s12 = sample(g, [](double, double Y, double, double b) { return -b * b * std::cos(Y); });
  p.lap_sigma.s22 = sample(g, [](double X, double, double a, double) { return a * a * std::sin(X); });
  return p;
}

MmsPieces numerical_pieces(const GridPtr& g, MmsFamily family) {
  MmsPieces p;
  if (family == MmsFamily::Trigonometric) {
    p.vel.v1 = sample(g, [](double, double Y, double, double) { return std::sin(Y); });
    p.vel.v2 = sample(g, [](double X, double, double, double) { return std::sin(X); });
    p.sigma.s11 = sample(g, [](double X, double, double, double) { return std::sin(X); });
    p.sigma.s12 = sample(g, [](double, double Y, double, double) { return std::cos(Y); });
    p.sigma.s22 = sample(g, [](double X, double, double, double) { return -std::sin(X); });
  } else {
    const ScalarField psi =
        sample(g, [](double X, double Y, double, double) { return std::exp(1.5 * std::sin(X) + std::cos(Y)); });
    p.vel = {spectral_derivative(psi, 2, 1), -1.0 * spectral_derivative(psi, 1, 1)};
    p.vel *= 1.0 / std::max(max_abs_padded(p.vel.v1), max_abs_padded(p.vel.v2));
    p.sigma.s11 =
        sample(g, [](double X, double Y, double, double) { return std::exp(1.2 * std::cos(X)) * std::sin(Y); });
    p.sigma.s12 = sample(g, [](double X, double Y, double, double) { return std::exp(std::sin(X + Y)) - 1.0; });
    p.sigma.s22 = -1.0 * p.sigma.s11;
    p.sigma *= 1.0 / std::max(max_abs_padded(p.sigma.s11), max_abs_padded(p.sigma.s12));
  }
  p.vel.v1.pin_zero_mode();
  p.vel.v2.pin_zero_mode();
  p.adv = advect_velocity(p.vel, true);
  p.div_sigma = divergence(p.sigma);
  p.transport = advect_stress(p.vel, p.sigma, true);
  p.transport += corotational(p.sigma, p.vel, true);
  p.sym_grad_vel = sym_grad(p.vel);
  p.lap_sigma = p.sigma.map([](const ScalarField& f) { return laplacian(f); });
  return p;
}

ManufacturedSolution::ManufacturedSolution(const GridPtr& grid, const RegularizationKind& reg, MmsFamily family,
                                           MmsProfile profile)
    : grid_(grid), fine_(fine_grid(grid, family)), reg_(reg), family_(family), p_(profile) {
  reg_.validate();
  if (family == MmsFamily::Trigonometric) {
    exact_ = trig_pieces(grid_);
    run_ = exact_;
  } else {
    exact_ = numerical_pieces(fine_, family);
    run_ = resample(exact_, grid_);
  }
}

ForcingTerms ManufacturedSolution::at(double t) const {
  const double g = p_.g(t), dg = p_.dg(t), h = p_.h(t), dh = p_.dh(t);
  ForcingTerms f;
  f.fv = VectorField2::zeros(grid_);
  f.fv.axpy(dg, run_.vel);
  f.fv.axpy(g * g, run_.adv);
  f.fv.axpy(-h, run_.div_sigma);
  f.fs = SymTensor2Field::zeros(grid_);
  f.fs.axpy(dh, run_.sigma);
  f.fs.axpy(g * h, run_.transport);
  f.fs.axpy(-g, run_.sym_grad_vel);
  if (reg_.is_time_derivative()) f.fs.axpy(-reg_.eps * dh, run_.lap_sigma);
  if (reg_.is_diffusive()) f.fs.axpy(-reg_.eps * h, run_.lap_sigma);
  return f;
}

State ManufacturedSolution::initial() const {
  State s = State::zeros(grid_);
  s.v.axpy(p_.g(0.0), run_.vel);
  s.s.axpy(p_.h(0.0), run_.sigma);
  s = project_state(s);
  s.t = 0.0;
  return s;
}

std::pair<double, double> ManufacturedSolution::error(const State& s) const {
  auto up = [&](const ScalarField& f) { return corot2d::resample(f, fine_); };
  VectorField2 ev = s.v.map(up);
  ev.axpy(-p_.g(s.t), exact_.vel);
  SymTensor2Field es = s.s.map(up);
  es.axpy(-p_.h(s.t), exact_.sigma);
  return {std::sqrt(seminorm_sq(ev, 0)), std::sqrt(seminorm_sq(es, 0))};
}

MmsLadder default_ladder(const SimConfig& cfg) {
  MmsLadder l;
  const int n = cfg.n1;
  l.n_values = {n / 2, n, 2 * n};
  l.dt_values = {2.0 * cfg.dt, cfg.dt, 0.5 * cfg.dt};
  return l;
}

namespace {

MmsRow mms_row(const SimConfig& base, MmsFamily family, const MmsProfile& prof, int n, double dt, double t_final) {
  SimConfig c = base;
  c.n1 = c.n2 = n;
  c.dt = dt;
  c.t_final = t_final;
  c.forcing = true;
  c.use_cfl = false;
  const ManufacturedSolution mms(c.grid(), c.reg, family, prof);
  Simulation sim(c, mms.initial(), &mms);
  MmsRow row;
  row.family = family;
  row.n = n;
  row.dt = dt;
  try {
    while (!sim.done()) sim.step();
    std::tie(row.err_v, row.err_s) = mms.error(sim.state());
  } catch (const BlowUpError& e) {
    row.status = "blow-up";
    row.err_v = row.err_s = std::numeric_limits<double>::infinity();
  }
  return row;
}

}  // namespace

std::vector<MmsRow> manufactured_run(const SimConfig& cfg, const MmsLadder& ladder) {
  if (!cfg.forcing) throw ConfigError("manufactured_run requires forcing = true");
  cfg.validate();
  std::vector<MmsRow> rows;
  for (std::size_t i = 0; i < ladder.n_values.size(); ++i) {
    MmsRow r = mms_row(cfg, ladder.space_family, ladder.profile, ladder.n_values[i], ladder.space_dt,
                       ladder.space_t_final);
    r.ladder = "space";
    if (i > 0) {
      r.ratio_v = rows.back().err_v / r.err_v;
      r.ratio_s = rows.back().err_s / r.err_s;
    }
    rows.push_back(r);
  }
  const std::size_t first_time = rows.size();
  for (std::size_t i = 0; i < ladder.dt_values.size(); ++i) {
    MmsRow r = mms_row(cfg, ladder.time_family, ladder.profile, cfg.n1, ladder.dt_values[i], cfg.t_final);
    r.ladder = "time";
    if (i > 0) {
      const MmsRow& p = rows[first_time + i - 1];
      r.ratio_v = p.err_v / r.err_v;
      r.ratio_s = p.err_s / r.err_s;
      const double q = std::log(p.dt / r.dt);
      r.order_v = std::log(r.ratio_v) / q;
      r.order_s = std::log(r.ratio_s) / q;
    }
    rows.push_back(r);
  }
  return rows;
}

std::vector<MmsRow> manufactured_run(const SimConfig& cfg) { return manufactured_run(cfg, default_ladder(cfg)); }

}  // namespace corot2d
