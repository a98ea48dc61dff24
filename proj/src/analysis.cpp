#include "corot2d/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace corot2d {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> time_derivative(const std::vector<double>& t, const std::vector<double>& x) {
  const std::size_t n = t.size();
  std::vector<double> d(n, 0.0);
  if (n < 2) return d;
  d[0] = (x[1] - x[0]) / (t[1] - t[0]);
  d[n - 1] = (x[n - 1] - x[n - 2]) / (t[n - 1] - t[n - 2]);
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (x[i + 1] - x[i - 1]) / (t[i + 1] - t[i - 1]);
  return d;
}

}  // namespace

double fit_c0_raw(const Trajectory& tr) {
  std::vector<double> t, x;
  for (const auto& r : tr.rows) {
    t.push_back(r.t);
    x.push_back(r.x);
  }
  const auto dx = time_derivative(t, x);
  double best = -kInf;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0)) continue;
    best = std::max(best, (dx[i] + tr.reg.eps * tr.rows[i].lap_s_l2sq) / (x[i] * x[i]));
  }
  return best;
}

BoundReport theorem_bounds(const Trajectory& tr, Theorem which, std::optional<double> c0_floor) {
  if (tr.rows.empty()) throw std::invalid_argument("theorem_bounds: empty trajectory");
  if (which == Theorem::Thm1 && !tr.reg.is_time_derivative())
    throw std::invalid_argument("theorem_bounds: Thm1 monitors the timederiv regime, got " + tr.reg.name());
  if (which == Theorem::Thm2 && !tr.reg.is_diffusive())
    throw std::invalid_argument("theorem_bounds: Thm2 monitors the diffusive regime, got " + tr.reg.name());

  BoundReport rep;
  rep.which = which;
  rep.x0 = tr.rows.front().x;
  for (const auto& r : tr.rows) rep.t.push_back(r.t);

  if (which == Theorem::Thm1) {
    const double ly0 = std::log(tr.rows.front().y_e);
    for (const auto& r : tr.rows) {
      rep.monitored.push_back(r.y_e);
      rep.curve.push_back(std::exp(ly0 * std::exp(2.0 * r.t)));
    }
    rep.c0_fitted = rep.c0 = std::numeric_limits<double>::quiet_NaN();
    rep.horizon = kInf;
  } else {
    rep.c0_fitted = tr.rows.size() >= 2 ? std::max(0.0, fit_c0_raw(tr)) : 0.0;
    rep.c0 = std::max(rep.c0_fitted, c0_floor.value_or(0.0));
    const double cx = rep.c0 * rep.x0;
    rep.horizon = cx > 0.0 ? 1.0 / cx : kInf;
    rep.small_data = rep.c0 == 0.0 || rep.x0 < 1.0 / std::sqrt(rep.c0);
    rep.c1 = cx < 1.0 ? 2.0 * rep.x0 / (1.0 - cx) : kInf;
    for (const auto& r : tr.rows) {
      rep.monitored.push_back(r.x);
      rep.curve.push_back(r.t < rep.horizon ? rep.x0 / (1.0 - rep.c0 * r.t * rep.x0) : kInf);
      if (std::isfinite(rep.c1) && rep.c1 > 0.0) rep.max_ratio_c1 = std::max(rep.max_ratio_c1, r.x / rep.c1);
    }
    if (rep.small_data && std::isfinite(rep.c1) && rep.max_ratio_c1 > 1.0) rep.holds = false;
  }
  for (std::size_t i = 0; i < rep.t.size(); ++i) {
    const double c = rep.curve[i], m = rep.monitored[i];
    if (!std::isfinite(c)) continue;
    const double q = c > 0.0 ? m / c : (m > 0.0 ? kInf : 0.0);
    rep.max_ratio = std::max(rep.max_ratio, q);
  }
  // Allow for round-off in equalities such as X(t) = X(0) on a stationary run.
  if (rep.max_ratio > 1.0 + 1e-12) rep.holds = false;
  return rep;
}

DualNormEstimate dual_norm_estimate(const Trajectory& tr) {
  if (tr.states.size() < 2 || tr.states.size() != tr.rows.size())
    throw std::invalid_argument("dual_norm_estimate: needs states stored at >= 2 samples");
  DualNormEstimate est;
  double acc = 0.0;
  for (std::size_t i = 1; i < tr.states.size(); ++i) {
    const State& a = tr.states[i - 1];
    const State& b = tr.states[i];
    const double dt = b.t - a.t;
    if (!(dt > 0.0)) continue;
    const PeriodicGrid& g = a.grid();
    double sup2 = 0.0;
    for (int r = 0; r < g.n2(); ++r)
      for (int c = 0; c < g.nc(); ++c) {
        const double k2 = g.ksq()[static_cast<std::size_t>(r) * g.nc() + c];
        const cplx d1 = (b.v.v1.at(r, c) - a.v.v1.at(r, c)) / dt;
        const cplx d2 = (b.v.v2.at(r, c) - a.v.v2.at(r, c)) / dt;
        sup2 += g.weight(c) * (std::norm(d1) + std::norm(d2)) / (1.0 + k2);
      }
    acc += dt * g.area() * sup2;
  }
  est.finite_difference = std::sqrt(acc);
  double mv = 0.0, mgv = 0.0, ms = 0.0;
  for (const auto& r : tr.rows) {
    mv = std::max(mv, std::sqrt(r.v_l2sq));
    mgv = std::max(mgv, std::sqrt(r.grad_v_l2sq));
    ms = std::max(ms, std::sqrt(r.s_l2sq));
  }
  const double span = tr.rows.back().t - tr.rows.front().t;
  est.a_priori_bound = std::sqrt(span) * (mv * mgv + ms);
  return est;
}

namespace {

State truncate_state(const State& s, const GridPtr& g) {
  auto r = [&](const ScalarField& f) { return resample(f, g); };
  State out{s.v.map(r), s.s.map(r), s.t};
  return project_state(out);
}

// L2 distance of coarse and fine states, restricted to coarse modes or not.
std::pair<double, double> distance(const State& coarse, const State& fine, bool common_only) {
  if (common_only) {
    const State f = truncate_state(fine, coarse.grid_ptr());
    VectorField2 dv = coarse.v;
    dv.axpy(-1.0, f.v);
    SymTensor2Field ds = coarse.s;
    ds.axpy(-1.0, f.s);
    return {std::sqrt(seminorm_sq(dv, 0)), std::sqrt(seminorm_sq(ds, 0))};
  }
  auto up = [&](const ScalarField& x) { return resample(x, fine.grid_ptr()); };
  VectorField2 dv = coarse.v.map(up);
  dv.axpy(-1.0, fine.v);
  SymTensor2Field ds = coarse.s.map(up);
  ds.axpy(-1.0, fine.s);
  return {std::sqrt(seminorm_sq(dv, 0)), std::sqrt(seminorm_sq(ds, 0))};
}

}  // namespace

GalerkinRow galerkin_compare(const SimConfig& cfg, int n_coarse, const State* source) {
  SimConfig cc = cfg, cf = cfg;
  cc.n1 = cc.n2 = n_coarse;
  cf.n1 = cf.n2 = 2 * n_coarse;
  cc.use_cfl = cf.use_cfl = false;
  cc.validate();
  cf.validate();
  State data = source ? *source : make_initial_state(cf.grid(), cfg.init, cfg.seed);
  Simulation coarse(cc, truncate_state(data, cc.grid()));
  Simulation fine(cf, truncate_state(data, cf.grid()));

  GalerkinRow row;
  row.n_coarse = n_coarse;
  row.n_fine = 2 * n_coarse;
  auto sample = [&] {
    const auto [a, b] = distance(coarse.state(), fine.state(), true);
    const auto [c, d] = distance(coarse.state(), fine.state(), false);
    row.sup_dv = std::max(row.sup_dv, a);
    row.sup_ds = std::max(row.sup_ds, b);
    row.sup_dv_full = std::max(row.sup_dv_full, c);
    row.sup_ds_full = std::max(row.sup_ds_full, d);
  };
  sample();
  try {
    while (!coarse.done()) {
      coarse.step();
      fine.step();
      if (coarse.done() || coarse.steps() % cfg.diag_every == 0) sample();
    }
  } catch (const BlowUpError&) {
    row.status = "blow-up";
  }
  return row;
}

std::vector<GalerkinRow> galerkin_ladder(const SimConfig& cfg, const std::vector<int>& ns) {
  if (ns.size() < 2) throw std::invalid_argument("galerkin_ladder: needs at least two resolutions");
  for (std::size_t i = 1; i < ns.size(); ++i)
    if (ns[i] != 2 * ns[i - 1]) throw std::invalid_argument("galerkin_ladder: resolutions must double");
  SimConfig top = cfg;
  top.n1 = top.n2 = ns.back();
  const State data = make_initial_state(top.grid(), cfg.init, cfg.seed);
  std::vector<GalerkinRow> rows;
  for (std::size_t i = 0; i + 1 < ns.size(); ++i) rows.push_back(galerkin_compare(cfg, ns[i], &data));
  return rows;
}

}  // namespace corot2d
