#include "corot2d/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace corot2d {

void SimConfig::validate() const {
  make_grid(l1, l2, n1, n2);
  reg.validate();
  auto positive = [](double x, const char* name) {
    if (!(x > 0.0) || !std::isfinite(x)) throw ConfigError(std::string(name) + " must be > 0");
  };
  positive(dt, "dt");
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) throw ConfigError("t_final must be >= 0");
  if (!(cfl_safety > 0.0 && cfl_safety <= 1.0)) throw ConfigError("cfl_safety must lie in (0, 1]");
  if (diag_every < 1) throw ConfigError("diag_every must be >= 1");
  if (snapshot_every < 0) throw ConfigError("snapshot_every must be >= 0");
  positive(blowup_limit, "blowup_limit");
  if (explicit_diffusion && !reg.is_diffusive()) throw ConfigError("explicit_diffusion requires regime = diffusive");
  if (init.v_l2 < 0.0 || init.s_l2 < 0.0) throw ConfigError("initial norms must be >= 0");
  if (init.spectrum.kmax < 0.0) throw ConfigError("init_kmax must be >= 0");
}

GridPtr SimConfig::grid() const { return make_grid(l1, l2, n1, n2); }

DynamicsOptions SimConfig::dynamics() const {
  DynamicsOptions o;
  o.dealias = dealias;
  o.include_diffusion = explicit_diffusion;
  o.freeze_velocity = freeze_velocity;
  return o;
}

std::string stepper_identity(const SimConfig& cfg) {
  std::string s = (cfg.reg.is_diffusive() && !cfg.explicit_diffusion) ? "lawson-if-rk4" : "rk4-classical";
  s += cfg.dealias ? "/dealias-2/3-pad-3/2" : "/aliased";
  if (cfg.reg.is_time_derivative()) s += "/mass-solve";
  return s;
}

namespace {

void add(State& s, double a, const Tendency& k) {
  s.v.axpy(a, k.dv);
  s.s.axpy(a, k.ds);
}

SymTensor2Field heat(const SymTensor2Field& s, double eps, double dt) {
  return s.map([&](const ScalarField& f) { return heat_factor(f, eps, dt); });
}

State heat(const State& s, double eps, double dt) { return {s.v, heat(s.s, eps, dt), s.t}; }

Tendency heat(const Tendency& k, double eps, double dt) { return {k.dv, heat(k.ds, eps, dt)}; }

Tendency eval(const State& s, double t, const RegularizationKind& reg, const DynamicsOptions& opts,
              const Forcing* forcing) {
  if (!forcing) return tendency(s, reg, opts, nullptr);
  const ForcingTerms f = forcing->at(t);
  return tendency(s, reg, opts, &f);
}

bool finite(const ScalarField& f) {
  for (const cplx& c : f.coeffs())
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

bool finite(const State& s) {
  return finite(s.v.v1) && finite(s.v.v2) && finite(s.s.s11) && finite(s.s.s12) && finite(s.s.s22);
}

}  // namespace

State rk4_step(const State& u, double h, const RegularizationKind& reg, const DynamicsOptions& opts,
               const Forcing* forcing, double* q_increment) {
  if (!(h >= 0.0)) throw std::invalid_argument("rk4_step: dt must be >= 0");
  const double t = u.t;
  const bool lawson = reg.is_diffusive() && !opts.include_diffusion;
  State u2, u3, u4, out;

  const Tendency k1 = eval(u, t, reg, opts, forcing);
  if (lawson) {
    const double e = reg.eps;
    State w = u;
    add(w, 0.5 * h, k1);
    u2 = heat(w, e, 0.5 * h);
    const Tendency k2 = eval(u2, t + 0.5 * h, reg, opts, forcing);
    const State eh2 = heat(u, e, 0.5 * h);
    u3 = eh2;
    add(u3, 0.5 * h, k2);
    const Tendency k3 = eval(u3, t + 0.5 * h, reg, opts, forcing);
    u4 = heat(u, e, h);
    add(u4, h, heat(k3, e, 0.5 * h));
    const Tendency k4 = eval(u4, t + h, reg, opts, forcing);
    out = heat(u, e, h);
    add(out, h / 6.0, heat(k1, e, h));
    Tendency k23 = k2;
    k23.dv += k3.dv;
    k23.ds += k3.ds;
    add(out, h / 3.0, heat(k23, e, 0.5 * h));
    add(out, h / 6.0, k4);
  } else {
    u2 = u;
    add(u2, 0.5 * h, k1);
    const Tendency k2 = eval(u2, t + 0.5 * h, reg, opts, forcing);
    u3 = u;
    add(u3, 0.5 * h, k2);
    const Tendency k3 = eval(u3, t + 0.5 * h, reg, opts, forcing);
    u4 = u;
    add(u4, h, k3);
    const Tendency k4 = eval(u4, t + h, reg, opts, forcing);
    out = u;
    add(out, h / 6.0, k1);
    add(out, h / 3.0, k2);
    add(out, h / 3.0, k3);
    add(out, h / 6.0, k4);
  }
  out.t = t + h;

  if (q_increment) {
    *q_increment = h / 6.0 *
                   (seminorm_sq(u.s, 1) + 2.0 * seminorm_sq(u2.s, 1) + 2.0 * seminorm_sq(u3.s, 1) +
                    seminorm_sq(u4.s, 1));
  }
  if (!finite(out)) {
    std::ostringstream os;
    os << "non-finite state after step to t = " << out.t;
    throw BlowUpError(os.str(), out.t);
  }
  return out;
}

double cfl_dt(const State& state, const PeriodicGrid& grid, double safety, double dt_max) {
  const double a = max_abs_padded(state.v.v1), b = max_abs_padded(state.v.v2);
  double dt = dt_max;
  if (a > 0.0) dt = std::min(dt, safety * grid.dx() / a);
  if (b > 0.0) dt = std::min(dt, safety * grid.dy() / b);
  return dt > 0.0 ? dt : dt_max;
}

std::string to_string(RunStatus s) { return s == RunStatus::Completed ? "completed" : "blow-up"; }

Simulation::Simulation(SimConfig cfg, State initial, const Forcing* forcing)
    : cfg_(std::move(cfg)), opts_(cfg_.dynamics()), forcing_(forcing), state_(std::move(initial)) {
  cfg_.validate();
  const GridPtr g = cfg_.grid();
  if (!g->same_shape(state_.grid())) throw DimensionError("initial state is not on the configured grid");
  energy0_ = seminorm_sq(state_.v, 0) + seminorm_sq(state_.s, 0);
}

bool Simulation::done() const {
  return state_.t >= cfg_.t_final * (1.0 - 1e-14) || cfg_.t_final - state_.t <= 1e-14;
}

void Simulation::step() {
  const double remaining = cfg_.t_final - state_.t;
  double h = cfg_.use_cfl ? cfl_dt(state_, state_.grid(), cfg_.cfl_safety, cfg_.dt) : cfg_.dt;
  // Absorb a trailing sliver into the final step instead of taking a tiny one.
  if (remaining <= h * (1.0 + 1e-9)) h = remaining;
  double dq = 0.0;
  State next = rk4_step(state_, h, cfg_.reg, opts_, forcing_, &dq);
  if (remaining <= h * (1.0 + 1e-9)) next.t = cfg_.t_final;
  const double e = seminorm_sq(next.v, 0) + seminorm_sq(next.s, 0);
  const double x = seminorm_sq(next.v, 1) + seminorm_sq(next.s, 1);
  if (!(e <= cfg_.blowup_limit) || !(x <= cfg_.blowup_limit)) {
    std::ostringstream os;
    os << "norm limit " << cfg_.blowup_limit << " exceeded at t = " << next.t << " (E = " << e << ", X = " << x
       << ")";
    throw BlowUpError(os.str(), next.t);
  }
  state_ = std::move(next);
  q_ += dq;
  ++steps_;
}

DiagRecord Simulation::record() const {
  return make_record(state_, steps_, cfg_.reg, opts_, forcing_, q_, energy0_);
}

Trajectory run(const SimConfig& cfg, const State& initial, const Forcing* forcing, const RunHooks& hooks) {
  Simulation sim(cfg, initial, forcing);
  Trajectory tr;
  tr.reg = cfg.reg;
  tr.stepper = stepper_identity(cfg);
  auto sample = [&] {
    tr.rows.push_back(sim.record());
    if (hooks.keep_states) tr.states.push_back(sim.state());
  };
  auto maybe_snapshot = [&](bool force) {
    if (!hooks.snapshot || cfg.snapshot_every <= 0) return;
    if (force || sim.steps() % cfg.snapshot_every == 0) hooks.snapshot(sim.state(), sim.steps());
  };
  sample();
  maybe_snapshot(true);
  while (!sim.done()) {
    try {
      sim.step();
    } catch (const BlowUpError& e) {
      tr.status = RunStatus::BlowUp;
      tr.blowup_time = e.time();
      tr.message = e.what();
      // Keep the last finite state as the final row.
      if (tr.rows.back().step != sim.steps()) sample();
      return tr;
    }
    const bool last = sim.done();
    if (last || sim.steps() % cfg.diag_every == 0) sample();
    maybe_snapshot(false);
  }
  return tr;
}

}  // namespace corot2d
