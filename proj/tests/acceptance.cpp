// Runs the thirteen acceptance criteria and prints one PASS/FAIL line each.
// Exit status is the number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "corot2d/analysis.hpp"
#include "corot2d/io.hpp"
#include "corot2d/manufactured.hpp"

using namespace corot2d;

namespace {

// One seed for every criterion.
constexpr std::uint64_t kSeed = 1;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

SimConfig desk(RegularizationKind reg) {
  SimConfig c;
  c.n1 = c.n2 = 64;
  c.reg = reg;
  c.dt = 1e-3;
  c.t_final = 1.0;
  c.diag_every = 50;
  c.seed = kSeed;
  return c;
}

Trajectory desk_run(const SimConfig& c) { return run(c, make_initial_state(c.grid(), c.init, c.seed)); }

// Desk-scale runs shared by criteria 1, 2, 3, 5 and 6.
struct DeskRuns {
  Trajectory none, td, dif01, dif1;
};

const DeskRuns& desk_runs() {
  static const DeskRuns runs = [] {
    DeskRuns r;
    r.none = desk_run(desk(RegularizationKind::none()));
    r.td = desk_run(desk(RegularizationKind::time_derivative(1.0)));
    r.dif01 = desk_run(desk(RegularizationKind::diffusive(0.1)));
    r.dif1 = desk_run(desk(RegularizationKind::diffusive(1.0)));
    return r;
  }();
  return runs;
}

double max_drift(const Trajectory& tr, double DiagRecord::*field) {
  const double q0 = tr.rows.front().*field;
  double m = 0.0;
  for (const auto& r : tr.rows) m = std::max(m, std::abs(r.*field - q0) / q0);
  return m;
}

double max_of(const Trajectory& tr, const std::function<double(const DiagRecord&)>& f) {
  double m = 0.0;
  for (const auto& r : tr.rows) m = std::max(m, f(r));
  return m;
}

bool completed(const Trajectory& tr) { return tr.status == RunStatus::Completed && tr.rows.back().t == 1.0; }

Verdict c1() {
  const auto& tr = desk_runs().none;
  const double d = max_drift(tr, &DiagRecord::energy);
  return {completed(tr) && d <= 1e-6, fmt("max |E(t)-E(0)|/E(0) = %.3e (X(0) = %.3e)", d, tr.rows[0].x)};
}

Verdict c2() {
  const auto& tr = desk_runs().td;
  const double d = max_drift(tr, &DiagRecord::energy_i);
  return {completed(tr) && d <= 1e-6, fmt("eps = 1: max |E_I(t)-E_I(0)|/E_I(0) = %.3e", d)};
}

Verdict c3() {
  const auto& a = desk_runs().dif01;
  const auto& b = desk_runs().dif1;
  auto res = [](const Trajectory& tr) {
    return max_of(tr, [&](const DiagRecord& r) { return std::abs(r.energy_ii_residual); }) / tr.rows[0].energy;
  };
  const double ra = res(a), rb = res(b);
  return {completed(a) && completed(b) && ra <= 1e-5 && rb <= 1e-5,
          fmt("balance residual / E(0): eps = 0.1 %.3e, eps = 1 %.3e", ra, rb)};
}

Verdict c4() {
  double worst = 0.0;
  const GridPtr g = make_grid(kTwoPi, kTwoPi, 64, 64);
  SplitMix64 rng(kSeed);
  for (int i = 0; i < 100; ++i) {
    InitSpec spec;
    spec.spectrum.decay = 1.0 + 3.0 * rng.uniform();
    spec.v_l2 = std::exp(6.0 * rng.uniform() - 3.0);
    spec.s_l2 = std::exp(6.0 * rng.uniform() - 3.0);
    spec.trace_free = i % 2 == 0;
    worst = std::max(worst, orthogonality_residual(make_initial_state(g, spec, kSeed + i)));
  }
  return {worst <= 1e-12, fmt("max pointwise |(SW-WS):S| / (|SW-WS||S|) over 100 states = %.3e", worst)};
}

Verdict c5() {
  const auto& r = desk_runs();
  auto tr_max = [](const Trajectory& tr) {
    return max_of(tr, [](const DiagRecord& x) { return x.max_abs_trace; });
  };
  const double a = tr_max(r.none), b = tr_max(r.td), c = tr_max(r.dif01);
  const bool ok = completed(r.none) && completed(r.td) && completed(r.dif01);
  return {ok && a <= 1e-10 && b <= 1e-10 && c <= 1e-10,
          fmt("max ||tr S||_inf: none %.2e, timederiv %.2e, diffusive %.2e", a, b, c)};
}

Verdict c6() {
  const auto& r = desk_runs();
  const double z = max_of(r.none, [](const DiagRecord& x) { return std::abs(x.xi_integral); });
  double rel = 0.0;
  for (const Trajectory* tr : {&r.dif01, &r.dif1})
    rel = std::max(rel, max_of(*tr, [&](const DiagRecord& x) {
      const double want = tr->reg.eps * x.grad_s_l2sq;
      return std::abs(x.xi_integral - want) / want;
    }));
  return {z <= 1e-10 && rel <= 1e-8, fmt("eps = 0: max |int xi| = %.2e; diffusive: max rel err = %.2e", z, rel)};
}

Verdict c7() {
  // Spatial ladder: a doubling passes if the error drops 4x or the finer
  // rung already sits at the round-off floor of the tiny-dt run.
  constexpr double kFloor = 1e-11;
  bool ok = true;
  std::string detail;
  for (const auto& reg :
       {RegularizationKind::none(), RegularizationKind::time_derivative(0.1), RegularizationKind::diffusive(0.1)}) {
    SimConfig c;
    c.n1 = c.n2 = 32;
    c.reg = reg;
    c.dt = 1e-3;
    c.t_final = 1.0;
    c.forcing = true;
    c.seed = kSeed;
    MmsLadder l = default_ladder(c);
    const auto rows = manufactured_run(c, l);
    double min_ratio = 1e300, min_order = 1e300;
    for (const auto& row : rows) {
      if (row.status != "completed") ok = false;
      if (row.ladder == "space" && row.ratio_v > 0.0) {
        const bool floor = row.err_v <= kFloor && row.err_s <= kFloor;
        if (!floor) {
          min_ratio = std::min({min_ratio, row.ratio_v, row.ratio_s});
          if (row.ratio_v < 4.0 || row.ratio_s < 4.0) ok = false;
        }
      }
      if (row.ladder == "time" && row.order_v != 0.0) {
        min_order = std::min({min_order, row.order_v, row.order_s});
        if (row.order_v < 3.9 || row.order_s < 3.9) ok = false;
      }
    }
    detail += fmt("%s: space min ratio %.3g, err(64) %.1e; time min order %.3f. ", reg.name().c_str(), min_ratio,
                  std::max(rows[2].err_v, rows[2].err_s), min_order);
  }
  return {ok, detail};
}

Verdict c8() {
  // Pilot: grow the data until the fitted Riccati constant is positive.
  SimConfig c;
  c.n1 = c.n2 = 32;
  c.reg = RegularizationKind::diffusive(1.0);
  c.dt = 1e-3;
  c.t_final = 1.0;
  c.diag_every = 10;
  c.seed = kSeed;
  double c0 = 0.0, amp = 0.1;
  Trajectory pilot;
  for (; amp < 200.0; amp *= 2.0) {
    c.init.v_l2 = c.init.s_l2 = amp;
    pilot = desk_run(c);
    if (pilot.status == RunStatus::Completed && fit_c0_raw(pilot) > 0.0) {
      c0 = fit_c0_raw(pilot);
      break;
    }
  }
  if (!(c0 > 0.0)) return {false, "pilot never produced a positive c0"};
  const BoundReport horizon_pilot = theorem_bounds(pilot, Theorem::Thm2);

  // Small data: X(0) at 10% of the threshold c0^(-1/2).
  const State big = make_initial_state(c.grid(), c.init, c.seed);
  const double x_big = seminorm_sq(big.v, 1) + seminorm_sq(big.s, 1);
  const double target = 0.1 / std::sqrt(c0);
  State small = big;
  const double scale = std::sqrt(target / x_big);
  small.v *= scale;
  small.s *= scale;
  SimConfig cs = c;
  cs.t_final = 5.0;
  const Trajectory tr = run(cs, small);
  const BoundReport rep = theorem_bounds(tr, Theorem::Thm2, c0);
  const double frac = rep.x0 * std::sqrt(rep.c0);
  const bool ok = tr.status == RunStatus::Completed && tr.rows.back().t == 5.0 && rep.small_data && frac <= 0.1 + 1e-12 &&
                  rep.max_ratio_c1 <= 1.0 && rep.max_ratio <= 1.0 + 1e-12 && horizon_pilot.max_ratio <= 1.0 + 1e-12;
  return {ok, fmt("pilot amp %.3g c0 = %.3e; X(0) sqrt(c0) = %.3f, max X/C1 = %.3f, max X/curve = %.3f; "
                  "pilot horizon %.3g, max X/curve = %.3f",
                  amp, rep.c0, frac, rep.max_ratio_c1, rep.max_ratio, horizon_pilot.horizon, horizon_pilot.max_ratio)};
}

Verdict c9() {
  SimConfig c = desk(RegularizationKind::time_derivative(1.0));
  c.n1 = c.n2 = 32;
  c.diag_every = 10;
  c.init.v_l2 = c.init.s_l2 = 1.0;
  const Trajectory tr = desk_run(c);
  const BoundReport rep = theorem_bounds(tr, Theorem::Thm1);
  return {completed(tr) && rep.holds && rep.max_ratio <= 1.0,
          fmt("Y_e(0) = %.3f, max Y_e/curve = %.3e over %zu samples", tr.rows[0].y_e, rep.max_ratio, tr.rows.size())};
}

Verdict c10() {
  const GridPtr g = make_grid(kTwoPi, kTwoPi, 64, 64);
  const InequalityLab lab = inequality_lab(LabInequality::BrezisGallouet, g, kSeed, 100, 3.0, 1.0, 1.0);
  return {lab.heldout_over_fit <= 1.05 && lab.split_violations == 0,
          fmt("C = %.4f, held-out max = %.4f (%.4f C), split violations %d", lab.fitted_constant, lab.heldout_max,
              lab.heldout_over_fit, lab.split_violations)};
}

Verdict c11() {
  auto growth = [](RegularizationKind reg, Trajectory& tr) {
    SimConfig c = desk(reg);
    c.diag_every = 10;
    c.init.v_l2 = c.init.s_l2 = 4.0;
    tr = desk_run(c);
    double m = 0.0;
    for (const auto& r : tr.rows) m = std::max(m, r.d3s_l2 / tr.rows[0].d3s_l2);
    return m;
  };
  Trajectory a, b;
  const double ga = growth(RegularizationKind::none(), a);
  const double gb = growth(RegularizationKind::diffusive(0.1), b);
  const bool a_ok = a.status == RunStatus::BlowUp || ga >= 10.0;
  const bool b_ok = completed(b) && gb <= 3.0;
  return {a_ok && b_ok, fmt("eps = 0: %s, max ||D3S||/||D3S(0)|| = %.2f; eps = 0.1: %s, max ratio %.2f",
                            to_string(a.status).c_str(), ga, to_string(b.status).c_str(), gb)};
}

Verdict c12() {
  SimConfig c = desk(RegularizationKind::diffusive(0.1));
  c.diag_every = 10;
  c.init.v_l2 = c.init.s_l2 = 0.5;
  const auto rows = galerkin_ladder(c, {16, 32, 64});
  const double q = rows[0].sup_dv / rows[1].sup_dv;
  bool ok = q >= 2.0;
  for (const auto& r : rows) ok = ok && r.status == "completed";
  return {ok, fmt("sup ||v_N - v_2N||: 16/32 %.3e, 32/64 %.3e, ratio %.2f", rows[0].sup_dv, rows[1].sup_dv, q)};
}

Verdict c13() {
  const std::string text =
      "n = 32\nregime = diffusive\nepsilon = 0.1\nt_final = 0.2\ndiag_every = 5\nseed = 1\ninit_v_l2 = 1\n";
  auto once = [&] {
    const ConfigFile cfg = parse_config_file(text);
    return diag_csv(run(cfg.sim, make_initial_state(cfg.sim.grid(), cfg.sim.init, cfg.sim.seed)));
  };
  const std::string a = once(), b = once();
  return {a == b && !a.empty(), fmt("%zu bytes, identical: %s", a.size(), a == b ? "yes" : "no")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Verdict (*)()>> criteria = {
      {"C1  energy conservation, eps = 0", c1},
      {"C2  E_I conservation, timederiv eps = 1", c2},
      {"C3  energy balance, diffusive eps in {0.1, 1}", c3},
      {"C4  corotational orthogonality", c4},
      {"C5  trace transport", c5},
      {"C6  dissipation identity", c6},
      {"C7  manufactured-solution convergence", c7},
      {"C8  small-data and horizon monitors, diffusive", c8},
      {"C9  Y_e double-exponential bound, timederiv", c9},
      {"C10 Brezis-Gallouet lab", c10},
      {"C11 D3S growth contrast, eps 0 vs 0.1", c11},
      {"C12 Galerkin ladder", c12},
      {"C13 determinism", c13},
  };
  int failures = 0;
  for (const auto& [name, f] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = f();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %-48s %s [%.1fs]\n", v.pass ? "PASS" : "FAIL", name, v.detail.c_str(), secs);
    std::fflush(stdout);
    if (!v.pass) ++failures;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures;
}
