#include <cmath>
#include <limits>
#include <numbers>

#include "corot2d/analysis.hpp"
#include "corot2d/diagnostics.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace testing;
using std::numbers::e;
using std::numbers::pi;

namespace {

SimConfig config(int n, RegularizationKind reg, double dt, double t_final) {
  SimConfig c;
  c.n1 = c.n2 = n;
  c.reg = reg;
  c.dt = dt;
  c.t_final = t_final;
  return c;
}

}  // namespace

TEST_CASE("ln_plus") {
  CHECK(ln_plus(0.0) == 1.0);
  CHECK(ln_plus(e) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(ln_plus(e * e) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(ln_plus(std::nextafter(e, 0.0)) == 1.0);
  CHECK_THROWS(ln_plus(-1e-9));

  SplitMix64 rng(1);
  double prev = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const double x = prev + 0.01 * rng.uniform();
    CHECK(ln_plus(x) >= ln_plus(prev));
    CHECK(ln_plus(x) >= 1.0);
    if (x >= e) CHECK(ln_plus(x) == std::log(x));
    prev = x;
  }
}

TEST_CASE("Brezis-Gallouet ratio examples") {
  auto g = make_grid(kTwoPi, kTwoPi, 64, 64);
  auto f = field(g, [](double x, double) { return std::sin(x); });
  // ||f||_inf = 1, ||grad f|| = pi sqrt2, ||f||_W22 = pi sqrt6
  const double want = 1.0 / (1.0 + pi * std::sqrt(2.0) * std::sqrt(std::log(pi * std::sqrt(6.0))));
  CHECK(brezis_gallouet_ratio(f) == doctest::Approx(want).epsilon(1e-3));
  CHECK(brezis_gallouet_ratio(f) == doctest::Approx(0.136).epsilon(1e-2));
  CHECK(brezis_gallouet_ratio(ScalarField(g)) == 0.0);

  const double lam = 1e-3;
  CHECK(norms(lam * f).w22 < e);
  CHECK(brezis_gallouet_ratio(lam * f) == doctest::Approx(lam / (1.0 + lam * pi * std::sqrt(2.0))).epsilon(1e-3));
}

TEST_CASE("fourier split") {
  auto g = make_grid(kTwoPi, kTwoPi, 32, 32);
  auto f = lab_field(g, 5, 0, 3.0, 2.0);
  const double l1 = coeff_l1(f);
  auto zero = fourier_split_bound(f, 0.0);
  CHECK(zero.low == 0.0);
  CHECK(zero.high == doctest::Approx(l1).epsilon(1e-14));
  auto big = fourier_split_bound(f, 1e6);
  CHECK(big.high == 0.0);
  CHECK(big.low == doctest::Approx(l1).epsilon(1e-14));

  auto s = field(g, [](double x, double) { return std::sin(x); });
  auto one = fourier_split_bound(s, 2.0);
  CHECK(one.low == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(one.high < 1e-15);

  for (double r : {0.0, 1.0, 3.5, 10.0}) {
    auto sp = fourier_split_bound(f, r);
    CHECK(sp.low <= sp.low_bound * (1 + 1e-12));
    CHECK(sp.high <= sp.high_bound * (1 + 1e-12));
    CHECK(norms(f).linf <= (sp.low + sp.high) * (1 + 1e-12));
  }
  CHECK_THROWS(fourier_split_bound(f, -1.0));
}

TEST_CASE("lab fields") {
  auto g = make_grid(kTwoPi, kTwoPi, 32, 32);
  auto a = lab_field(g, 5, 3, 2.5, 0.7);
  CHECK(norms(a).l2 == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(coeff_diff(a, lab_field(g, 5, 3, 2.5, 0.7)) == 0.0);
  CHECK(coeff_diff(a, lab_field(g, 5, 4, 2.5, 0.7)) > 1e-3);
  CHECK(coeff_diff(dealias(a), a) == 0.0);
}

TEST_CASE("inequality lab") {
  auto g = make_grid(kTwoPi, kTwoPi, 32, 32);
  for (auto which : {LabInequality::BrezisGallouet, LabInequality::Ladyzhenskaya, LabInequality::Agmon}) {
    auto lab = inequality_lab(which, g, 3, 20, 3.0, 0.5, 20.0);
    CHECK(lab.fit_ratios.size() == 20);
    CHECK(lab.heldout_ratios.size() == 20);
    CHECK(lab.split_violations == 0);
    CHECK(lab.fitted_constant > 0.0);
    CHECK(lab.heldout_over_fit == doctest::Approx(lab.heldout_max / lab.fitted_constant));
    auto again = inequality_lab(which, g, 3, 20, 3.0, 0.5, 20.0);
    CHECK(again.heldout_max == lab.heldout_max);
  }
  CHECK_THROWS(inequality_lab(LabInequality::Agmon, g, 3, 0, 3.0, 1.0, 2.0));
  CHECK_THROWS(inequality_lab(LabInequality::Agmon, g, 3, 5, 3.0, 2.0, 1.0));
}

TEST_CASE("appendix monitor vanishes on trivial inputs") {
  auto g = make_grid(kTwoPi, kTwoPi, 32, 32);
  auto st = random_state(g, 4, 1.0, 1.0);
  auto phi = random_scalar(g, 8, 0, {});
  State iso{st.v, {phi, ScalarField(g), phi}, 0.0};
  for (int order = 0; order <= 3; ++order) {
    CHECK(std::abs(appendix_monitor(iso, order).b) < 1e-14);
    State still{VectorField2::zeros(g), st.s, 0.0};
    CHECK(appendix_monitor(still, order).b == 0.0);
  }
  // order 0 integrand is omega S~ : S / 2, which vanishes pointwise
  CHECK(std::abs(appendix_monitor(st, 0).b) < 1e-13);
  CHECK_THROWS(appendix_monitor(st, 4));
}

TEST_CASE("appendix monitor two-mode oracle") {
  // v = (sin y, 0): omega = cos y, d^3 omega / dy^3 = sin y.
  // S11 = 1, S12 = cos y: S~12 = S22 - S11 = -1 and d^3 S12 / dy^3 = sin y.
  // B = 1/2 int sin y * 2 (-1) sin y = -2 pi^2
  auto g = make_grid(kTwoPi, kTwoPi, 32, 32);
  State st = State::zeros(g);
  st.v.v1 = field(g, [](double, double y) { return std::sin(y); });
  st.s.s11 = field(g, [](double, double) { return 1.0; });
  st.s.s12 = field(g, [](double, double y) { return std::cos(y); });
  auto a = appendix_monitor(st, 3);
  CHECK(a.b == doctest::Approx(-2.0 * pi * pi).epsilon(1e-13));
  CHECK(a.d3v == doctest::Approx(pi * std::sqrt(2.0)).epsilon(1e-13));
  // S12 counted twice in the Frobenius norm
  CHECK(a.d3s == doctest::Approx(2.0 * pi).epsilon(1e-13));
  // order 1: omega_y = -sin y, S12_y = -sin y, B = 1/2 int (-sin y)(2)(-1)(-sin y) = -2 pi^2
  CHECK(appendix_monitor(st, 1).b == doctest::Approx(-2.0 * pi * pi).epsilon(1e-13));
  // order 2: omega_yy = -cos y, S12_yy = -cos y: same value
  CHECK(appendix_monitor(st, 2).b == doctest::Approx(-2.0 * pi * pi).epsilon(1e-13));
}

TEST_CASE("appendix monitor mixed derivatives") {
  // omega = cos(x + y) from v = (sin(x+y), -sin(x+y)); S12 = cos(x + y), S11 = 1.
  // every ordered triple gives the same product, so B = 2^3 * 1/2 int sin^2 * 2 * (-1)
  auto g = make_grid(kTwoPi, kTwoPi, 32, 32);
  State st = State::zeros(g);
  st.v.v1 = field(g, [](double x, double y) { return std::sin(x + y); });
  st.v.v2 = field(g, [](double x, double y) { return -std::sin(x + y); });
  st.s.s11 = field(g, [](double, double) { return 1.0; });
  st.s.s12 = field(g, [](double x, double y) { return std::cos(x + y); });
  // vorticity = dv1/dy - dv2/dx = 2 cos(x + y)
  CHECK(appendix_monitor(st, 3).b == doctest::Approx(-8.0 * 2.0 * 2.0 * pi * pi).epsilon(1e-13));
}

TEST_CASE("diagnostic record") {
  auto g = make_grid(kTwoPi, kTwoPi, 32, 32);
  auto st = random_state(g, 6, 0.3, 0.4);
  st.s.s11.unpin_zero_mode();
  st.s.s11.at(0, 0) = 0.25;
  const auto reg = RegularizationKind::time_derivative(0.5);
  auto r = make_record(st, 7, reg, {}, nullptr, 0.0, 1.0);
  CHECK(r.step == 7);
  CHECK(r.v_l2sq == doctest::Approx(0.09));
  CHECK(r.energy == r.v_l2sq + r.s_l2sq);
  CHECK(r.energy_i == r.energy + 0.5 * r.grad_s_l2sq);
  CHECK(r.x == r.grad_v_l2sq + r.grad_s_l2sq);
  CHECK(r.y_e >= e);
  CHECK(r.mean_s11 == 0.25);
  CHECK(r.max_abs_trace > 0.0);
  CHECK(r.energy_ii_residual == doctest::Approx(r.energy - 1.0));
  CHECK(std::isfinite(r.xi_integral));
}

TEST_CASE("theorem bounds on a zero state") {
  auto g = make_grid(kTwoPi, kTwoPi, 16, 16);
  auto z = State::zeros(g);
  auto c = config(16, RegularizationKind::diffusive(1.0), 0.01, 0.2);
  auto rep = theorem_bounds(run(c, z), Theorem::Thm2);
  CHECK(rep.holds);
  CHECK(rep.c0 == 0.0);
  CHECK(rep.x0 == 0.0);
  CHECK(rep.horizon == std::numeric_limits<double>::infinity());
  CHECK(rep.small_data);

  auto ct = config(16, RegularizationKind::time_derivative(1.0), 0.01, 0.2);
  auto r1 = theorem_bounds(run(ct, z), Theorem::Thm1);
  CHECK(r1.holds);
  CHECK(r1.monitored.front() == doctest::Approx(e));
}

TEST_CASE("theorem bounds regime mismatch") {
  auto g = make_grid(kTwoPi, kTwoPi, 16, 16);
  auto z = State::zeros(g);
  auto tr = run(config(16, RegularizationKind::none(), 0.01, 0.02), z);
  CHECK_THROWS_AS(theorem_bounds(tr, Theorem::Thm1), std::invalid_argument);
  CHECK_THROWS_AS(theorem_bounds(tr, Theorem::Thm2), std::invalid_argument);
  auto td = run(config(16, RegularizationKind::time_derivative(1.0), 0.01, 0.02), z);
  CHECK_THROWS_AS(theorem_bounds(td, Theorem::Thm2), std::invalid_argument);
}

TEST_CASE("theorem bounds on small runs") {
  auto g = make_grid(kTwoPi, kTwoPi, 16, 16);
  const auto s0 = random_state(g, 2, 0.2, 0.2);
  auto td = run(config(16, RegularizationKind::time_derivative(1.0), 0.01, 0.5), s0);
  auto r1 = theorem_bounds(td, Theorem::Thm1);
  CHECK(r1.holds);
  CHECK(r1.max_ratio <= 1.0);
  CHECK(r1.curve.size() == td.rows.size());

  auto df = run(config(16, RegularizationKind::diffusive(1.0), 0.01, 0.5), s0);
  auto r2 = theorem_bounds(df, Theorem::Thm2, 0.05);
  CHECK(r2.c0 >= 0.05);
  CHECK(r2.c1 == doctest::Approx(2.0 * r2.x0 / (1.0 - r2.c0 * r2.x0)));
  CHECK(r2.horizon == doctest::Approx(1.0 / (r2.c0 * r2.x0)));
  CHECK(r2.holds);
  CHECK(r2.max_ratio_c1 <= 1.0);
}

TEST_CASE("fitted c0 dominates the Riccati inequality") {
  // a synthetic trajectory with X = 1/(1 - t): dX/dt = X^2 exactly, eps = 0
  Trajectory tr;
  tr.reg = RegularizationKind::diffusive(1.0);
  for (int i = 0; i <= 50; ++i) {
    DiagRecord r;
    r.t = 0.01 * i;
    r.x = 1.0 / (1.0 - r.t);
    r.lap_s_l2sq = 0.0;
    tr.rows.push_back(r);
  }
  const double c = fit_c0_raw(tr);
  CHECK(c == doctest::Approx(1.0).epsilon(0.05));
  auto rep = theorem_bounds(tr, Theorem::Thm2);
  CHECK(rep.horizon == doctest::Approx(1.0 / rep.c0));
}

TEST_CASE("dual norm estimate") {
  auto g = make_grid(kTwoPi, kTwoPi, 16, 16);
  auto c = config(16, RegularizationKind::diffusive(0.5), 0.01, 0.1);
  auto z = run(c, State::zeros(g), nullptr, {.keep_states = true});
  auto dz = dual_norm_estimate(z);
  CHECK(dz.finite_difference == 0.0);
  CHECK(dz.a_priori_bound == 0.0);

  // frozen velocity: the momentum tendency is zero
  auto cf = c;
  cf.freeze_velocity = true;
  auto fz = run(cf, random_state(g, 3), nullptr, {.keep_states = true});
  CHECK(dual_norm_estimate(fz).finite_difference == 0.0);
  CHECK(dual_norm_estimate(fz).a_priori_bound > 0.0);

  CHECK_THROWS(dual_norm_estimate(run(c, State::zeros(g))));
}

TEST_CASE("galerkin compare, linear band-limited case") {
  SimConfig c = config(16, RegularizationKind::diffusive(0.2), 0.01, 0.2);
  c.freeze_velocity = true;
  c.init.spectrum.kmax = 4.0;
  c.init.v_l2 = 0.0;
  c.seed = 5;
  auto row = galerkin_compare(c, 16);
  CHECK(row.n_fine == 32);
  CHECK(row.sup_dv == 0.0);
  CHECK(row.sup_ds < 1e-14);
  CHECK(row.sup_ds_full < 1e-14);
  CHECK(row.status == "completed");
}

TEST_CASE("galerkin ladder validation") {
  SimConfig c = config(16, RegularizationKind::diffusive(0.2), 0.01, 0.02);
  CHECK_THROWS(galerkin_ladder(c, {16}));
  CHECK_THROWS(galerkin_ladder(c, {16, 48}));
  auto rows = galerkin_ladder(c, {8, 16, 32});
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].n_coarse == 8);
  CHECK(rows[1].n_coarse == 16);
  CHECK(rows[0].sup_dv > rows[1].sup_dv);
}
