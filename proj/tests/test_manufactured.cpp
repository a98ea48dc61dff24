#include <cmath>

#include "corot2d/analysis.hpp"
#include "corot2d/manufactured.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace testing;

namespace {

double vec_diff(const VectorField2& a, const VectorField2& b) {
  return std::max(coeff_diff(a.v1, b.v1), coeff_diff(a.v2, b.v2));
}

double sym_diff(const SymTensor2Field& a, const SymTensor2Field& b) {
  return std::max({coeff_diff(a.s11, b.s11), coeff_diff(a.s12, b.s12), coeff_diff(a.s22, b.s22)});
}

SimConfig forced(int n, RegularizationKind reg, double dt, double t_final) {
  SimConfig c;
  c.n1 = c.n2 = n;
  c.reg = reg;
  c.dt = dt;
  c.t_final = t_final;
  c.forcing = true;
  c.use_cfl = false;
  return c;
}

const RegularizationKind kRegimes[] = {RegularizationKind::none(), RegularizationKind::time_derivative(0.3),
                                       RegularizationKind::diffusive(0.3)};

}  // namespace

TEST_CASE("closed-form pieces match the library operators") {
  for (auto [l1, l2] : {std::pair{kTwoPi, kTwoPi}, std::pair{2.0, 3.0}}) {
    auto g = make_grid(l1, l2, 16, 24);
    auto a = trig_pieces(g);
    auto b = numerical_pieces(g, MmsFamily::Trigonometric);
    CHECK(vec_diff(a.vel, b.vel) < 1e-14);
    CHECK(vec_diff(a.adv, b.adv) < 1e-12);
    CHECK(vec_diff(a.div_sigma, b.div_sigma) < 1e-13);
    CHECK(sym_diff(a.sigma, b.sigma) < 1e-14);
    CHECK(sym_diff(a.transport, b.transport) < 1e-12);
    CHECK(sym_diff(a.sym_grad_vel, b.sym_grad_vel) < 1e-13);
    CHECK(sym_diff(a.lap_sigma, b.lap_sigma) < 1e-12);
  }
}

TEST_CASE("exact fields satisfy the forced equations") {
  // the tendency at the exact state must equal (g' V, h' Sigma)
  auto g = make_grid(kTwoPi, kTwoPi, 16, 16);
  MmsProfile prof;
  prof.omega = 3.0;
  auto p = trig_pieces(g);
  for (const auto& reg : kRegimes) {
    ManufacturedSolution mms(g, reg, MmsFamily::Trigonometric, prof);
    for (double t : {0.0, 0.37, 1.1}) {
      State s = State::zeros(g);
      s.v.axpy(prof.g(t), p.vel);
      s.s.axpy(prof.h(t), p.sigma);
      s.t = t;
      const auto f = mms.at(t);
      auto k = tendency(s, reg, {.include_diffusion = true}, &f);
      VectorField2 dv = VectorField2::zeros(g);
      dv.axpy(prof.dg(t), p.vel);
      SymTensor2Field ds = SymTensor2Field::zeros(g);
      ds.axpy(prof.dh(t), p.sigma);
      CHECK(vec_diff(k.dv, dv) < 1e-13);
      CHECK(sym_diff(k.ds, ds) < 1e-13);
    }
  }
}

TEST_CASE("smooth family is consistent on a fine grid") {
  auto g = make_grid(kTwoPi, kTwoPi, 64, 64);
  auto p = numerical_pieces(g, MmsFamily::Smooth);
  CHECK(max_abs_padded(divergence(p.vel)) < 1e-12);
  CHECK(max_abs_padded(p.vel.v1) <= 1.0 + 1e-12);
  CHECK(max_abs_coeff(p.sigma.trace()) == 0.0);
  MmsProfile prof;
  const auto reg = RegularizationKind::diffusive(0.1);
  ManufacturedSolution mms(g, reg, MmsFamily::Smooth, prof);
  auto s0 = mms.initial();
  auto [ev, es] = mms.error(s0);
  CHECK(ev < 1e-6);
  CHECK(es < 1e-6);
  // exact data normalised on the fine grid, so compare with the run's own copy
  const auto f = mms.at(0.0);
  auto k = tendency(s0, reg, {.include_diffusion = true}, &f);
  VectorField2 dv = VectorField2::zeros(g);
  dv.axpy(prof.dg(0.0) / prof.g(0.0), s0.v);
  SymTensor2Field ds = SymTensor2Field::zeros(g);
  ds.axpy(prof.dh(0.0) / prof.h(0.0), s0.s);
  CHECK(vec_diff(k.dv, dv) < 1e-10);
  CHECK(sym_diff(k.ds, ds) < 1e-10);
}

TEST_CASE("zero profile gives zero error") {
  auto g = make_grid(kTwoPi, kTwoPi, 16, 16);
  MmsProfile prof;
  prof.amp_v = prof.amp_s = 0.0;
  for (const auto& reg : kRegimes) {
    ManufacturedSolution mms(g, reg, MmsFamily::Trigonometric, prof);
    auto tr = run(forced(16, reg, 0.01, 0.1), mms.initial(), &mms, {.keep_states = true});
    auto [ev, es] = mms.error(tr.states.back());
    CHECK(ev == 0.0);
    CHECK(es == 0.0);
  }
}

TEST_CASE("manufactured run needs forcing") {
  SimConfig c = forced(16, RegularizationKind::none(), 0.01, 0.1);
  c.forcing = false;
  CHECK_THROWS_AS(manufactured_run(c), ConfigError);
}

TEST_CASE("default ladder") {
  SimConfig c = forced(32, RegularizationKind::none(), 1e-3, 1.0);
  auto l = default_ladder(c);
  CHECK(l.n_values == std::vector<int>{16, 32, 64});
  CHECK(l.dt_values == std::vector<double>{2e-3, 1e-3, 5e-4});
}

TEST_CASE("small convergence ladder") {
  for (const auto& reg : kRegimes) {
    SimConfig c = forced(16, reg, 0.01, 0.4);
    MmsLadder l;
    l.n_values = {8, 16, 32};
    l.space_dt = 2e-3;
    l.space_t_final = 0.02;
    l.dt_values = {0.02, 0.01, 0.005};
    l.profile.omega = 5.0;
    auto rows = manufactured_run(c, l);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0].ladder == "space");
    CHECK(rows[0].family == MmsFamily::Smooth);
    CHECK(rows[1].err_v < rows[0].err_v);
    CHECK(rows[2].err_s < rows[1].err_s);
    CHECK(rows[3].ladder == "time");
    CHECK(rows[3].order_v == 0.0);
    for (int i = 4; i < 6; ++i) {
      CHECK(rows[i].order_v > 3.8);
      CHECK(rows[i].order_s > 3.8);
      CHECK(rows[i].order_v < 4.3);
    }
  }
}

TEST_CASE("dual norm of a manufactured run stays below the bound") {
  auto g = make_grid(kTwoPi, kTwoPi, 16, 16);
  MmsProfile prof;
  prof.omega = 5.0;
  for (const auto& reg : kRegimes) {
    ManufacturedSolution mms(g, reg, MmsFamily::Trigonometric, prof);
    auto c = forced(16, reg, 0.01, 0.5);
    c.diag_every = 5;
    auto tr = run(c, mms.initial(), &mms, {.keep_states = true});
    auto d = dual_norm_estimate(tr);
    CHECK(d.finite_difference > 0.0);
    CHECK(d.finite_difference <= d.a_priori_bound);
  }
}
