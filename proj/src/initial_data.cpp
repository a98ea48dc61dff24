#include "corot2d/initial_data.hpp"

#include <cmath>

namespace corot2d {

namespace {

double mode_phase(std::uint64_t seed, int component, int m, int n) {
  // Canonical representative of the conjugate pair (m, n) ~ (-m, -n).
  if (m < 0 || (m == 0 && n < 0)) {
    m = -m;
    n = -n;
  }
  std::uint64_t key = seed;
  key ^= 0x632be59bd9b4e019ULL * static_cast<std::uint64_t>(component + 1);
  key ^= 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(static_cast<std::int64_t>(m) + 0x10000);
  key ^= 0xc2b2ae3d27d4eb4fULL * static_cast<std::uint64_t>(static_cast<std::int64_t>(n) + 0x20000);
  SplitMix64 rng(key);
  rng.next();
  return kTwoPi * rng.uniform();
}

void rescale(ScalarField& f, double target_sq, double current_sq) {
  if (current_sq > 0.0) f *= std::sqrt(target_sq / current_sq);
}

}  // namespace

ScalarField random_scalar(const GridPtr& grid, std::uint64_t seed, int component, const RandomFieldSpec& spec) {
  ScalarField f(grid);
  const PeriodicGrid& g = *grid;
  for (int r = 0; r < g.n2(); ++r) {
    const int n = g.mode2(r);
    for (int c = 0; c < g.nc(); ++c) {
      if (!g.retained(r, c) || g.nyquist(r, c)) continue;
      if (c == 0 && n <= 0) continue;  // set through the conjugate partner
      const double k = std::sqrt(g.ksq()[static_cast<std::size_t>(r) * g.nc() + c]);
      if (spec.kmax > 0.0 && k > spec.kmax) continue;
      const double amp = std::pow(1.0 + k, -spec.decay);
      f.set_mode(c, n, std::polar(amp, mode_phase(seed, component, c, n)));
    }
  }
  f.pin_zero_mode();
  return f;
}

VectorField2 random_solenoidal(const GridPtr& grid, std::uint64_t seed, const RandomFieldSpec& spec) {
  auto [a, b] = leray_project(random_scalar(grid, seed, 0, spec), random_scalar(grid, seed, 1, spec));
  return {std::move(a), std::move(b)};
}

SymTensor2Field random_stress(const GridPtr& grid, std::uint64_t seed, const RandomFieldSpec& spec, bool trace_free) {
  SymTensor2Field s;
  s.s11 = random_scalar(grid, seed, 2, spec);
  s.s12 = random_scalar(grid, seed, 3, spec);
  s.s22 = trace_free ? -1.0 * s.s11 : random_scalar(grid, seed, 4, spec);
  // S may carry a mean later on; only the initial draw is zero-mean.
  s.s11.unpin_zero_mode();
  s.s12.unpin_zero_mode();
  s.s22.unpin_zero_mode();
  return s;
}

InitKind parse_init_kind(const std::string& s) {
  if (s == "zero") return InitKind::Zero;
  if (s == "random") return InitKind::Random;
  if (s == "manufactured") return InitKind::Manufactured;
  throw ConfigError("unknown init '" + s + "' (expected zero, random or manufactured)");
}

std::string to_string(InitKind k) {
  switch (k) {
    case InitKind::Zero:
      return "zero";
    case InitKind::Random:
      return "random";
    case InitKind::Manufactured:
      return "manufactured";
  }
  return "unknown";
}

State make_initial_state(const GridPtr& grid, const InitSpec& spec, std::uint64_t seed) {
  State st = State::zeros(grid);
  st.v.v1.pin_zero_mode();
  st.v.v2.pin_zero_mode();
  if (spec.kind != InitKind::Random) return st;
  st.v = random_solenoidal(grid, seed, spec.spectrum);
  st.s = random_stress(grid, seed, spec.spectrum, spec.trace_free);
  st = project_state(st);

  const double v2 = seminorm_sq(st.v, 0);
  rescale(st.v.v1, spec.v_l2 * spec.v_l2, v2);
  rescale(st.v.v2, spec.v_l2 * spec.v_l2, v2);
  const double s2 = seminorm_sq(st.s, 0);
  rescale(st.s.s11, spec.s_l2 * spec.s_l2, s2);
  rescale(st.s.s12, spec.s_l2 * spec.s_l2, s2);
  rescale(st.s.s22, spec.s_l2 * spec.s_l2, s2);
  return st;
}

}  // namespace corot2d
