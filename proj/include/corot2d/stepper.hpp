#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "corot2d/diagnostics.hpp"

namespace corot2d {

/// Thrown by the stepper when the state stops being finite or exceeds the
/// configured magnitude limit.
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(const std::string& what, double t) : std::runtime_error(what), t_(t) {}
  double time() const { return t_; }

 private:
  double t_;
};

struct SimConfig {
  double l1 = kTwoPi, l2 = kTwoPi;
  int n1 = 0, n2 = 0;
  RegularizationKind reg;
  double dt = 1e-3;
  double t_final = 1.0;
  double cfl_safety = 0.5;
  /// Cap dt by the advective CFL limit; off gives a fixed step (Galerkin and
  /// convergence ladders need matching step sequences).
  bool use_cfl = true;
  bool dealias = true;
  int diag_every = 1;
  /// Manufactured-solution forcing; the run commands build it from the config.
  bool forcing = false;
  std::uint64_t seed = 0;
  /// Diffusive regime only: keep eps Delta S in the explicit right-hand side.
  bool explicit_diffusion = false;
  bool freeze_velocity = false;
  /// Steps between field snapshots; 0 disables.
  int snapshot_every = 0;
  /// Blow-up is declared when E or X exceeds this.
  double blowup_limit = 1e12;
  InitSpec init;

  /// Throws ConfigError on any inconsistent field.
  void validate() const;
  GridPtr grid() const;
  DynamicsOptions dynamics() const;
};

/// Name of the time integrator used for `cfg`, recorded in every output.
std::string stepper_identity(const SimConfig& cfg);

/// One RK4 step. Diffusive runs without explicit diffusion use the Lawson
/// integrating-factor form, so the linear part is integrated exactly.
/// If `q_increment` is given it receives the RK4 quadrature of
/// int_t^{t+dt} ||grad S||^2 over the same stages.
State rk4_step(const State& state, double dt, const RegularizationKind& reg, const DynamicsOptions& opts = {},
               const Forcing* forcing = nullptr, double* q_increment = nullptr);

/// min(dt_max, safety * min(dx / ||v1||_inf, dy / ||v2||_inf)).
double cfl_dt(const State& state, const PeriodicGrid& grid, double safety, double dt_max);

enum class RunStatus { Completed, BlowUp };
std::string to_string(RunStatus s);

struct Trajectory {
  RegularizationKind reg;
  std::string stepper;
  std::vector<DiagRecord> rows;
  /// States at the diagnostic samples, kept only when requested.
  std::vector<State> states;
  RunStatus status = RunStatus::Completed;
  double blowup_time = 0.0;
  std::string message;
};

/// Stepwise driver; `run` is a loop over it.
class Simulation {
 public:
  Simulation(SimConfig cfg, State initial, const Forcing* forcing = nullptr);

  const SimConfig& config() const { return cfg_; }
  const State& state() const { return state_; }
  long steps() const { return steps_; }
  double dissipation_integral() const { return q_; }
  bool done() const;
  /// Advances by one (CFL-capped, end-clipped) step; throws BlowUpError.
  void step();
  DiagRecord record() const;

 private:
  SimConfig cfg_;
  DynamicsOptions opts_;
  const Forcing* forcing_;
  State state_;
  long steps_ = 0;
  double q_ = 0.0;
  double energy0_ = 0.0;
};

struct RunHooks {
  bool keep_states = false;
  /// Called with every snapshot state (config.snapshot_every) including t = 0.
  std::function<void(const State&, long step)> snapshot;
};

/// Deterministic run loop: rows every diag_every steps plus the final time.
/// Blow-up is recorded in the trajectory, never thrown.
Trajectory run(const SimConfig& cfg, const State& initial, const Forcing* forcing = nullptr,
               const RunHooks& hooks = {});

}  // namespace corot2d
