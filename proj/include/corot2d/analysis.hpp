#pragma once

#include <optional>
#include <vector>

#include "corot2d/stepper.hpp"

namespace corot2d {

enum class Theorem { Thm1, Thm2 };

struct BoundReport {
  Theorem which = Theorem::Thm1;
  /// Thm2: smallest c >= 0 with dX/dt + eps ||Delta S||^2 <= c X^2 on the run.
  double c0_fitted = 0.0;
  /// Constant the curves were evaluated with (fitted, or the caller's if larger).
  double c0 = 0.0;
  double x0 = 0.0;
  double horizon = 0.0;     ///< 1/(c0 X(0)); infinite when c0 X(0) = 0
  bool small_data = false;  ///< X(0) < c0^(-1/2)
  double c1 = 0.0;          ///< 2 X(0)/(1 - c0 X(0)); infinite when c0 X(0) >= 1
  std::vector<double> t, monitored, curve;
  /// max monitored/curve over samples where the curve is finite.
  double max_ratio = 0.0;
  /// Thm2: max X(t)/c1.
  double max_ratio_c1 = 0.0;
  bool holds = true;
};

/// Raw sup of (dX/dt + eps ||Delta S||^2)/X^2 over samples (may be negative);
/// dX/dt by centered differences, one-sided at the ends.
double fit_c0_raw(const Trajectory& tr);

/// Thm1 needs a TimeDerivative trajectory: monitors Y_e against
/// exp(ln(Y_e(0)) exp(2t)). Thm2 needs a Diffusive trajectory: monitors X
/// against X(0)/(1 - c0 t X(0)) before the horizon and against c1 when the
/// small-data condition holds. `c0_floor` raises the fitted constant.
BoundReport theorem_bounds(const Trajectory& tr, Theorem which, std::optional<double> c0_floor = {});

struct DualNormEstimate {
  /// sqrt(sum dt * sup_phi <dv/dt, phi>^2 / ||phi||_W12^2) over the retained span.
  double finite_difference = 0.0;
  /// T^(1/2) (max ||v|| max ||grad v|| + max ||S||), i.e. the bound with C = 1.
  double a_priori_bound = 0.0;
};
/// Needs states stored at >= 2 samples.
DualNormEstimate dual_norm_estimate(const Trajectory& tr);

struct GalerkinRow {
  int n_coarse = 0, n_fine = 0;
  double sup_dv = 0.0, sup_ds = 0.0;            ///< on the coarse modes
  double sup_dv_full = 0.0, sup_ds_full = 0.0;  ///< including the fine run's extra modes
  std::string status = "completed";
};

/// Runs the data truncated to N and 2N in lockstep (fixed dt, no CFL) and
/// records the sup over diagnostic samples of the L2 differences. The data
/// come from `source` (any resolution) or are generated at 2N from cfg.init.
GalerkinRow galerkin_compare(const SimConfig& cfg, int n_coarse, const State* source = nullptr);

/// Consecutive rungs of `ns` with data generated once at the finest level.
std::vector<GalerkinRow> galerkin_ladder(const SimConfig& cfg, const std::vector<int>& ns);

}  // namespace corot2d
