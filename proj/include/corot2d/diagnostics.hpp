#pragma once

#include <cstdint>
#include <vector>

#include "corot2d/dynamics.hpp"
#include "corot2d/initial_data.hpp"

namespace corot2d {

/// One sampled row of every monitored functional.
struct DiagRecord {
  long step = 0;
  double t = 0.0;
  double v_l2sq = 0.0;       ///< ||v||^2
  double s_l2sq = 0.0;       ///< ||S||^2
  double grad_v_l2sq = 0.0;  ///< ||grad v||^2
  double grad_s_l2sq = 0.0;  ///< ||grad S||^2
  double lap_s_l2sq = 0.0;   ///< ||Delta S||^2
  double s_linf = 0.0;       ///< max |S| (Frobenius) on the padded grid
  double energy = 0.0;       ///< E = ||v||^2 + ||S||^2
  double energy_i = 0.0;     ///< E + eps ||grad S||^2
  double energy_ii_residual = 0.0;  ///< E + 2 eps int_0^t ||grad S||^2 - E(0)
  double dissipation_integral = 0.0;  ///< int_0^t ||grad S||^2
  double xi_integral = 0.0;  ///< integral of xi at t
  double x = 0.0;            ///< ||grad v||^2 + ||grad S||^2
  double y_e = 0.0;          ///< e + X + ||Delta S||^2
  double appendix_b = 0.0;
  double d3v_l2 = 0.0;
  double d3s_l2 = 0.0;
  double mean_s11 = 0.0, mean_s12 = 0.0, mean_s22 = 0.0;
  double max_abs_trace = 0.0;
};

/// Builds a row. `dissipation_integral` is the accumulated int ||grad S||^2 and
/// `energy0` the energy at t = 0; `forcing` (may be null) enters the xi budget.
DiagRecord make_record(const State& state, long step, const RegularizationKind& reg, const DynamicsOptions& opts,
                       const Forcing* forcing, double dissipation_integral, double energy0);

/// 1 below e, ln x above (Brezis-Gallouet's truncated logarithm).
double ln_plus(double x);

/// ||f||_inf / (1 + ||grad f|| ln+(||f||_{W22})^(1/2)).
double brezis_gallouet_ratio(const ScalarField& f);
/// ||f||_4 / (||f||_2 ||grad f||_2)^(1/2); 0 for f = 0.
double ladyzhenskaya_ratio(const ScalarField& f);
/// ||f||_inf / (||f||_2 ||f||_W22)^(1/2); 0 for f = 0.
double agmon_ratio(const ScalarField& f);

/// The coefficient sums of the low/high wavenumber split of ||f^||_1 and their
/// Cauchy-Schwarz bounds in terms of ||f||_W12 (low) and ||D^2 f|| (high).
struct FourierSplit {
  double low = 0.0;   ///< sum of |c_k| over |k| < R
  double high = 0.0;  ///< sum over |k| >= R
  double low_bound = 0.0;   ///< (sum_{|k|<R} 1/(1+|k|^2))^(1/2) (sum (1+|k|^2)|c_k|^2)^(1/2)
  double high_bound = 0.0;  ///< (sum_{|k|>=R, k!=0} |k|^-4)^(1/2) (sum |k|^4 |c_k|^2)^(1/2)
};
FourierSplit fourier_split_bound(const ScalarField& f, double radius);

struct AppendixTerm {
  double b = 0.0;    ///< 1/2 int (D^order omega) S~ : D^order S, all ordered derivative tuples summed
  double d3v = 0.0;  ///< ||D^3 v||
  double d3s = 0.0;  ///< ||D^3 S||
};
AppendixTerm appendix_monitor(const State& state, int order = 3);

/// Member `index` of a reproducible random ensemble: decay law (1+|k|)^-decay,
/// every mode of the 2/3 mask, scaled so ||f||_2 = amplitude.
ScalarField lab_field(const GridPtr& grid, std::uint64_t seed, int index, double decay, double amplitude);

struct InequalityLab {
  double fitted_constant = 0.0;  ///< max ratio over the fit ensemble
  double heldout_max = 0.0;      ///< max ratio over the held-out ensemble
  double heldout_over_fit = 0.0;
  /// Held-out fields where ||f||_inf <= low + high <= low_bound + high_bound failed.
  int split_violations = 0;
  std::vector<double> fit_ratios, heldout_ratios;
};

enum class LabInequality { BrezisGallouet, Ladyzhenskaya, Agmon };

/// Fits the constant on `count` fields and evaluates a disjoint set of `count`
/// fields from the same law. Amplitudes are spread log-uniformly over
/// [amp_min, amp_max] so the logarithm is exercised.
InequalityLab inequality_lab(LabInequality which, const GridPtr& grid, std::uint64_t seed, int count, double decay,
                             double amp_min, double amp_max);

}  // namespace corot2d
