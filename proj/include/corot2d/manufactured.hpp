#pragma once

#include <string>
#include <vector>

#include "corot2d/stepper.hpp"

namespace corot2d {

/// Trigonometric: v* = g(t)(sin Y, sin X), S* = h(t)[[sin X, cos Y], [cos Y, -sin X]]
/// with X = 2 pi x / L1, Y = 2 pi y / L2 (band-limited, forcing in closed form).
/// Smooth: stream function exp(a sin X + b cos Y) and an exponential stress;
/// analytic but not band-limited, so truncation error is visible.
enum class MmsFamily { Trigonometric, Smooth };

std::string to_string(MmsFamily f);

/// g(t) = amp_v (1 + sin(omega t) / 2), h(t) = amp_s (1 + cos(omega t) / 2).
struct MmsProfile {
  double amp_v = 0.5;
  double amp_s = 0.5;
  double omega = 50.0;

  double g(double t) const;
  double dg(double t) const;
  double h(double t) const;
  double dh(double t) const;
};

/// Spatial building blocks of the forcing:
/// f_v = g' V + g^2 (V.grad)V - h div Sigma,
/// f_S = h' Sigma + g h [(V.grad)Sigma + Sigma W_V - W_V Sigma] - g D(V) - eps (h' or h) Delta Sigma.
struct MmsPieces {
  VectorField2 vel, adv, div_sigma;
  SymTensor2Field sigma, transport, sym_grad_vel, lap_sigma;
};

/// Closed-form pieces of the trigonometric family.
MmsPieces trig_pieces(const GridPtr& grid);
/// Pieces of either family computed with the library's own operators on `grid`.
MmsPieces numerical_pieces(const GridPtr& grid, MmsFamily family);

class ManufacturedSolution : public Forcing {
 public:
  ManufacturedSolution(const GridPtr& grid, const RegularizationKind& reg, MmsFamily family, MmsProfile profile = {});

  ForcingTerms at(double t) const override;
  /// Exact solution projected into the run's discrete space.
  State initial() const;
  /// L2 errors (v, S) of `s` against the exact fields at s.t, including their
  /// unresolved tail.
  std::pair<double, double> error(const State& s) const;

  const GridPtr& grid() const { return grid_; }

 private:
  GridPtr grid_, fine_;
  RegularizationKind reg_;
  MmsFamily family_;
  MmsProfile p_;
  MmsPieces run_, exact_;
};

struct MmsRow {
  std::string ladder;  ///< "space" or "time"
  MmsFamily family = MmsFamily::Trigonometric;
  int n = 0;
  double dt = 0.0;
  double err_v = 0.0, err_s = 0.0;
  /// err(previous rung) / err(this rung); 0 on the first rung.
  double ratio_v = 0.0, ratio_s = 0.0;
  /// log2-style observed order for the time ladder; 0 elsewhere.
  double order_v = 0.0, order_s = 0.0;
  std::string status = "completed";
};

struct MmsLadder {
  std::vector<int> n_values;       ///< spatial ladder
  double space_dt = 1e-4;          ///< tiny dt for the spatial ladder
  double space_t_final = 0.1;
  MmsFamily space_family = MmsFamily::Smooth;
  std::vector<double> dt_values;   ///< temporal ladder, at config n
  MmsFamily time_family = MmsFamily::Trigonometric;
  MmsProfile profile;
};

/// The default ladder around a config: N in {n/2, n, 2n}, dt in {2dt, dt, dt/2}.
MmsLadder default_ladder(const SimConfig& cfg);

/// Runs both ladders; the temporal ladder integrates to cfg.t_final.
std::vector<MmsRow> manufactured_run(const SimConfig& cfg, const MmsLadder& ladder);
std::vector<MmsRow> manufactured_run(const SimConfig& cfg);

}  // namespace corot2d
