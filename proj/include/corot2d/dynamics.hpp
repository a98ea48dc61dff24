#pragma once

#include <string>
#include <utility>

#include "corot2d/fields.hpp"

namespace corot2d {

/// Which stress equation is solved: the elastic system, the -eps Delta dS/dt
/// regularisation, or the -eps Delta S regularisation.
struct RegularizationKind {
  enum class Type { None, TimeDerivative, Diffusive };

  Type type = Type::None;
  double eps = 0.0;

  static RegularizationKind none() { return {}; }
  static RegularizationKind time_derivative(double eps);
  static RegularizationKind diffusive(double eps);

  bool is_none() const { return type == Type::None; }
  bool is_time_derivative() const { return type == Type::TimeDerivative; }
  bool is_diffusive() const { return type == Type::Diffusive; }
  /// "none", "timederiv" or "diffusive".
  std::string name() const;
  /// Throws ConfigError unless eps > 0 for the regularised kinds and eps == 0 otherwise.
  void validate() const;
};

RegularizationKind parse_regime(const std::string& name, double eps);

struct DynamicsOptions {
  bool dealias = true;
  /// Keep eps Delta S inside stress_rhs (explicit treatment) instead of
  /// leaving it to the integrating factor.
  bool include_diffusion = false;
  /// Hold v fixed: dv/dt = 0, the stress still sees the frozen v.
  bool freeze_velocity = false;
};

struct Tendency {
  VectorField2 dv;      ///< Leray projected
  SymTensor2Field ds;
};

/// Body forces added to the momentum and (before any mass solve) stress equations.
struct ForcingTerms {
  VectorField2 fv;
  SymTensor2Field fs;
};

class Forcing {
 public:
  virtual ~Forcing() = default;
  virtual ForcingTerms at(double t) const = 0;
};

/// Symmetric 2x2 matrix value.
struct Sym2 {
  double a11 = 0.0, a12 = 0.0, a22 = 0.0;
};

/// SW - WS at a point in the closed form omega/2 * [[2 S12, S22 - S11], [S22 - S11, -2 S12]].
constexpr Sym2 corotational_pointwise(const Sym2& s, double omega) {
  const double h = 0.5 * omega;
  return {h * 2.0 * s.a12, h * (s.a22 - s.a11), -h * 2.0 * s.a12};
}

/// Full-contraction A:B for symmetric matrices.
constexpr double contract(const Sym2& a, const Sym2& b) {
  return a.a11 * b.a11 + 2.0 * a.a12 * b.a12 + a.a22 * b.a22;
}

/// SW - WS with W built from v; products on the padded grid, result truncated.
SymTensor2Field corotational(const SymTensor2Field& s, const VectorField2& v, bool dealias = true);
/// (v . grad) v
VectorField2 advect_velocity(const VectorField2& v, bool dealias = true);
/// (v . grad) S
SymTensor2Field advect_stress(const VectorField2& v, const SymTensor2Field& s, bool dealias = true);

/// Quadratic terms of one tendency evaluation: (v.grad)v and (v.grad)S + SW - WS.
struct NonlinearTerms {
  VectorField2 adv_v;
  SymTensor2Field stress;
};
NonlinearTerms nonlinear_terms(const State& state, bool dealias = true);

/// LerayProject[-(v.grad)v + div S]; pressure is never formed.
VectorField2 momentum_rhs(const State& state, const DynamicsOptions& opts = {});
/// -(v.grad)S - (SW - WS) + D, with the regime's treatment of the eps term.
SymTensor2Field stress_rhs(const State& state, const RegularizationKind& reg, const DynamicsOptions& opts = {});
/// Both right-hand sides from one evaluation of the quadratic terms.
Tendency tendency(const State& state, const RegularizationKind& reg, const DynamicsOptions& opts = {},
                  const ForcingTerms* forcing = nullptr);

struct Dissipation {
  ScalarField xi;       ///< pointwise S:(D - S' - SW + WS), S' the material derivative
  double integral = 0;  ///< integral over the cell
};

/// `tendency` must carry the complete dS/dt (including eps Delta S for the
/// diffusive regime).
Dissipation dissipation_rate(const State& state, const Tendency& tendency, bool dealias = true);

/// max over padded grid points of |(SW - WS):S| / (|SW - WS| |S|).
double orthogonality_residual(const State& state);

/// (integral of div S . v, -integral of S:D).
std::pair<double, double> energy_exchange(const State& state);
/// integral of grad((v.grad)v) : grad v.
double velocity_gradient_inertia(const VectorField2& v);
/// integral of grad((v.grad)S) : grad S computed spectrally, and the pointwise
/// form integral of dv_k/dx_l dS_ij/dx_k dS_ij/dx_l.
std::pair<double, double> advection_identity(const VectorField2& v, const SymTensor2Field& s);

}  // namespace corot2d
