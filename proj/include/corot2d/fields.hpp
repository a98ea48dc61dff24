#pragma once

#include <array>
#include <functional>

#include "corot2d/spectral.hpp"

namespace corot2d {

/// A scalar field; the spectral coefficients are the primary representation
/// and physical samples are produced on demand.
using ScalarField = SpectralScalar;

struct VectorField2 {
  ScalarField v1, v2;

  static VectorField2 zeros(const GridPtr& g) { return {ScalarField(g), ScalarField(g)}; }
  const PeriodicGrid& grid() const { return v1.grid(); }
  const GridPtr& grid_ptr() const { return v1.grid_ptr(); }

  VectorField2& operator+=(const VectorField2& o);
  VectorField2& operator*=(double a);
  VectorField2& axpy(double a, const VectorField2& x);
  /// Applies `f` to each component, returning the new field.
  VectorField2 map(const std::function<ScalarField(const ScalarField&)>& f) const { return {f(v1), f(v2)}; }
};

/// Symmetric 2x2 tensor field stored as S11, S12, S22; symmetry is structural.
struct SymTensor2Field {
  ScalarField s11, s12, s22;

  static SymTensor2Field zeros(const GridPtr& g) { return {ScalarField(g), ScalarField(g), ScalarField(g)}; }
  const PeriodicGrid& grid() const { return s11.grid(); }
  const GridPtr& grid_ptr() const { return s11.grid_ptr(); }
  ScalarField trace() const { return s11 + s22; }

  SymTensor2Field& operator+=(const SymTensor2Field& o);
  SymTensor2Field& operator*=(double a);
  SymTensor2Field& axpy(double a, const SymTensor2Field& x);
  SymTensor2Field map(const std::function<ScalarField(const ScalarField&)>& f) const {
    return {f(s11), f(s12), f(s22)};
  }
};

/// Frobenius multiplicities of the stored components (S12 appears twice).
inline constexpr std::array<double, 3> kSymWeights{1.0, 2.0, 1.0};

struct State {
  VectorField2 v;
  SymTensor2Field s;
  double t = 0.0;

  static State zeros(const GridPtr& g) { return {VectorField2::zeros(g), SymTensor2Field::zeros(g), 0.0}; }
  const PeriodicGrid& grid() const { return v.grid(); }
  const GridPtr& grid_ptr() const { return v.grid_ptr(); }
};

/// D = (grad v + grad v^T)/2.
SymTensor2Field sym_grad(const VectorField2& v);
/// omega = dv1/dx2 - dv2/dx1; W = [[0, -omega], [omega, 0]]/2.
ScalarField vorticity(const VectorField2& v);
ScalarField divergence(const VectorField2& v);
/// (div S)_i = d_j S_ij.
VectorField2 divergence(const SymTensor2Field& s);

/// Projects a state into the discrete space: 2/3 mask on every component,
/// divergence-free zero-mean velocity. With `mask` false only the Nyquist
/// lines are removed.
State project_state(const State& s, bool mask = true);

struct Norms {
  double l2 = 0.0;
  double l4 = 0.0;
  double linf = 0.0;
  double h1 = 0.0;   ///< ||grad f||
  double h2 = 0.0;   ///< ||grad^2 f|| (all second derivatives)
  double w22 = 0.0;  ///< (||f||^2 + ||grad f||^2 + ||grad^2 f||^2)^(1/2)
};

/// ||grad^order f||^2 summed over all ordered partial derivatives, via |k|^(2 order).
double seminorm_sq(const ScalarField& f, int order);
double seminorm_sq(const VectorField2& v, int order);
double seminorm_sq(const SymTensor2Field& s, int order);

/// L2 and Sobolev norms spectrally; L4 and Linf from samples on the 3/2 padded grid.
Norms norms(const ScalarField& f);
Norms norms(const VectorField2& v);
Norms norms(const SymTensor2Field& s);

/// Samples of `f` on the 3/2 padded grid.
std::vector<double> padded_samples(const ScalarField& f);
double max_abs_padded(const ScalarField& f);

}  // namespace corot2d
