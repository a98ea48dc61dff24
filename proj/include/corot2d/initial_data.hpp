#pragma once

#include <cstdint>
#include <string>

#include "corot2d/fields.hpp"

namespace corot2d {

/// splitmix64; the only generator used for reproducible ensembles.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Spectrum of random test fields: |c_k| = (1 + |k|)^(-decay) with uniform
/// phases drawn per mode from (seed, component, m, n). The phase of a mode does
/// not depend on the grid, so the same seed on a finer grid extends the field.
struct RandomFieldSpec {
  double decay = 3.0;
  /// Radial band limit in |k|; 0 keeps every mode of the 2/3 mask.
  double kmax = 0.0;
};

/// Zero-mean, 2/3-masked real field; `component` separates independent draws.
ScalarField random_scalar(const GridPtr& grid, std::uint64_t seed, int component, const RandomFieldSpec& spec);
/// Leray projection of an independent random vector pair.
VectorField2 random_solenoidal(const GridPtr& grid, std::uint64_t seed, const RandomFieldSpec& spec);
/// Random symmetric tensor; with `trace_free` S22 = -S11.
SymTensor2Field random_stress(const GridPtr& grid, std::uint64_t seed, const RandomFieldSpec& spec, bool trace_free);

enum class InitKind { Zero, Random, Manufactured };

struct InitSpec {
  InitKind kind = InitKind::Random;
  RandomFieldSpec spectrum;
  double v_l2 = 0.1;  ///< target ||v||_2
  double s_l2 = 0.1;  ///< target ||S||_2
  bool trace_free = true;
};

InitKind parse_init_kind(const std::string& s);
std::string to_string(InitKind k);

/// Random or zero initial data, projected into the discrete space and
/// rescaled to the requested L2 norms.
State make_initial_state(const GridPtr& grid, const InitSpec& spec, std::uint64_t seed);

}  // namespace corot2d
