#include "corot2d/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

namespace corot2d {

namespace {

// FFTW planning is not thread safe; execution with new-array interfaces is.
struct PlanPair {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
};

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, p] : plans_) {
      fftw_destroy_plan(p.r2c);
      fftw_destroy_plan(p.c2r);
    }
  }

  const PlanPair& get(int n1, int n2) {
    std::lock_guard lock(mu_);
    auto it = plans_.find({n1, n2});
    if (it != plans_.end()) return it->second;
    const std::size_t nreal = static_cast<std::size_t>(n1) * n2;
    const std::size_t ncplx = static_cast<std::size_t>(n1 / 2 + 1) * n2;
    double* in = fftw_alloc_real(nreal);
    fftw_complex* out = fftw_alloc_complex(ncplx);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    PlanPair p;
    p.r2c = fftw_plan_dft_r2c_2d(n2, n1, in, out, flags);
    p.c2r = fftw_plan_dft_c2r_2d(n2, n1, out, in, flags);
    fftw_free(in);
    fftw_free(out);
    return plans_.emplace(std::make_pair(n1, n2), p).first->second;
  }

 private:
  std::mutex mu_;
  std::map<std::pair<int, int>, PlanPair> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }

// Row of signed mode n on a grid with n2 rows, or -1 if not representable
// without touching the Nyquist line.
int row_of(int n, int n2) {
  if (2 * std::abs(n) >= n2) return -1;
  return n >= 0 ? n : n + n2;
}

void check_samples(const PeriodicGrid& g, std::size_t size) {
  if (size != g.physical_size()) {
    std::ostringstream os;
    os << "sample array has " << size << " entries, grid " << g.n1() << "x" << g.n2() << " needs "
       << g.physical_size();
    throw DimensionError(os.str());
  }
}

// Copies every non-Nyquist coefficient of `src` that fits into `dst` (zeroed first).
void copy_modes(const SpectralScalar& src, std::span<cplx> dst, const PeriodicGrid& dg) {
  std::fill(dst.begin(), dst.end(), cplx{});
  const PeriodicGrid& sg = src.grid();
  const int scols = std::min(sg.n1() / 2, dg.n1() / 2);
  for (int r = 0; r < sg.n2(); ++r) {
    if (r == sg.n2() / 2) continue;
    const int dr = row_of(sg.mode2(r), dg.n2());
    if (dr < 0) continue;
    for (int c = 0; c < scols; ++c) dst[static_cast<std::size_t>(dr) * dg.nc() + c] = src.at(r, c);
  }
}

}  // namespace

SpectralScalar::SpectralScalar(GridPtr grid) : grid_(std::move(grid)), c_(grid_->spectral_size()) {}

cplx SpectralScalar::mode(int m, int n) const {
  if (m < 0) return std::conj(mode(-m, -n));
  const PeriodicGrid& g = *grid_;
  if (m > g.n1() / 2 || 2 * std::abs(n) > g.n2() || n == g.n2() / 2) return {};
  const int r = n >= 0 ? n : n + g.n2();
  return at(r, m);
}

void SpectralScalar::set_mode(int m, int n, cplx value) {
  if (m < 0) {
    set_mode(-m, -n, std::conj(value));
    return;
  }
  const PeriodicGrid& g = *grid_;
  if (m > g.n1() / 2 || 2 * std::abs(n) > g.n2() || n == g.n2() / 2) {
    throw DimensionError("mode index outside the grid");
  }
  const int r = n >= 0 ? n : n + g.n2();
  if (m == 0 || m == g.n1() / 2) {
    const int rc = n == 0 ? 0 : (-n >= 0 ? -n : -n + g.n2());
    if (rc == r) {
      at(r, m) = cplx(value.real(), 0.0);
      return;
    }
    at(rc, m) = std::conj(value);
  }
  at(r, m) = value;
}

void SpectralScalar::pin_zero_mode() {
  pinned_ = true;
  c_[0] = 0.0;
}

std::vector<double> SpectralScalar::physical() const { return inverse(*this); }

SpectralScalar& SpectralScalar::operator+=(const SpectralScalar& o) {
  require_same_grid(*this, o, "operator+=");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

SpectralScalar& SpectralScalar::operator-=(const SpectralScalar& o) {
  require_same_grid(*this, o, "operator-=");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

SpectralScalar& SpectralScalar::operator*=(double a) {
  for (auto& x : c_) x *= a;
  return *this;
}

SpectralScalar& SpectralScalar::axpy(double a, const SpectralScalar& x) {
  require_same_grid(*this, x, "axpy");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += a * x.c_[i];
  return *this;
}

SpectralScalar operator+(SpectralScalar a, const SpectralScalar& b) { return a += b; }
SpectralScalar operator-(SpectralScalar a, const SpectralScalar& b) { return a -= b; }
SpectralScalar operator*(double s, SpectralScalar a) { return a *= s; }

void require_same_grid(const SpectralScalar& a, const SpectralScalar& b, const char* what) {
  if (a.empty() || b.empty() || !(a.grid_ptr() == b.grid_ptr() || a.grid().same_shape(b.grid()))) {
    throw DimensionError(std::string(what) + ": fields live on different grids");
  }
}

GridPtr product_grid(const PeriodicGrid& g, bool dealias) {
  static std::mutex mu;
  static std::map<std::tuple<double, double, int, int>, GridPtr> cache;
  int m1 = g.n1(), m2 = g.n2();
  if (dealias) {
    // 3N/2 keeps every quadratic product of 2/3-masked fields alias free.
    m1 = 3 * g.n1() / 2;
    m2 = 3 * g.n2() / 2;
    m1 += m1 % 2;
    m2 += m2 % 2;
  }
  std::lock_guard lock(mu);
  auto key = std::make_tuple(g.l1(), g.l2(), m1, m2);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  return cache.emplace(key, make_grid(g.l1(), g.l2(), m1, m2)).first->second;
}

SpectralScalar forward(const GridPtr& grid, std::span<const double> samples) {
  check_samples(*grid, samples.size());
  SpectralScalar out(grid);
  const PlanPair& p = plan_cache().get(grid->n1(), grid->n2());
  std::vector<double> in(samples.begin(), samples.end());
  auto c = out.coeffs();
  fftw_execute_dft_r2c(p.r2c, in.data(), as_fftw(c.data()));
  const double scale = 1.0 / static_cast<double>(grid->physical_size());
  for (auto& x : c) x *= scale;
  return out;
}

std::vector<double> inverse(const SpectralScalar& f) { return inverse_on(f, f.grid()); }

std::vector<double> inverse_on(const SpectralScalar& f, const PeriodicGrid& target) {
  std::vector<cplx> work(target.spectral_size());
  if (&target == &f.grid() || target.same_shape(f.grid())) {
    auto src = f.coeffs();
    std::copy(src.begin(), src.end(), work.begin());
  } else {
    copy_modes(f, work, target);
  }
  std::vector<double> out(target.physical_size());
  const PlanPair& p = plan_cache().get(target.n1(), target.n2());
  fftw_execute_dft_c2r(p.c2r, as_fftw(work.data()), out.data());
  return out;
}

SpectralScalar forward_truncated(const PeriodicGrid& source, std::span<const double> samples,
                                 const GridPtr& target, bool mask) {
  check_samples(source, samples.size());
  std::vector<cplx> full(source.spectral_size());
  std::vector<double> in(samples.begin(), samples.end());
  const PlanPair& p = plan_cache().get(source.n1(), source.n2());
  fftw_execute_dft_r2c(p.r2c, in.data(), as_fftw(full.data()));
  const double scale = 1.0 / static_cast<double>(source.physical_size());

  SpectralScalar out(target);
  const PeriodicGrid& tg = *target;
  const int cols = std::min(tg.n1() / 2, source.n1() / 2);
  for (int r = 0; r < tg.n2(); ++r) {
    if (r == tg.n2() / 2) continue;
    const int sr = row_of(tg.mode2(r), source.n2());
    if (sr < 0) continue;
    for (int c = 0; c < cols; ++c) {
      if (mask && !tg.retained(r, c)) continue;
      out.at(r, c) = full[static_cast<std::size_t>(sr) * source.nc() + c] * scale;
    }
  }
  return out;
}

SpectralScalar resample(const SpectralScalar& f, const GridPtr& target) {
  SpectralScalar out(target);
  copy_modes(f, out.coeffs(), *target);
  if (f.zero_mode_pinned()) out.pin_zero_mode();
  return out;
}

SpectralScalar spectral_derivative(const SpectralScalar& f, int axis, int order) {
  if (axis != 1 && axis != 2) throw std::invalid_argument("spectral_derivative: axis must be 1 or 2");
  if (order < 1) throw std::invalid_argument("spectral_derivative: order must be >= 1");
  SpectralScalar out = f;
  const PeriodicGrid& g = f.grid();
  const cplx iu(0.0, 1.0);
  for (int r = 0; r < g.n2(); ++r) {
    for (int c = 0; c < g.nc(); ++c) {
      if (g.nyquist(r, c)) {
        out.at(r, c) = 0.0;
        continue;
      }
      const double k = axis == 1 ? g.k1()[c] : g.k2()[r];
      cplx factor = 1.0;
      for (int o = 0; o < order; ++o) factor *= iu * k;
      out.at(r, c) *= factor;
    }
  }
  return out;
}

SpectralScalar dealias(const SpectralScalar& f) {
  SpectralScalar out = f;
  const PeriodicGrid& g = f.grid();
  for (int r = 0; r < g.n2(); ++r)
    for (int c = 0; c < g.nc(); ++c)
      if (!g.retained(r, c) || g.nyquist(r, c)) out.at(r, c) = 0.0;
  return out;
}

SpectralScalar laplacian(const SpectralScalar& f) {
  SpectralScalar out = f;
  const auto& ksq = f.grid().ksq();
  auto c = out.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) c[i] *= -ksq[i];
  return out;
}

std::pair<SpectralScalar, SpectralScalar> leray_project(const SpectralScalar& u1, const SpectralScalar& u2) {
  require_same_grid(u1, u2, "leray_project");
  SpectralScalar p1 = u1, p2 = u2;
  const PeriodicGrid& g = u1.grid();
  for (int r = 0; r < g.n2(); ++r) {
    const double ky = g.k2()[r];
    for (int c = 0; c < g.nc(); ++c) {
      const double kx = g.k1()[c];
      const double k2 = kx * kx + ky * ky;
      if (k2 == 0.0) continue;
      const cplx a = u1.at(r, c), b = u2.at(r, c);
      const cplx kdotu = (kx * a + ky * b) / k2;
      p1.at(r, c) = a - kx * kdotu;
      p2.at(r, c) = b - ky * kdotu;
    }
  }
  p1.pin_zero_mode();
  p2.pin_zero_mode();
  return {std::move(p1), std::move(p2)};
}

SpectralScalar mass_solve(const SpectralScalar& f, double eps) {
  if (!(eps >= 0.0)) throw std::invalid_argument("mass_solve: eps must be non-negative");
  SpectralScalar out = f;
  if (eps == 0.0) return out;
  const auto& ksq = f.grid().ksq();
  auto c = out.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) c[i] /= 1.0 + eps * ksq[i];
  return out;
}

SpectralScalar heat_factor(const SpectralScalar& f, double eps, double dt) {
  if (!(eps >= 0.0) || !(dt >= 0.0)) throw std::invalid_argument("heat_factor: eps and dt must be non-negative");
  SpectralScalar out = f;
  if (eps == 0.0 || dt == 0.0) return out;
  const auto& ksq = f.grid().ksq();
  auto c = out.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) c[i] *= std::exp(-eps * ksq[i] * dt);
  return out;
}

double inner_weighted(const SpectralScalar& a, const SpectralScalar& b, int p) {
  require_same_grid(a, b, "inner");
  const PeriodicGrid& g = a.grid();
  const auto& ksq = g.ksq();
  double sum = 0.0;
  for (int r = 0; r < g.n2(); ++r) {
    for (int c = 0; c < g.nc(); ++c) {
      const std::size_t i = static_cast<std::size_t>(r) * g.nc() + c;
      const cplx x = a.coeffs()[i], y = b.coeffs()[i];
      double term = x.real() * y.real() + x.imag() * y.imag();
      for (int q = 0; q < p; ++q) term *= ksq[i];
      sum += g.weight(c) * term;
    }
  }
  return g.area() * sum;
}

double inner(const SpectralScalar& a, const SpectralScalar& b) { return inner_weighted(a, b, 0); }

double coeff_l1(const SpectralScalar& f) {
  const PeriodicGrid& g = f.grid();
  double sum = 0.0;
  for (int r = 0; r < g.n2(); ++r)
    for (int c = 0; c < g.nc(); ++c) sum += g.weight(c) * std::abs(f.at(r, c));
  return sum;
}

double max_abs_coeff(const SpectralScalar& f) {
  double m = 0.0;
  for (const auto& x : f.coeffs()) m = std::max(m, std::abs(x));
  return m;
}

double quadrature_l2sq(const PeriodicGrid& g, std::span<const double> samples) {
  check_samples(g, samples.size());
  double sum = 0.0;
  for (double x : samples) sum += x * x;
  return sum * g.area() / static_cast<double>(g.physical_size());
}

}  // namespace corot2d
