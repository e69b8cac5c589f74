#pragma once
#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "ahrad/metric.hpp"
#include "ahrad/numerics.hpp"

namespace ahrad {

/// Uniform grid x0 + i*dx, i = 0..n-1, with x0 > 0.
struct XGrid {
  double x0 = 0.0;
  double dx = 0.0;
  int n = 0;
  double x(int i) const { return x0 + i * dx; }
  double x_last() const { return x(n - 1); }
};

/// Discretization of the characteristic strip and of the boundary s-line.
/// delta is the characteristic step in x', t'; the march extends to
/// t'_end = max(sqrt(x_max), exp(s_max/2)) and is bounded by the Dirichlet
/// cap hyperbola x' t' = x_max once t' passes sqrt(x_max).
struct GridSpec {
  double delta = 2e-3;
  int K = 0;             // highest retained boundary Fourier mode
  double s_min = -4.0;
  double ds = 5e-3;
  int n_s = 0;           // number of s samples; 0 => derive from s_max
  double s_max = 0.0;    // used only when n_s == 0

  double s_hi() const { return n_s > 0 ? s_min + (n_s - 1) * ds : s_max; }
  int ns() const {
    return n_s > 0 ? n_s : static_cast<int>((s_max - s_min) / ds + 1.5);
  }
  double t_end(double x_max) const;
  void validate(const WarpedMetric& m) const;
};

struct ModeData {
  ModeKey k;
  ArrayXcd f1, f2;  // samples on the shared x-grid
};

/// Initial pair (f1, f2) for the shifted wave equation, stored per boundary
/// Fourier mode. conj_symmetric marks physically real data, f_{ -k } =
/// conj(f_k); only canonical modes need solving then.
struct CauchyData {
  int bdim = 1;
  double L = 2.0 * M_PI;
  XGrid grid;
  std::vector<ModeData> modes;
  bool conj_symmetric = false;

  double x_lo = 0.0, x_hi = 0.0;  // support markers (1e-14 * max floor)
  void compute_support();
  const ModeData* find(ModeKey k) const;
  bool f1_zero() const;
  bool f2_zero() const;
  cplx f1_at(const ModeData& md, double x) const;
  cplx f2_at(const ModeData& md, double x) const;
};

/// C-infinity bump exp(1 - 1/(1-u^2)) on |u| < 1, exactly zero outside.
double smooth_bump(double x, double center, double halfwidth);

struct BumpSpec {
  double center = 0.3;
  double halfwidth = 0.05;
  cplx amp = 1.0;
  double chirp = 0.0;  // optional phase e^{i chirp (x - center)}
};

/// Builds one mode's samples as a superposition of bumps.
ArrayXcd sample_bumps(const XGrid& g, const std::vector<BumpSpec>& bumps);

/// Seeded random compactly supported data: `nmodes` canonical modes (k =
/// 0..K for n=1), bumps inside [lo, hi], conjugate-symmetric completion.
CauchyData random_cauchy_data(const WarpedMetric& m, const XGrid& g, int K,
                              double lo, double hi, std::uint64_t seed,
                              bool f1_too = true);

/// Energy (squared norm): 1/2 Int_X (|d f1|_g^2 - (n^2/4)|f1|^2 + |f2|^2) dvol.
/// Composite trapezoid per mode; throws QuadratureUnresolved if halving the
/// step moves the value by more than 0.1%.
double energy_norm(const WarpedMetric& m, const CauchyData& d);

/// Same quadrature without the refinement guard (used internally).
double energy_norm_unchecked(const WarpedMetric& m, const CauchyData& d);

/// Discrete Delta_g acting on data modes (used by the spectral-filter check):
/// (Delta_g f)_k = -x^2 f'' + ((n-1)x - A x^2) f' + x^2 omega_k^2 f.
CauchyData apply_laplacian(const WarpedMetric& m, const CauchyData& d);

}  // namespace ahrad
