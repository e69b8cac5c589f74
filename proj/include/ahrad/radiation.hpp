#pragma once
#include <vector>

#include "ahrad/data.hpp"
#include "ahrad/goursat.hpp"
#include "ahrad/metric.hpp"

namespace ahrad {

struct SGrid {
  double s0 = 0.0;
  double ds = 0.0;
  int n = 0;
  double s(int i) const { return s0 + i * ds; }
  double s_last() const { return s(n - 1); }
};

struct ModeTrace {
  ModeKey k;
  ArrayXcd F;
};

/// R_+/- f sampled per boundary mode on a uniform s grid.  The L^n boundary
/// measure is carried along so norms match the energy side.
struct RadiationField {
  int bdim = 1;
  double L = 2.0 * M_PI;
  SGrid grid;
  std::vector<ModeTrace> modes;
  bool conj_symmetric = false;
  bool backward = false;  // provenance tag

  double measure() const { return std::pow(L, bdim); }
  const ModeTrace* find(ModeKey k) const;
  double max_abs() const;
};

/// s -> -s (fields live on the reflected window afterwards).
RadiationField reflect(const RadiationField& F);

RadiationField forward_field(const WarpedMetric& m, const CauchyData& d,
                             const GridSpec& grid, int jobs = 1);

/// R_-(f1,f2)(s) = R_+(-f1,f2)(-s); returned on the reflected s window.
RadiationField backward_field(const WarpedMetric& m, const CauchyData& d,
                              const GridSpec& grid, int jobs = 1);

/// Inverts F = R_+(0,f).  Throws NotInRange when the round-trip
/// forward_field(0, f) misses F by more than rel_tol (default 20 delta^2).
CauchyData inverse_forward_field(const WarpedMetric& m,
                                 const RadiationField& F, const GridSpec& grid,
                                 const XGrid& xg, double rel_tol = 0.0,
                                 int jobs = 1);

/// Full two-component inversion F = R_+(f1,f2); no round-trip check.
CauchyData invert_field_full(const WarpedMetric& m, const RadiationField& F,
                             const GridSpec& grid, const XGrid& xg,
                             int jobs = 1);

/// (u(tau), du/dt(tau)) on the data grid.
CauchyData evolve_cauchy(const WarpedMetric& m, const CauchyData& d,
                         double tau, const GridSpec& grid);

/// Discrete convolution in s with an even window given on the same ds.
RadiationField convolve_s(const RadiationField& F, const ArrayXd& phi);

/// Normalized even mollifier supported in (-eps, eps), sampled at ds.
ArrayXd make_mollifier(double ds, double eps);

/// L^2(R x boundary) norm (not squared).
double field_norm(const RadiationField& F);

/// F(s + tau) resampled on the same grid.
RadiationField translate(const RadiationField& F, double tau);

struct FourierField {
  ArrayXd lambda;
  std::vector<ModeTrace> modes;  // ModeTrace::F holds \hat F on the grid
  const ModeTrace* find(ModeKey k) const;
};

/// Windowed trapezoid DFT, \hat F(l) = int e^{-i l s} F(s) ds over the
/// window.  Throws TailNotDecayed if |F| at the upper window edge exceeds
/// 1e-6 max|F|.
FourierField fourier_field(const RadiationField& F, double lambda_max,
                           int n_lambda, bool check_tail = true);

}  // namespace ahrad
