#pragma once
#include <cmath>
#include <string>

#include "ahrad/errors.hpp"

namespace ahrad {

enum class WarpProfile { Hyperbolic, Funnel, Bump };

WarpProfile profile_from_string(const std::string& s);
std::string profile_to_string(WarpProfile p);

struct ProfileParams {
  double a = 0.0;          // warp strength (funnel, bump)
  double x0 = 0.5;         // bump center
  double w = 0.08;         // bump width
  double cut_center = 0.0; // tanh cutoff location, 0 => 0.75 * x_max
  double cut_rate = 0.0;   // tanh cutoff steepness, 0 => 8 / x_max
};

struct ModeKey {
  int k1 = 0;
  int k2 = 0;  // unused when the boundary is a circle (n = 1)
  bool operator==(const ModeKey&) const = default;
};

// Rotationally symmetric asymptotically hyperbolic model
//   g = (dx^2 + c(x)^2 |dy|^2) / x^2  on (0, x_max] x T^n,
// flat boundary torus of period L per coordinate, Dirichlet cap at x_max.
// The normalization c(0) = 1, c'(0) = 0 fixes the conformal representative
// h0 = |dy|^2, so |h|(x) = c(x)^{2n} and A(x) = n c'(x)/c(x).
class WarpedMetric {
 public:
  WarpedMetric(WarpProfile profile, ProfileParams params, int n, double L,
               double x_max);

  int bdim() const { return n_; }
  double period() const { return L_; }
  double x_max() const { return x_max_; }
  WarpProfile profile() const { return profile_; }
  const ProfileParams& params() const { return params_; }
  double boundary_measure() const { return std::pow(L_, n_); }  // vol(T^n, h0)

  double c(double x) const;
  double dc(double x) const;
  double d2c(double x) const;

  double A(double x) const { return n_ * dc(x) / c(x); }
  double dA(double x) const {
    double cx = c(x), c1 = dc(x);
    return n_ * (d2c(x) * cx - c1 * c1) / (cx * cx);
  }
  double h_det(double x) const { return std::pow(c(x), 2 * n_); }
  double sqrt_h(double x) const { return std::pow(c(x), n_); }
  double h_quarter(double x) const { return std::pow(c(x), 0.5 * n_); }

  /// Squared torus frequency (2 pi |k| / L)^2 of mode k.
  double kappa2(ModeKey k) const {
    double q = double(k.k1) * k.k1 + (n_ == 2 ? double(k.k2) * k.k2 : 0.0);
    double f = 2.0 * M_PI / L_;
    return f * f * q;
  }

  /// Eigenvalue of the boundary Laplacian on mode k at depth x: kappa^2/c^2.
  double omega2(ModeKey k, double x) const {
    double cx = c(x);
    return kappa2(k) / (cx * cx);
  }

 private:
  WarpProfile profile_;
  ProfileParams params_;
  int n_;
  double L_;
  double x_max_;
  double sigma(double x) const;
  double dsigma(double x) const;
  double d2sigma(double x) const;
};

/// Validates parameters, checks c > 0 on a dense grid and the boundary
/// normalization, then returns the metric.
WarpedMetric build_metric(WarpProfile profile, ProfileParams params, int n,
                          double L, double x_max);
WarpedMetric build_metric(const std::string& profile, ProfileParams params,
                          int n, double L, double x_max);

/// omega_k(x)^2, the mode-k eigenvalue of the boundary Laplacian.
double mode_frequency2(const WarpedMetric& m, ModeKey k, double x);

}  // namespace ahrad
