#include "ahrad/metric.hpp"

#include <cmath>

namespace ahrad {

WarpProfile profile_from_string(const std::string& s) {
  if (s == "hyperbolic") return WarpProfile::Hyperbolic;
  if (s == "funnel") return WarpProfile::Funnel;
  if (s == "bump") return WarpProfile::Bump;
  throw ConfigInvalid("unknown metric profile '" + s + "'");
}

std::string profile_to_string(WarpProfile p) {
  switch (p) {
    case WarpProfile::Hyperbolic: return "hyperbolic";
    case WarpProfile::Funnel: return "funnel";
    case WarpProfile::Bump: return "bump";
  }
  return "?";
}

WarpedMetric::WarpedMetric(WarpProfile profile, ProfileParams params, int n,
                           double L, double x_max)
    : profile_(profile), params_(params), n_(n), L_(L), x_max_(x_max) {
  if (params_.cut_center <= 0.0) params_.cut_center = 0.75 * x_max_;
  if (params_.cut_rate <= 0.0) params_.cut_rate = 8.0 / x_max_;
}

double WarpedMetric::sigma(double x) const {
  return 0.5 * (1.0 - std::tanh(params_.cut_rate * (x - params_.cut_center)));
}

double WarpedMetric::dsigma(double x) const {
  double t = std::cosh(params_.cut_rate * (x - params_.cut_center));
  return -0.5 * params_.cut_rate / (t * t);
}

double WarpedMetric::d2sigma(double x) const {
  double u = params_.cut_rate * (x - params_.cut_center);
  double r = params_.cut_rate;
  return r * r * std::tanh(u) / std::pow(std::cosh(u), 2);
}

double WarpedMetric::c(double x) const {
  switch (profile_) {
    case WarpProfile::Hyperbolic: return 1.0;
    case WarpProfile::Funnel: return 1.0 + params_.a * x * x * sigma(x);
    case WarpProfile::Bump: {
      double u = (x - params_.x0) / params_.w;
      return 1.0 + params_.a * std::exp(-u * u) * sigma(x);
    }
  }
  return 1.0;
}

double WarpedMetric::dc(double x) const {
  switch (profile_) {
    case WarpProfile::Hyperbolic: return 0.0;
    case WarpProfile::Funnel:
      return params_.a * (2.0 * x * sigma(x) + x * x * dsigma(x));
    case WarpProfile::Bump: {
      double u = (x - params_.x0) / params_.w;
      double e = std::exp(-u * u);
      return params_.a * e * (dsigma(x) - 2.0 * u / params_.w * sigma(x));
    }
  }
  return 0.0;
}

double WarpedMetric::d2c(double x) const {
  switch (profile_) {
    case WarpProfile::Hyperbolic: return 0.0;
    case WarpProfile::Funnel:
      return params_.a * (2.0 * sigma(x) + 4.0 * x * dsigma(x) +
                          x * x * d2sigma(x));
    case WarpProfile::Bump: {
      double u = (x - params_.x0) / params_.w;
      double e = std::exp(-u * u);
      double s = sigma(x), s1 = dsigma(x), s2 = d2sigma(x);
      double g1 = -2.0 * u / params_.w;       // (e)'/e
      double g2 = (4.0 * u * u - 2.0) / (params_.w * params_.w);  // (e)''/e
      return params_.a * e * (g2 * s + 2.0 * g1 * s1 + s2);
    }
  }
  return 0.0;
}

WarpedMetric build_metric(WarpProfile profile, ProfileParams params, int n,
                          double L, double x_max) {
  if (n != 1 && n != 2)
    throw PreconditionViolated("boundary dimension must be 1 or 2");
  if (L <= 0.0 || x_max <= 0.0)
    throw PreconditionViolated("L and x_max must be positive");
  WarpedMetric m(profile, params, n, L, x_max);
  const int ncheck = 4096;
  for (int i = 0; i <= ncheck; ++i) {
    double x = x_max * i / ncheck;
    if (!(m.c(x) > 0.0))
      throw NonPositiveWarp("c(x) <= 0 at x = " + std::to_string(x));
  }
  if (std::abs(m.c(0.0) - 1.0) > 1e-12)
    throw BadNormalization("|c(0) - 1| = " + std::to_string(std::abs(m.c(0.0) - 1.0)));
  if (std::abs(m.dc(0.0)) > 1e-12)
    throw BadNormalization("|c'(0)| = " + std::to_string(std::abs(m.dc(0.0))));
  return m;
}

WarpedMetric build_metric(const std::string& profile, ProfileParams params,
                          int n, double L, double x_max) {
  return build_metric(profile_from_string(profile), params, n, L, x_max);
}

double mode_frequency2(const WarpedMetric& m, ModeKey k, double x) {
  return m.omega2(k, x);
}

}  // namespace ahrad
