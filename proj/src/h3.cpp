#include "ahrad/h3.hpp"

#include <cmath>

#include "ahrad/errors.hpp"

namespace ahrad {

double h3_distance(const H3Point& z, const H3Point& zp) {
  if (z.x <= 0.0 || zp.x <= 0.0)
    throw PreconditionViolated("h3_distance requires positive heights");
  double dy2 = (z.y1 - zp.y1) * (z.y1 - zp.y1) + (z.y2 - zp.y2) * (z.y2 - zp.y2);
  double arg = (z.x * z.x + zp.x * zp.x + dy2) / (2.0 * z.x * zp.x);
  return std::acosh(std::max(1.0, arg));
}

double sphere_area(double t) {
  double sh = std::sinh(t);
  return 4.0 * M_PI * sh * sh;
}

namespace {

// Integral of f over the geodesic sphere S(z,t) with the induced hyperbolic
// measure dsigma_e / x^2.  Euclidean center (x cosh t, y), radius x sinh t.
double sphere_integral(const H3Func& f, double t, const H3Point& z, int order) {
  double b = z.x * std::cosh(t);
  double rho = z.x * std::sinh(t);
  ArrayXd gu, gw;
  gauss_legendre(order, gu, gw);
  int nphi = std::max(8, order);
  double total = 0.0;
  for (int iu = 0; iu < order; ++iu) {
    double u = gu(iu);
    double xs = b + rho * u;
    double r = rho * std::sqrt(std::max(0.0, 1.0 - u * u));
    double ring = 0.0;
    for (int ip = 0; ip < nphi; ++ip) {
      double phi = 2.0 * M_PI * ip / nphi;
      ring += f(xs, z.y1 + r * std::cos(phi), z.y2 + r * std::sin(phi));
    }
    ring *= 2.0 * M_PI / nphi;
    total += gw(iu) * ring / (xs * xs);
  }
  return rho * rho * total;
}

}  // namespace

double spherical_mean(const H3Func& f, double t, const H3Point& z, int order,
                      bool check) {
  if (t <= 0.0) throw PreconditionViolated("spherical_mean needs t > 0");
  double v = sphere_integral(f, t, z, order) / sphere_area(t);
  if (check) {
    double v2 = sphere_integral(f, t, z, 2 * order) / sphere_area(t);
    double scale = std::max({std::abs(v), std::abs(v2), 1e-300});
    if (std::abs(v - v2) > 5e-3 * scale)
      throw QuadratureUnresolved("spherical mean moved by " +
                                 std::to_string(std::abs(v - v2) / scale));
    return v2;
  }
  return v;
}

double wave_solution_h3(const H3Func& f, double t, const H3Point& z, int order,
                        bool check) {
  return std::sinh(t) * spherical_mean(f, t, z, order, check);
}

double horosphere_integral(const H3Func& f, double s, double y1, double y2,
                           double x_lo, double x_hi, int order) {
  double a = 0.5 * std::exp(s);  // center height = radius
  double top = std::min(2.0 * a, x_hi);
  if (top <= x_lo) return 0.0;
  ArrayXd gu, gw;
  gauss_legendre(order, gu, gw);
  int nphi = std::max(12, order);
  double total = 0.0;
  for (int iu = 0; iu < order; ++iu) {
    // x-substitution keeps the nodes inside the support band
    double x = 0.5 * (top + x_lo) + 0.5 * (top - x_lo) * gu(iu);
    double r2 = x * (2.0 * a - x);
    double r = std::sqrt(std::max(0.0, r2));
    double ring = 0.0;
    for (int ip = 0; ip < nphi; ++ip) {
      double phi = 2.0 * M_PI * ip / nphi;
      ring += f(x, y1 + r * std::cos(phi), y2 + r * std::sin(phi));
    }
    ring *= 2.0 * M_PI / nphi;
    total += gw(iu) * ring / (x * x);
  }
  return a * 0.5 * (top - x_lo) * total;
}

double lax_phillips_field(const H3Func& f, double s, double y1, double y2,
                          double x_lo, double x_hi, int order, double h_s,
                          bool check) {
  auto g = [&](double ss) {
    return horosphere_integral(f, ss, y1, y2, x_lo, x_hi, order) /
           (2.0 * M_PI * std::exp(ss));
  };
  auto diff = [&](double h) { return (g(s + h) - g(s - h)) / (2.0 * h); };
  double v = diff(h_s);
  if (check) {
    double v2 = diff(0.5 * h_s);
    double scale = std::max({std::abs(v), std::abs(v2), 1e-300});
    if (std::abs(v - v2) > 5e-3 * scale)
      throw DifferencingUnresolved("d/ds moved by " +
                                   std::to_string(std::abs(v - v2) / scale));
    return v2;
  }
  return v;
}

}  // namespace ahrad
