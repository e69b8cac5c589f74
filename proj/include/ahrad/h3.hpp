#pragma once
#include <Eigen/Dense>
#include <functional>

#include "ahrad/numerics.hpp"

namespace ahrad {

// Exact constant-curvature reference on the upper half space
//   H^3 = {(x, y1, y2) : x > 0},  g = (dx^2 + |dy|^2)/x^2.
struct H3Point {
  double x = 1.0;
  double y1 = 0.0, y2 = 0.0;
};

using H3Func = std::function<double(double x, double y1, double y2)>;

double h3_distance(const H3Point& z, const H3Point& zp);

/// Area of the geodesic sphere of radius t: 4 pi sinh^2 t.
double sphere_area(double t);

/// Mean of f over the geodesic sphere S(z, t); product Gauss x trapezoid
/// quadrature of the stated order.  Throws QuadratureUnresolved if doubling
/// the order moves the value by > 0.5%.
double spherical_mean(const H3Func& f, double t, const H3Point& z,
                      int order = 64, bool check = true);

/// u(t, z) = sinh(t) * M(f, t, z): solves the shifted wave equation with
/// u(0) = 0, du/dt(0) = f.
double wave_solution_h3(const H3Func& f, double t, const H3Point& z,
                        int order = 64, bool check = true);

/// Horosphere integral H(s,y) = int over the Euclidean sphere of center
/// (e^s/2, y), radius e^s/2, of f with measure dsigma_e / x^2.
double horosphere_integral(const H3Func& f, double s, double y1, double y2,
                           double x_lo, double x_hi, int order = 96);

/// Forward radiation field of data (0, f): d/ds [ H(s,y) / (2 pi e^s) ],
/// by centered differencing in s.  Throws DifferencingUnresolved if halving
/// the step changes the value by > 0.5%.
double lax_phillips_field(const H3Func& f, double s, double y1, double y2,
                          double x_lo, double x_hi, int order = 96,
                          double h_s = 2e-3, bool check = false);

}  // namespace ahrad
