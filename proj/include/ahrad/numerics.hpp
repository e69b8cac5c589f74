#pragma once
#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <utility>

namespace ahrad {

using Eigen::ArrayXd;
using Eigen::ArrayXcd;
using cplx = std::complex<double>;

/// Composite trapezoid with uniform step dx.
double trapz(const ArrayXd& y, double dx);
cplx trapz(const ArrayXcd& y, double dx);

/// Running trapezoid integral; out[0] = 0, out[i] = integral up to node i.
ArrayXcd cumtrapz(const ArrayXcd& y, double dx);

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, ArrayXd& nodes, ArrayXd& weights);

/// 4-point Lagrange interpolation on a uniform grid {x0 + i dx, i=0..n-1}.
/// Clamps the stencil at the ends; values outside the grid use the edge stencil.
double interp_cubic(const ArrayXd& y, double x0, double dx, double x);
cplx interp_cubic(const ArrayXcd& y, double x0, double dx, double x);

/// Same, but exact zero whenever every stencil node is exactly zero, and
/// forced zero for x below the first / above the last nonzero node. Keeps
/// compact supports sharp through resampling.
cplx interp_cubic_supported(const ArrayXcd& y, double x0, double dx, double x);

/// 4th-order centered first derivative on a uniform grid (one-sided 2nd order
/// at the two first/last nodes).
ArrayXcd deriv_uniform(const ArrayXcd& y, double dx);
ArrayXd deriv_uniform(const ArrayXd& y, double dx);

/// Cubic-interpolated lookup table for a smooth scalar function on [0, x_max].
class LookupTable {
 public:
  LookupTable() = default;
  LookupTable(std::function<double(double)> f, double x_max, int n);
  double operator()(double x) const;
  bool empty() const { return vals_.size() == 0; }

 private:
  ArrayXd vals_;
  double dx_ = 0.0;
};

/// Run fn(i) for i in [0, n) on up to `jobs` threads. jobs <= 1 runs inline.
void parallel_for(int n, int jobs, const std::function<void(int)>& fn);

}  // namespace ahrad
