#include "ahrad/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

namespace ahrad {

double trapz(const ArrayXd& y, double dx) {
  if (y.size() < 2) return 0.0;
  return dx * (y.sum() - 0.5 * (y(0) + y(y.size() - 1)));
}

cplx trapz(const ArrayXcd& y, double dx) {
  if (y.size() < 2) return {0.0, 0.0};
  return dx * (y.sum() - 0.5 * (y(0) + y(y.size() - 1)));
}

ArrayXcd cumtrapz(const ArrayXcd& y, double dx) {
  ArrayXcd out(y.size());
  if (y.size() == 0) return out;
  out(0) = 0.0;
  for (Eigen::Index i = 1; i < y.size(); ++i)
    out(i) = out(i - 1) + 0.5 * dx * (y(i - 1) + y(i));
  return out;
}

void gauss_legendre(int n, ArrayXd& nodes, ArrayXd& weights) {
  nodes.resize(n);
  weights.resize(n);
  const double eps = 1e-15;
  int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      double z1 = z;
      z = z1 - p0 / pp;
      if (std::abs(z - z1) < eps) break;
    }
    nodes(i) = -z;
    nodes(n - 1 - i) = z;
    weights(i) = 2.0 / ((1.0 - z * z) * pp * pp);
    weights(n - 1 - i) = weights(i);
  }
}

namespace {

// Stencil base for 4-point Lagrange at x; returns j0 and barycentric offsets.
inline int stencil_base(double x0, double dx, Eigen::Index n, double x) {
  int j = static_cast<int>(std::floor((x - x0) / dx));
  int j0 = j - 1;
  j0 = std::max(0, std::min<int>(j0, static_cast<int>(n) - 4));
  return j0;
}

template <typename Arr>
auto interp4(const Arr& y, double x0, double dx, double x) ->
    typename Arr::Scalar {
  if (y.size() == 1) return y(0);
  if (y.size() < 4) {
    // linear fallback
    double t = (x - x0) / dx;
    int j = std::max(0, std::min<int>(static_cast<int>(std::floor(t)),
                                      static_cast<int>(y.size()) - 2));
    double u = t - j;
    return y(j) * (1.0 - u) + y(j + 1) * u;
  }
  int j0 = stencil_base(x0, dx, y.size(), x);
  double t = (x - (x0 + j0 * dx)) / dx;  // in units of dx from node j0
  double w0 = -(t - 1.0) * (t - 2.0) * (t - 3.0) / 6.0;
  double w1 = t * (t - 2.0) * (t - 3.0) / 2.0;
  double w2 = -t * (t - 1.0) * (t - 3.0) / 2.0;
  double w3 = t * (t - 1.0) * (t - 2.0) / 6.0;
  return y(j0) * w0 + y(j0 + 1) * w1 + y(j0 + 2) * w2 + y(j0 + 3) * w3;
}

}  // namespace

double interp_cubic(const ArrayXd& y, double x0, double dx, double x) {
  return interp4(y, x0, dx, x);
}

cplx interp_cubic(const ArrayXcd& y, double x0, double dx, double x) {
  return interp4(y, x0, dx, x);
}

cplx interp_cubic_supported(const ArrayXcd& y, double x0, double dx, double x) {
  Eigen::Index lo = 0, hi = y.size() - 1;
  while (lo < y.size() && y(lo) == cplx(0.0, 0.0)) ++lo;
  if (lo == y.size()) return {0.0, 0.0};
  while (hi > lo && y(hi) == cplx(0.0, 0.0)) --hi;
  if (x < x0 + lo * dx || x > x0 + hi * dx) return {0.0, 0.0};
  return interp4(y, x0, dx, x);
}

template <typename Arr>
static Arr deriv_impl(const Arr& y, double dx) {
  Eigen::Index n = y.size();
  Arr d(n);
  if (n < 5) {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == 0)
        d(i) = (y(std::min<Eigen::Index>(1, n - 1)) - y(0)) / dx;
      else if (i == n - 1)
        d(i) = (y(n - 1) - y(n - 2)) / dx;
      else
        d(i) = (y(i + 1) - y(i - 1)) / (2.0 * dx);
    }
    return d;
  }
  for (Eigen::Index i = 2; i < n - 2; ++i)
    d(i) = (-y(i + 2) + 8.0 * y(i + 1) - 8.0 * y(i - 1) + y(i - 2)) / (12.0 * dx);
  d(0) = (-3.0 * y(0) + 4.0 * y(1) - y(2)) / (2.0 * dx);
  d(1) = (y(2) - y(0)) / (2.0 * dx);
  d(n - 2) = (y(n - 1) - y(n - 3)) / (2.0 * dx);
  d(n - 1) = (3.0 * y(n - 1) - 4.0 * y(n - 2) + y(n - 3)) / (2.0 * dx);
  return d;
}

ArrayXcd deriv_uniform(const ArrayXcd& y, double dx) { return deriv_impl(y, dx); }
ArrayXd deriv_uniform(const ArrayXd& y, double dx) { return deriv_impl(y, dx); }

LookupTable::LookupTable(std::function<double(double)> f, double x_max, int n) {
  vals_.resize(n);
  dx_ = x_max / (n - 1);
  for (int i = 0; i < n; ++i) vals_(i) = f(i * dx_);
}

double LookupTable::operator()(double x) const {
  return interp4(vals_, 0.0, dx_, x);
}

void parallel_for(int n, int jobs, const std::function<void(int)>& fn) {
  if (jobs <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  jobs = std::min(jobs, n);
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  std::atomic<int> next{0};
  for (int t = 0; t < jobs; ++t)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace ahrad
