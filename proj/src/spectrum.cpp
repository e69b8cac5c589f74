#include "ahrad/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "ahrad/errors.hpp"

namespace ahrad {

double spectrum_shoot(const WarpedMetric& m, ModeKey k, double mu) {
  const int n = m.bdim();
  const double kap2 = m.kappa2(k);
  double nu2 = 0.25 * n * n - mu;
  if (nu2 <= 0.0) throw PreconditionViolated("mu outside (0, n^2/4)");
  double nu = std::sqrt(nu2);

  // U'' = xA U' + (nu^2 - (n/2) xA + x^2 omega^2) U,  x = e^{-r}
  auto rhs = [&](double r, double U, double V, double& dU, double& dV) {
    double x = std::exp(-r);
    double xA = x * m.A(x);
    double cx = m.c(x);
    dU = V;
    dV = xA * V + (nu2 - 0.5 * n * xA + x * x * kap2 / (cx * cx)) * U;
  };

  const double eps0 = 1e-5;
  double r_start = -std::log(eps0);
  double r_cap = -std::log(m.x_max());
  // recessive branch x^{n/2+nu}: U = e^{-nu r}(1 + c2 x^2)
  double a1 = m.dA(0.0);
  double c2 = (kap2 - a1 * (0.5 * n + nu)) / (4.0 * (1.0 + nu));
  double x0 = eps0;
  double U = std::exp(-nu * r_start) * (1.0 + c2 * x0 * x0);
  double V = std::exp(-nu * r_start) *
             (-nu * (1.0 + c2 * x0 * x0) - 2.0 * c2 * x0 * x0);

  double h = -1e-3;
  int nstep = static_cast<int>(std::ceil((r_start - r_cap) / (-h)));
  h = -(r_start - r_cap) / nstep;
  double r = r_start;
  for (int i = 0; i < nstep; ++i) {
    double k1u, k1v, k2u, k2v, k3u, k3v, k4u, k4v;
    rhs(r, U, V, k1u, k1v);
    rhs(r + 0.5 * h, U + 0.5 * h * k1u, V + 0.5 * h * k1v, k2u, k2v);
    rhs(r + 0.5 * h, U + 0.5 * h * k2u, V + 0.5 * h * k2v, k3u, k3v);
    rhs(r + h, U + h * k3u, V + h * k3v, k4u, k4v);
    U += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
    V += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    r += h;
    // keep the magnitude tame; only the sign pattern of U at the cap matters
    double mscale = std::max(std::abs(U), std::abs(V));
    if (mscale > 1e200) {
      U /= mscale;
      V /= mscale;
    }
  }
  return U;
}

std::vector<double> find_point_spectrum(const WarpedMetric& m, int k_max,
                                        double mu_lo, double mu_hi,
                                        int scan_points) {
  const int n = m.bdim();
  double cap = 0.25 * n * n;
  if (!(mu_lo > 0.0 && mu_hi < cap && mu_lo < mu_hi))
    throw PreconditionViolated("interval must lie inside (0, n^2/4)");

  std::vector<double> roots;
  for (int k = 0; k <= k_max; ++k) {
    ModeKey key{k, 0};
    double prev_mu = mu_lo;
    double prev = spectrum_shoot(m, key, prev_mu);
    for (int i = 1; i <= scan_points; ++i) {
      double mu = mu_lo + (mu_hi - mu_lo) * i / scan_points;
      double val = spectrum_shoot(m, key, mu);
      if (prev == 0.0 || (prev < 0.0) != (val < 0.0)) {
        double a = prev_mu, b = mu, fa = prev;
        bool ok = false;
        for (int it = 0; it < 80; ++it) {
          double c = 0.5 * (a + b);
          double fc = spectrum_shoot(m, key, c);
          if (fc == 0.0 || (b - a) < 1e-12 * cap) {
            roots.push_back(c);
            ok = true;
            break;
          }
          if ((fa < 0.0) != (fc < 0.0))
            b = c;
          else {
            a = c;
            fa = fc;
          }
        }
        if (!ok)
          throw RootBracketingFailed("bisection stalled in mode " +
                                     std::to_string(k));
      }
      prev_mu = mu;
      prev = val;
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace ahrad
