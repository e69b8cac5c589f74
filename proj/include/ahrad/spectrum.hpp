#pragma once
#include <vector>

#include "ahrad/metric.hpp"

namespace ahrad {

/// L^2 eigenvalues mu of Delta in (mu_lo, mu_hi) subset (0, n^2/4), by
/// shooting on each radial mode ODE: recessive Frobenius branch
/// x^{n/2 + nu}, nu = sqrt(n^2/4 - mu), matched against the Dirichlet cap.
/// An empty list certifies the model eigenvalue-free on the interval at the
/// scan resolution.
std::vector<double> find_point_spectrum(const WarpedMetric& m, int k_max,
                                        double mu_lo, double mu_hi,
                                        int scan_points = 400);

/// Shooting function whose zeros in mu are the eigenvalues (exposed for the
/// dense-scan oracle tests).
double spectrum_shoot(const WarpedMetric& m, ModeKey k, double mu);

}  // namespace ahrad
