#pragma once
#include <vector>

#include "ahrad/radiation.hpp"

namespace ahrad {

/// Complex scattering coefficients a_k(lambda) on a lambda grid.
struct ScatteringSample {
  ModeKey k;
  ArrayXd lambda;
  ArrayXcd a;
  std::vector<bool> masked;
  std::string method;  // "dynamic" | "stationary"
  std::string probe;   // dynamic only
};

/// S = R_+ o R_-^{-1} applied to F in M^b (odd time-reversal reduction).
RadiationField scattering_apply(const WarpedMetric& m, const RadiationField& F,
                                const GridSpec& grid, const XGrid& xg,
                                double inv_tol = 0.0, int jobs = 1);

/// a_k(lambda) = \hat F_+ / \hat F_- for one probe (0, f); points with
/// |\hat F_-| below 1e-8 of its max are masked.
ScatteringSample scattering_matrix_dynamic(const WarpedMetric& m, ModeKey k,
                                           const ArrayXd& lambda,
                                           const CauchyData& probe,
                                           const GridSpec& grid, int jobs = 1);

struct StationaryResult {
  cplx a;
  double cond = 0.0;
  double eps_fit = 0.0;
};

/// Radial stationary solve: integrate the mode ODE from the Dirichlet cap
/// inward to eps_fit and match the two Frobenius branches x^{n/2 +- i
/// lambda}(1 + c2 x^2).  Returns a = beta/alpha (coefficient of x^{n/2 - i
/// lambda} over x^{n/2 + i lambda}).
StationaryResult scattering_matrix_stationary(const WarpedMetric& m, ModeKey k,
                                              double lambda,
                                              double eps_fit = 1e-3);

/// ||F - S F*|| / ||F||; small residual certifies membership in M^f.
double membership_Mf(const WarpedMetric& m, const RadiationField& F,
                     const GridSpec& grid, const XGrid& xg, int jobs = 1);
/// ||F* - S F|| / ||F||, certifies membership in M^b.
double membership_Mb(const WarpedMetric& m, const RadiationField& F,
                     const GridSpec& grid, const XGrid& xg, int jobs = 1);

/// Frobenius exponents of the radial ODE at x = 0, computed from the actual
/// coefficient functions (limits taken numerically).  Must equal n/2 +- i
/// lambda for every admissible profile.
std::pair<cplx, cplx> indicial_roots(const WarpedMetric& m, ModeKey k,
                                     double lambda);

}  // namespace ahrad
