#pragma once
#include <optional>
#include <utility>
#include <vector>

#include "ahrad/data.hpp"
#include "ahrad/metric.hpp"
#include "ahrad/numerics.hpp"

namespace ahrad {

// One boundary-Fourier-mode characteristic problem on the strip
// {0 <= x' <= t', x' t' <= x_max}, in the conjugated unknown
// W = |h|^{1/4}(x't') V.  The mode equation is
//   d2W/dx'dt' = (G - C) W,   G(x',t') = x't' omega_k^2(x't'),
//   C(m) = ((n-1)/2) A(m) - (m/2) A'(m) - (m/4) A(m)^2,
// both functions of the product m = x' t' only.
struct ModeProblem {
  const WarpedMetric* metric = nullptr;
  int n = 1;
  double kappa2 = 0.0;
  double delta = 0.0;
  double x_max = 0.0;
  LookupTable ktab;  // K(m) = G/m'... tabulated (G - C) as a function of m

  double C_of(double m) const {
    const WarpedMetric& g = *metric;
    double Am = g.A(m);
    return 0.5 * (n - 1) * Am - 0.5 * m * g.dA(m) - 0.25 * m * Am * Am;
  }
  double G_of(double m) const {
    double cm = metric->c(m);
    return m * kappa2 / (cm * cm);
  }
  double K_exact(double m) const { return G_of(m) - C_of(m); }
  double K(double m) const { return ktab.empty() ? K_exact(m) : ktab(m); }
};

ModeProblem assemble_problem(const WarpedMetric& m, ModeKey k,
                             const GridSpec& grid);

enum class Parity { Odd, Even };

/// Goursat data on the diagonal t' = x', held on the half-step grid
/// sigma = m * delta/2 so that both node and cell-midpoint values exist.
struct DiagonalData {
  Parity parity = Parity::Odd;
  double delta = 0.0;
  ArrayXcd w_half;   // W(sigma, sigma)
  ArrayXcd wx_half;  // dW/dx' on the diagonal
  int n_half() const { return static_cast<int>(w_half.size()); }
};

/// Converts Cauchy data for mode k into W-level Goursat data of the given
/// parity: (0, f2) is odd, (f1, 0) is even.
DiagonalData diagonal_data(const WarpedMetric& m, const CauchyData& d,
                           ModeKey k, const GridSpec& grid, Parity parity);

/// Triangular field W[i][j] (i = x' index, j = t' index, i <= j), rows
/// clipped by the cap hyperbola.  Entries across the diagonal follow the
/// parity reflection W(t',x') = +/- W(x',t').
struct ModeField {
  double delta = 0.0;
  double x_max = 0.0;
  Parity parity = Parity::Odd;
  std::vector<ArrayXcd> rows;  // rows[j](i)
  double max_abs = 0.0;

  int nrows() const { return static_cast<int>(rows.size()); }
  int rowlen(int j) const { return static_cast<int>(rows[j].size()); }
  cplx at(int i, int j) const;
};

struct ForwardResult {
  ArrayXcd trace;  // W(0, j), j = 0 .. n_rows-1
  double max_abs = 0.0;
  std::optional<ModeField> field;
};

/// Marches the Goursat problem outward from the diagonal.  t_end is the
/// extent in t'; rows past sqrt(x_max) are clipped by the Dirichlet cap
/// (linear-vanishing cut-cell closure on x' t' = x_max).
ForwardResult solve_forward(const ModeProblem& p, const DiagonalData& diag,
                            double t_end, bool want_full);

enum class InwardClosure { Odd, Even, Full };

struct InwardResult {
  // f2 read at cell midpoints sigma = (i + 1/2) delta (first-layer inverse)
  ArrayXcd f_sigma;
  // f1 read at nodes sigma = i delta (Full closure only)
  ArrayXcd f1_sigma;
  double f_offset = 0.5;  // f_sigma sample offset in units of delta
  double parity_dev = 0.0;
  double max_abs = 0.0;
  std::optional<ModeField> field;
};

/// Reconstructs the interior from the boundary row W(0, t').  Odd/Even close
/// the diagonal by parity; Full closes each row at the cap (or at the decayed
/// window edge) instead and reads both data components.
InwardResult solve_inward(const ModeProblem& p, const ArrayXcd& boundary_row,
                          InwardClosure closure, bool want_full);

/// (u_k(t,x), du_k/dt(t,x)) by bilinear interpolation on the W grid.
std::pair<cplx, cplx> sample_interior(const ModeField& f, const ModeProblem& p,
                                      double t, double x);

/// Weighted interior energy of the field (stability diagnostic).
double energy_functional(const ModeField& f, const ModeProblem& p);

/// The data-side weighted integral bounding energy_functional.
double data_functional(const ModeProblem& p, const DiagonalData& diag);

}  // namespace ahrad
