#include "ahrad/goursat.hpp"

#include <algorithm>
#include <cmath>

#include "ahrad/errors.hpp"

namespace ahrad {

namespace {

// Interior nodes of row j.  Once the cap hyperbola x' t' = x_max clips the
// row, the last interior node is chosen so its gap to the cap lies in
// (delta/2, 3 delta/2]: the boundary-fitted last cell stays well sized.
inline int row_length(double delta, double x_max, int j) {
  if (j == 0) return 1;
  double xp_cap = x_max / (j * delta);
  int li = static_cast<int>(std::ceil(xp_cap / delta - 1.5 - 1e-12));
  return std::min(j, li) + 1;
}

inline void check_finite(double v, const char* where) {
  if (!std::isfinite(v)) throw NonFiniteField(where);
}

}  // namespace

ModeProblem assemble_problem(const WarpedMetric& m, ModeKey k,
                             const GridSpec& grid) {
  ModeProblem p;
  p.metric = &m;
  p.n = m.bdim();
  p.kappa2 = m.kappa2(k);
  p.delta = grid.delta;
  p.x_max = m.x_max();
  if (m.profile() != WarpProfile::Hyperbolic || p.kappa2 != 0.0) {
    auto f = [p](double mm) { return p.K_exact(mm); };
    p.ktab = LookupTable(f, p.x_max, 20000);
  }
  return p;
}

cplx ModeField::at(int i, int j) const {
  if (i > j) {
    cplx v = at(j, i);
    return parity == Parity::Odd ? -v : v;
  }
  if (j < 0 || j >= nrows() || i < 0 || i >= rowlen(j)) return {0.0, 0.0};
  return rows[j](i);
}

DiagonalData diagonal_data(const WarpedMetric& m, const CauchyData& d,
                           ModeKey k, const GridSpec& grid, Parity parity) {
  const double delta = grid.delta;
  bool trivial = parity == Parity::Odd ? d.f2_zero() : d.f1_zero();
  if (!trivial && d.x_lo < 16.0 * delta * delta)
    throw SupportTouchesCorner("data support reaches x = " +
                               std::to_string(d.x_lo) + " < (4 delta)^2");
  double t_diag = std::sqrt(m.x_max());
  if (!trivial && std::sqrt(d.x_hi) > t_diag - 2.0 * delta)
    throw PreconditionViolated("data support too close to the cap");

  int nh = 2 * static_cast<int>(std::floor(t_diag / delta)) + 2;
  DiagonalData out;
  out.parity = parity;
  out.delta = delta;
  out.w_half = ArrayXcd::Zero(nh);
  out.wx_half = ArrayXcd::Zero(nh);
  const ModeData* md = d.find(k);
  if (md == nullptr || trivial) return out;

  const int n = m.bdim();
  for (int q = 1; q < nh; ++q) {
    double sigma = 0.5 * q * delta;
    double x = sigma * sigma;
    if (x > m.x_max()) break;
    double hq = m.h_quarter(x);
    if (parity == Parity::Odd) {
      cplx f2 = d.f2_at(*md, x);
      if (f2 != cplx(0.0, 0.0))
        out.wx_half(q) = -hq * std::pow(sigma, -n - 1) * f2;
    } else {
      cplx f1 = d.f1_at(*md, x);
      if (f1 != cplx(0.0, 0.0))
        out.w_half(q) = hq * std::pow(sigma, -n) * f1;
    }
  }
  if (parity == Parity::Even) {
    // transverse derivative vanishes; the tangential slope gives dW/dx' = D'/2
    for (int q = 2; q < nh - 2; ++q)
      out.wx_half(q) =
          0.5 * (out.w_half(q + 2) - out.w_half(q - 2)) / (2.0 * delta);
  }
  return out;
}

namespace {

// seeds W(j-1, j) from the diagonal data
cplx first_layer_seed(const ModeProblem& p, const DiagonalData& diag, int j) {
  int q = 2 * j - 1;  // sigma = (j - 1/2) delta
  if (q < 1 || q >= diag.n_half()) return {0.0, 0.0};
  double delta = p.delta;
  if (diag.parity == Parity::Odd) {
    cplx wx = diag.wx_half(q);
    return wx == cplx(0.0, 0.0) ? cplx(0.0, 0.0) : -delta * wx;
  }
  cplx D = diag.w_half(q);
  cplx Dmm = (q >= 2 && q + 2 < diag.n_half())
                 ? diag.w_half(q - 2) - 2.0 * D + diag.w_half(q + 2)
                 : cplx(0.0, 0.0);
  if (D == cplx(0.0, 0.0) && Dmm == cplx(0.0, 0.0)) return {0.0, 0.0};
  double sigma = 0.5 * q * delta;
  double K = p.K(std::min(sigma * sigma, p.x_max));
  // W(sigma -/+ delta/2) = D + (delta^2/8) D'' - (delta^2/2) K D + O(delta^3)
  return D + 0.125 * Dmm - 0.5 * delta * delta * K * D;
}

}  // namespace

ForwardResult solve_forward(const ModeProblem& p, const DiagonalData& diag,
                            double t_end, bool want_full) {
  const double delta = p.delta;
  const int nrows = static_cast<int>(std::floor(t_end / delta + 1e-9)) + 1;

  ForwardResult out;
  out.trace = ArrayXcd::Zero(nrows);
  if (want_full) {
    out.field.emplace();
    out.field->delta = delta;
    out.field->x_max = p.x_max;
    out.field->parity = diag.parity;
    out.field->rows.resize(nrows);
  }

  auto diag_at = [&](int j) -> cplx {
    int q = 2 * j;
    return (q < diag.n_half()) ? diag.w_half(q) : cplx(0.0, 0.0);
  };

  ArrayXcd prev = ArrayXcd::Zero(1), cur;
  prev(0) = diag_at(0);
  out.trace(0) = prev(0);
  if (want_full) out.field->rows[0] = prev;
  double max_abs = std::abs(prev(0));
  std::vector<double> q_mid;

  for (int j = 1; j < nrows; ++j) {
    const int len = row_length(delta, p.x_max, j);
    const int plen = static_cast<int>(prev.size());
    cur = ArrayXcd::Zero(len);
    const bool diagonal_row = (len == j + 1);

    q_mid.resize(len);
    const double tmid = (j - 0.5) * delta;
    for (int i = 0; i < len; ++i) {
      double m = (i + 0.5) * delta * tmid;
      q_mid[i] = 0.25 * delta * delta * p.K(std::min(m, p.x_max));
    }
    auto at_prev = [&](int i) -> cplx {
      return i < plen ? prev(i) : cplx(0.0, 0.0);
    };

    int sweep_top;
    if (diagonal_row) {
      cur(j) = diag_at(j);
      if (len >= 2) cur(j - 1) = first_layer_seed(p, diag, j);
      sweep_top = j - 2;
    } else {
      // cap-clipped row: boundary-fitted last cell.  Integrating the
      // equation over the trapezoid between the last column and the cap
      // curve (W = 0 there, with the slant flux -int cap' W_x' dt') gives
      //   W(li, j) (1 + g + q) = W(li, j-1) (1 - g - q),
      // g = |cap'| delta / (2 dbar): gain <= 1, no interpolation involved.
      int li = len - 1;
      if (li < 2) throw WindowExceedsTriangle("cap row narrower than 3 cells");
      double x_li = li * delta;
      double cap0 = p.x_max / ((j - 1) * delta);
      double cap1 = p.x_max / (j * delta);
      double dbar = 0.5 * (cap0 + cap1) - x_li;
      double t_mid = (j - 0.5) * delta;
      double gamma = (p.x_max / (t_mid * t_mid)) * delta / (2.0 * dbar);
      double Kc = p.K(std::min((x_li + 0.5 * dbar) * t_mid, p.x_max));
      double qb = 0.25 * Kc * delta * dbar;
      cur(li) = at_prev(li) * ((1.0 - gamma - qb) / (1.0 + gamma + qb));
      sweep_top = li - 1;
    }

    for (int i = sweep_top; i >= 0; --i) {
      double Q = q_mid[i];
      cur(i) = ((1.0 - Q) * (cur(i + 1) + at_prev(i)) - (1.0 + Q) * at_prev(i + 1)) /
               (1.0 + Q);
    }

    out.trace(j) = cur(0);
    double m0 = cur.abs().maxCoeff();
    max_abs = std::max(max_abs, m0);
    check_finite(m0, "solve_forward");
    if (want_full) out.field->rows[j] = cur;
    prev.swap(cur);
  }
  out.max_abs = max_abs;
  if (out.field) out.field->max_abs = max_abs;
  return out;
}

InwardResult solve_inward(const ModeProblem& p, const ArrayXcd& boundary_row,
                          InwardClosure closure, bool want_full) {
  const double delta = p.delta;
  const double x_max = p.x_max;
  const int ncols = static_cast<int>(boundary_row.size());
  int i_top = static_cast<int>(std::floor(std::sqrt(x_max) / delta + 1e-9));
  i_top = std::min(i_top, ncols - 1);
  const int n = p.n;

  InwardResult out;
  out.f_sigma = ArrayXcd::Zero(i_top + 1);
  out.f1_sigma = ArrayXcd::Zero(i_top + 1);
  if (want_full) {
    out.field.emplace();
    out.field->delta = delta;
    out.field->x_max = x_max;
    out.field->parity =
        closure == InwardClosure::Even ? Parity::Even : Parity::Odd;
    out.field->rows.resize(ncols);
    for (int j = 0; j < ncols; ++j)
      out.field->rows[j] = ArrayXcd::Zero(row_length(delta, x_max, j));
    for (int j = 0; j < ncols; ++j) out.field->rows[j](0) = boundary_row(j);
  }

  // diagonal, first-layer and first-subdiagonal lines for the data reads
  ArrayXcd diag_line = ArrayXcd::Zero(i_top + 1);
  ArrayXcd layer_line = ArrayXcd::Zero(i_top + 1);  // W(i, i+1)
  ArrayXcd sub_line = ArrayXcd::Zero(i_top + 1);    // W(i, i-1), Full only
  if (boundary_row.size() > 1) layer_line(0) = boundary_row(1);
  diag_line(0) = boundary_row(0);
  ArrayXcd prev_row = boundary_row;
  double max_abs = boundary_row.abs().maxCoeff();
  check_finite(max_abs, "solve_inward row 0");
  double parity_dev = 0.0;

  for (int i1 = 1; i1 <= i_top; ++i1) {
    double tp_cap = x_max / (i1 * delta);
    int jcap = static_cast<int>(std::ceil(tp_cap / delta - 1.5 - 1e-12));
    int jmax = std::min(ncols - 1, jcap);
    if (jmax < i1) break;
    const ArrayXcd& prev = prev_row;
    ArrayXcd cur = ArrayXcd::Zero(jmax + 1);

    auto Qat = [&](int j) {
      double m = (i1 - 0.5) * delta * (j - 0.5) * delta;
      return 0.25 * delta * delta * p.K(std::min(m, x_max));
    };
    auto at_prev = [&](int j) -> cplx {
      return j < prev.size() ? prev(j) : cplx(0.0, 0.0);
    };

    if (closure == InwardClosure::Full) {
      int jm = jmax;
      if (jm < ncols - 1 && jm >= i1 + 2) {
        // boundary-fitted last cell along t', mirroring the forward cap cell
        double t_jm = jm * delta;
        double capt0 = x_max / ((i1 - 1) * delta);
        double capt1 = tp_cap;
        double dbar = 0.5 * (capt0 + capt1) - t_jm;
        double x_mid = (i1 - 0.5) * delta;
        double gamma = (x_max / (x_mid * x_mid)) * delta / (2.0 * dbar);
        double Kc = p.K(std::min(x_mid * (t_jm + 0.5 * dbar), x_max));
        double qb = 0.25 * Kc * delta * dbar;
        cur(jm) = at_prev(jm) * ((1.0 - gamma - qb) / (1.0 + gamma + qb));
      } else {
        cur(jm) = 0.0;  // decayed window edge (or a sliver row at the corner)
      }
      // continue one step past the diagonal: the solution is smooth across
      // t = 0, so the same cells determine the first subdiagonal layer
      int j_low = std::max(1, i1 - 1);
      for (int j = jm; j > j_low; --j) {
        double Q = Qat(j);
        cur(j - 1) =
            ((1.0 - Q) * (cur(j) + at_prev(j - 1)) - (1.0 + Q) * at_prev(j)) /
            (1.0 + Q);
      }
      if (i1 >= 1 && j_low == i1 - 1) sub_line(i1) = cur(i1 - 1);
    } else {
      if (closure == InwardClosure::Odd) {
        cur(i1) = 0.0;
      } else {
        double Q = Qat(i1);
        cur(i1) = ((1.0 + Q) * 2.0 * at_prev(i1) - (1.0 - Q) * at_prev(i1 - 1)) /
                  (1.0 - Q);
      }
      for (int j = i1 + 1; j <= jmax; ++j) {
        double Q = Qat(j);
        cur(j) =
            ((1.0 + Q) * (at_prev(j) + cur(j - 1)) - (1.0 - Q) * at_prev(j - 1)) /
            (1.0 - Q);
      }
      if (jmax >= i1 + 4) {
        cplx ex = 4.0 * cur(i1 + 1) - 6.0 * cur(i1 + 2) + 4.0 * cur(i1 + 3) -
                  cur(i1 + 4);
        parity_dev = std::max(parity_dev, std::abs(ex - cur(i1)));
      }
    }

    double m0 = cur.abs().maxCoeff();
    max_abs = std::max(max_abs, m0);
    check_finite(m0, "solve_inward");
    if (want_full) {
      ModeField& fld = *out.field;
      for (int j = i1; j <= jmax; ++j)
        if (j < fld.nrows() && i1 < fld.rowlen(j)) fld.rows[j](i1) = cur(j);
    }

    diag_line(i1) = cur(i1);
    if (i1 + 1 <= jmax) layer_line(i1) = cur(i1 + 1);
    prev_row = std::move(cur);
  }

  // Data reads.  f2 comes from inverting the first-layer seeding relation at
  // cell midpoints, W_odd(i, i+1) = -delta dW/dx'(mid) + O(delta^3).  In the
  // Full closure the odd part is the exact half-difference against the
  // reconstructed subdiagonal layer.
  const double t_diag = std::sqrt(x_max);
  for (int i = 1; i + 1 <= i_top; ++i) {
    double sm = (i + 0.5) * delta;
    double x = sm * sm;
    if (sm >= t_diag - 2.0 * delta) break;
    double hqi = 1.0 / p.metric->h_quarter(x);
    cplx w_odd = closure == InwardClosure::Full
                     ? 0.5 * (layer_line(i) - sub_line(i + 1))
                     : layer_line(i);
    out.f_sigma(i) = w_odd * std::pow(sm, n + 1) * hqi / delta;
  }
  if (closure == InwardClosure::Full)
    for (int i = 1; i <= i_top; ++i) {
      double sigma = i * delta;
      if (sigma * sigma >= x_max) break;
      out.f1_sigma(i) =
          std::pow(sigma, n) * diag_line(i) / p.metric->h_quarter(sigma * sigma);
    }

  out.parity_dev = parity_dev;
  out.max_abs = max_abs;
  return out;
}

std::pair<cplx, cplx> sample_interior(const ModeField& f, const ModeProblem& p,
                                      double t, double x) {
  const double delta = f.delta;
  if (x <= 0.0 || x > p.x_max) throw OutsideTriangle("x outside (0, x_max]");
  double tp = std::sqrt(x) * std::exp(0.5 * t);
  double xp = std::sqrt(x) * std::exp(-0.5 * t);
  double t_top = (f.nrows() - 1) * delta;
  if (t < 0.0 || tp > t_top - 2.0 * delta)
    throw OutsideTriangle("(x', t') = (" + std::to_string(xp) + ", " +
                          std::to_string(tp) + ") not in the strip");

  auto W = [&](int i, int j) { return f.at(i, j); };
  auto D = [&](int i, int j) {
    cplx dt = (W(i, j + 1) - W(i, j - 1)) / (2.0 * delta);
    cplx dx = (W(i + 1, j) - W(i - 1, j)) / (2.0 * delta);
    return (j * delta) * dt - (i * delta) * dx;
  };
  int i0 = static_cast<int>(std::floor(xp / delta));
  int j0 = static_cast<int>(std::floor(tp / delta));
  double u = xp / delta - i0, v = tp / delta - j0;
  auto blend = [&](auto&& g) {
    return (1 - u) * (1 - v) * g(i0, j0) + u * (1 - v) * g(i0 + 1, j0) +
           (1 - u) * v * g(i0, j0 + 1) + u * v * g(i0 + 1, j0 + 1);
  };
  cplx Wv = blend(W);
  cplx Dv = blend(D);
  double pref = std::pow(x, 0.5 * p.n) / p.metric->h_quarter(x);
  return {pref * Wv, pref * 0.5 * Dv};
}

double energy_functional(const ModeField& f, const ModeProblem& p) {
  const double delta = f.delta;
  double total = 0.0;
  for (int j = 1; j + 1 < f.nrows(); ++j) {
    int len = std::min(f.rowlen(j), j);  // nodes strictly below the diagonal
    for (int i = 0; i < len; ++i) {
      double xp = i * delta, tp = j * delta;
      double m = std::min(xp * tp, p.x_max);
      double hq = p.metric->h_quarter(m);
      cplx V = f.at(i, j) / hq;
      cplx Vx = (f.at(i + 1, j) - f.at(i - 1, j)) / (2.0 * delta) / hq;
      cplx Vt = (f.at(i, j + 1) - f.at(i, j - 1)) / (2.0 * delta) / hq;
      double cm = p.metric->c(m);
      double om2 = p.kappa2 / (cm * cm);
      double integrand = std::norm(V) +
                         xp * tp * (xp + tp) * om2 * std::norm(V) +
                         xp * std::norm(Vx) + tp * std::norm(Vt);
      double w = (i == 0 || i == len - 1) ? 0.5 : 1.0;
      total += w * integrand * p.metric->sqrt_h(m) * delta * delta;
    }
  }
  return total;
}

double data_functional(const ModeProblem& p, const DiagonalData& diag) {
  const double delta = p.delta;
  double total = 0.0;
  int nh = diag.n_half();
  for (int q = 0; q < nh; q += 2) {
    double sigma = 0.5 * q * delta;
    double x = sigma * sigma;
    if (x > p.x_max) break;
    double hq = p.metric->h_quarter(x);
    double A = p.metric->A(x);
    cplx f1 = diag.w_half(q) / hq;
    cplx f2 = (diag.wx_half(q) - 0.5 * A * sigma * diag.w_half(q)) / hq;
    double cm = p.metric->c(x);
    double om2 = p.kappa2 / (cm * cm);
    double integrand = sigma * std::norm(f1) + sigma * std::norm(f2) +
                       std::pow(sigma, 3) * om2 * std::norm(f1);
    double w = (q == 0 || q + 2 >= nh) ? 0.5 : 1.0;
    total += w * integrand * p.metric->sqrt_h(x) * delta;
  }
  return total;
}

}  // namespace ahrad
