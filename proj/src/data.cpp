#include "ahrad/data.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ahrad/errors.hpp"

namespace ahrad {

double GridSpec::t_end(double x_max) const {
  double t_diag = std::sqrt(x_max);
  double t_window = std::exp(0.5 * s_hi());
  return std::max(t_diag, t_window);
}

void GridSpec::validate(const WarpedMetric& m) const {
  if (delta <= 0.0) throw PreconditionViolated("GridSpec: delta <= 0");
  if (K < 0) throw PreconditionViolated("GridSpec: K < 0");
  if (ds <= 0.0 || ns() < 2) throw PreconditionViolated("GridSpec: bad s grid");
  if (s_hi() <= s_min) throw PreconditionViolated("GridSpec: empty s window");
  // the cap-row closure needs at least two interior columns per row
  double t_last = t_end(m.x_max());
  if (m.x_max() / (t_last * delta) < 3.0)
    throw WindowExceedsTriangle("s window needs t' = " + std::to_string(t_last) +
                                " where the capped strip is under 3 cells wide");
}

void CauchyData::compute_support() {
  double mx = 0.0;
  for (const auto& md : modes)
    mx = std::max({mx, md.f1.abs().maxCoeff(), md.f2.abs().maxCoeff()});
  if (mx == 0.0) {
    x_lo = grid.x_last();
    x_hi = grid.x0;
    return;
  }
  double floor = 1e-14 * mx;
  int lo = grid.n, hi = -1;
  for (const auto& md : modes)
    for (int i = 0; i < grid.n; ++i)
      if (std::abs(md.f1(i)) > floor || std::abs(md.f2(i)) > floor) {
        lo = std::min(lo, i);
        hi = std::max(hi, i);
      }
  x_lo = grid.x(std::max(0, lo - 1));
  x_hi = grid.x(std::min(grid.n - 1, hi + 1));
}

const ModeData* CauchyData::find(ModeKey k) const {
  for (const auto& md : modes)
    if (md.k == k) return &md;
  return nullptr;
}

bool CauchyData::f1_zero() const {
  for (const auto& md : modes)
    if (md.f1.abs().maxCoeff() != 0.0) return false;
  return true;
}

bool CauchyData::f2_zero() const {
  for (const auto& md : modes)
    if (md.f2.abs().maxCoeff() != 0.0) return false;
  return true;
}

cplx CauchyData::f1_at(const ModeData& md, double x) const {
  return interp_cubic_supported(md.f1, grid.x0, grid.dx, x);
}

cplx CauchyData::f2_at(const ModeData& md, double x) const {
  return interp_cubic_supported(md.f2, grid.x0, grid.dx, x);
}

double smooth_bump(double x, double center, double halfwidth) {
  double u = (x - center) / halfwidth;
  if (std::abs(u) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - u * u));
}

ArrayXcd sample_bumps(const XGrid& g, const std::vector<BumpSpec>& bumps) {
  ArrayXcd out = ArrayXcd::Zero(g.n);
  for (const auto& b : bumps)
    for (int i = 0; i < g.n; ++i) {
      double v = smooth_bump(g.x(i), b.center, b.halfwidth);
      if (v != 0.0) {
        cplx phase = b.chirp == 0.0
                         ? cplx(1.0, 0.0)
                         : std::exp(cplx(0.0, b.chirp * (g.x(i) - b.center)));
        out(i) += b.amp * phase * v;
      }
    }
  return out;
}

CauchyData random_cauchy_data(const WarpedMetric& m, const XGrid& g, int K,
                              double lo, double hi, std::uint64_t seed,
                              bool f1_too) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uc(lo + 0.12 * (hi - lo),
                                            hi - 0.12 * (hi - lo));
  std::uniform_real_distribution<double> uw(0.15 * (hi - lo), 0.25 * (hi - lo));
  std::uniform_real_distribution<double> ua(-1.0, 1.0);

  CauchyData d;
  d.bdim = m.bdim();
  d.L = m.period();
  d.grid = g;
  d.conj_symmetric = true;
  for (int k = 0; k <= K; ++k) {
    ModeData md;
    md.k = ModeKey{k, 0};
    auto gen = [&](bool on) {
      std::vector<BumpSpec> bs;
      int nb = 1 + (rng() % 2);
      for (int b = 0; b < nb; ++b) {
        BumpSpec s;
        s.center = uc(rng);
        s.halfwidth = uw(rng);
        s.halfwidth = std::min({s.halfwidth, s.center - lo, hi - s.center});
        double re = ua(rng), im = (k == 0) ? 0.0 : ua(rng);
        s.amp = cplx(re, im);
        bs.push_back(s);
      }
      return on ? sample_bumps(g, bs) : ArrayXcd::Zero(g.n).eval();
    };
    md.f1 = gen(f1_too);
    md.f2 = gen(true);
    d.modes.push_back(std::move(md));
  }
  // conjugate-symmetric completion
  for (int k = 1; k <= K; ++k) {
    const ModeData* src = d.find(ModeKey{k, 0});
    ModeData md;
    md.k = ModeKey{-k, 0};
    md.f1 = src->f1.conjugate();
    md.f2 = src->f2.conjugate();
    d.modes.push_back(std::move(md));
  }
  d.compute_support();
  return d;
}

namespace {

// Quadrature at a given refinement of the data grid (cubic resampling).
double energy_quad(const WarpedMetric& m, const CauchyData& d, int refine) {
  const XGrid& g = d.grid;
  int nf = (g.n - 1) * refine + 1;
  double dxf = g.dx / refine;
  double total = 0.0;
  int n = m.bdim();
  ArrayXd weight(nf), om_x2(nf);
  for (const auto& md : d.modes) {
    ArrayXcd f1(nf), f2(nf);
    if (refine == 1) {
      f1 = md.f1;
      f2 = md.f2;
    } else {
      for (int i = 0; i < nf; ++i) {
        double x = g.x0 + i * dxf;
        f1(i) = interp_cubic_supported(md.f1, g.x0, g.dx, x);
        f2(i) = interp_cubic_supported(md.f2, g.x0, g.dx, x);
      }
    }
    ArrayXcd df1 = deriv_uniform(f1, dxf);
    ArrayXd integ(nf);
    for (int i = 0; i < nf; ++i) {
      double x = g.x0 + i * dxf;
      double om2 = m.omega2(md.k, x);
      double grad2 = x * x * (std::norm(df1(i)) + om2 * std::norm(f1(i)));
      double val = grad2 - 0.25 * n * n * std::norm(f1(i)) + std::norm(f2(i));
      integ(i) = val * std::pow(m.c(x), n) * std::pow(x, -(n + 1));
    }
    total += trapz(integ, dxf);
  }
  return 0.5 * m.boundary_measure() * total;
}

}  // namespace

double energy_norm_unchecked(const WarpedMetric& m, const CauchyData& d) {
  return energy_quad(m, d, 1);
}

double energy_norm(const WarpedMetric& m, const CauchyData& d) {
  if (d.x_hi > m.x_max() + 1e-12)
    throw PreconditionViolated("data support exceeds x_max");
  double e1 = energy_quad(m, d, 1);
  double e2 = energy_quad(m, d, 2);
  double scale = std::max({std::abs(e1), std::abs(e2), 1e-300});
  if (std::abs(e1 - e2) > 1e-3 * scale)
    throw QuadratureUnresolved("energy changed by " +
                               std::to_string(std::abs(e1 - e2) / scale) +
                               " under refinement");
  return e1;
}

CauchyData apply_laplacian(const WarpedMetric& m, const CauchyData& d) {
  CauchyData out = d;
  const XGrid& g = d.grid;
  for (size_t mi = 0; mi < d.modes.size(); ++mi) {
    const auto& md = d.modes[mi];
    auto act = [&](const ArrayXcd& f) {
      ArrayXcd df = deriv_uniform(f, g.dx);
      ArrayXcd d2f = deriv_uniform(df, g.dx);
      ArrayXcd r(g.n);
      for (int i = 0; i < g.n; ++i) {
        double x = g.x(i);
        double Ax = m.A(x);
        r(i) = -x * x * d2f(i) + ((m.bdim() - 1) * x - Ax * x * x) * df(i) +
               x * x * m.omega2(md.k, x) * f(i);
      }
      return r;
    };
    out.modes[mi].f1 = act(md.f1);
    out.modes[mi].f2 = act(md.f2);
  }
  out.compute_support();
  return out;
}

}  // namespace ahrad
