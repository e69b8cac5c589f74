#include "ahrad/inverse.hpp"

#include <algorithm>
#include <cmath>

#include "ahrad/errors.hpp"

namespace ahrad {

double align_x1(const XGrid& g, double x1) {
  int idx = static_cast<int>(std::lround((x1 - g.x0) / g.dx));
  idx = std::max(0, std::min(idx, g.n - 1));
  return g.x(idx);
}

namespace {

CauchyData truncate_data(const CauchyData& d, double x1) {
  CauchyData out = d;
  int idx = static_cast<int>(std::lround((x1 - d.grid.x0) / d.grid.dx));
  for (auto& md : out.modes)
    for (int i = 0; i < idx && i < d.grid.n; ++i) {
      md.f1(i) = 0.0;
      md.f2(i) = 0.0;
    }
  out.compute_support();
  return out;
}

}  // namespace

RadiationField truncate_project(const WarpedMetric& m, const RadiationField& F,
                                double x1, const GridSpec& grid,
                                const XGrid& xg, double inv_tol, int jobs) {
  if (x1 <= xg.x0 || x1 >= m.x_max())
    throw PreconditionViolated("x1 outside the data grid");
  CauchyData w = inverse_forward_field(m, reflect(F), grid, xg, inv_tol, jobs);
  CauchyData wt = truncate_data(w, align_x1(xg, x1));
  return backward_field(m, wt, grid, jobs);
}

JumpMeasurement jump_amplitude(const WarpedMetric& m, const RadiationField& F,
                               double x1, const GridSpec& grid,
                               const XGrid& xg, const JumpFitSpec& spec,
                               int jobs) {
  x1 = align_x1(xg, x1);
  double ell = std::log(x1);
  const SGrid& sg = F.grid;
  if (ell < sg.s0 + 2.0 * sg.ds)
    throw WindowTooShort("log x1 below the s window");
  double fit_top = ell + (spec.skip + spec.width) * sg.ds;
  if (fit_top > ell + std::log(4.0))
    throw WindowTooShort("fit window exceeds the clean window log 4");
  if (fit_top > sg.s_last() && !F.backward)
    throw WindowTooShort("fit window exceeds the s window");
  if (spec.width < 8 || spec.width > 32)
    throw PreconditionViolated("fit width must be in [8, 32]");

  ArrayXd phi = make_mollifier(sg.ds, spec.mollifier_eps);
  RadiationField G = convolve_s(F, phi);

  // w = R_-^{-1} G (kept for the predicted amplitude)
  CauchyData w = inverse_forward_field(m, reflect(G), grid, xg, spec.inv_tol, jobs);
  RadiationField P = truncate_project(m, G, x1, grid, xg, spec.inv_tol, jobs);
  RadiationField H = scattering_apply(m, P, grid, xg, spec.inv_tol, jobs);

  JumpMeasurement out;
  out.x1 = x1;
  out.skip = spec.skip;
  out.width = spec.width;
  out.J = ArrayXcd::Zero(H.modes.size());
  out.w_at_x1 = ArrayXcd::Zero(H.modes.size());

  // one-sided fit H(s) = c0 + c1 t + c2 t^2, t = s - log x1, after the jump
  int i0 = static_cast<int>(std::ceil((ell - H.grid.s0) / H.grid.ds)) + spec.skip;
  int iw = spec.width;
  double resid_max = 0.0;
  Eigen::MatrixXd V(iw, 3);
  for (int r = 0; r < iw; ++r) {
    double t = H.grid.s(i0 + r) - ell;
    V(r, 0) = 1.0;
    V(r, 1) = t;
    V(r, 2) = t * t;
  }
  auto solver = (V.transpose() * V).ldlt();
  for (size_t mi = 0; mi < H.modes.size(); ++mi) {
    out.ks.push_back(H.modes[mi].k);
    Eigen::VectorXcd y(iw);
    for (int r = 0; r < iw; ++r) y(r) = H.modes[mi].F(i0 + r);
    Eigen::Vector3cd coef = solver.solve(V.transpose() * y);
    out.J(mi) = coef(0);
    double res = (V * coef - y).norm();
    double scale = std::max(y.norm(), 1e-300);
    resid_max = std::max(resid_max, res / scale);
    const ModeData* md = w.find(H.modes[mi].k);
    if (md) out.w_at_x1(mi) = w.f2_at(*md, x1);
  }
  out.fit_residual = resid_max;
  if (resid_max > 0.2)
    throw FitResidualHigh("jump fit residual " + std::to_string(resid_max));
  return out;
}

ArrayXcd predicted_jump(const WarpedMetric& m, const ArrayXcd& w_at_x1,
                        double x1) {
  double amp = 0.5 * std::pow(x1, -0.5 * m.bdim()) * m.h_quarter(x1) /
               m.h_quarter(0.0);
  return amp * w_at_x1;
}

ArrayXcd transport_v1(const WarpedMetric& m, double x1, cplx w_at_x1,
                      double lo, int n_samples) {
  // 2 v' + A v = 0 integrated down from x1
  cplx v0 = 0.5 * std::pow(x1, -0.5 * m.bdim() - 1.0) * w_at_x1;
  ArrayXcd out(n_samples);
  double h = (x1 - lo) / (n_samples - 1);
  cplx v = v0;
  out(n_samples - 1) = v;
  auto rhs = [&](double x, cplx vv) { return -0.5 * m.A(x) * vv; };
  for (int i = n_samples - 2; i >= 0; --i) {
    double x = lo + (i + 1) * h;
    cplx k1 = rhs(x, v);
    cplx k2 = rhs(x - 0.5 * h, v - 0.5 * h * k1);
    cplx k3 = rhs(x - 0.5 * h, v - 0.5 * h * k2);
    cplx k4 = rhs(x - h, v - h * k3);
    v -= h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    out(i) = v;
  }
  return out;
}

cplx transport_v1_exact(const WarpedMetric& m, double x, double x1,
                        cplx w_at_x1) {
  return 0.5 * (m.h_quarter(x1) / m.h_quarter(x)) *
         std::pow(x1, -0.5 * m.bdim() - 1.0) * w_at_x1;
}

SupportRoundtrip support_roundtrip(const WarpedMetric& m, const CauchyData& d,
                                   const GridSpec& grid, int jobs) {
  RadiationField F = forward_field(m, d, grid, jobs);
  SupportRoundtrip out;
  out.x_star = d.x_lo;
  double mx = F.max_abs();
  if (mx == 0.0) {
    out.s_star = std::numeric_limits<double>::infinity();
    out.mismatch = std::numeric_limits<double>::infinity();
    return out;
  }
  double floor = 1e-10 * mx;
  int first = F.grid.n;
  for (const auto& mt : F.modes)
    for (int i = 0; i < F.grid.n; ++i)
      if (std::abs(mt.F(i)) > floor) {
        first = std::min(first, i);
        break;
      }
  out.s_star = F.grid.s(first);
  out.mismatch = std::abs(std::exp(out.s_star) - out.x_star);
  return out;
}

RecoverReport recover_profile(const WarpedMetric& m1, const WarpedMetric& m2,
                              const std::vector<CauchyData>& probes,
                              const std::vector<double>& x1_ladder,
                              const GridSpec& grid, const XGrid& xg,
                              const RecoverSpec& spec, int jobs) {
  if (probes.empty() || x1_ladder.empty())
    throw PreconditionViolated("recover_profile needs probes and a ladder");
  RecoverReport rep;
  rep.x1 = x1_ladder;

  // scattering-operator comparison through the dynamic multipliers
  for (const auto& pr : probes)
    for (const auto& k : spec.ks) {
      if (pr.find(k) == nullptr) continue;
      ScatteringSample a1 = scattering_matrix_dynamic(m1, k, spec.lambda, pr,
                                                      grid, jobs);
      ScatteringSample a2 = scattering_matrix_dynamic(m2, k, spec.lambda, pr,
                                                      grid, jobs);
      for (int l = 0; l < spec.lambda.size(); ++l)
        if (!a1.masked[l] && !a2.masked[l])
          rep.scattering_diff =
              std::max(rep.scattering_diff, std::abs(a1.a(l) - a2.a(l)));
    }

  // jump profiles under both metrics, all probes, all ladder points
  double probe_spread = 0.0;
  for (double x1r : x1_ladder) {
    double x1 = align_x1(xg, x1r);
    double jdiff = 0.0, jerr = 0.0;
    std::vector<double> ratios;
    for (const auto& pr : probes) {
      RadiationField F1 = backward_field(m1, pr, grid, jobs);
      RadiationField F2 = backward_field(m2, pr, grid, jobs);
      JumpMeasurement j1 = jump_amplitude(m1, F1, x1, grid, xg, spec.fit, jobs);
      JumpMeasurement j2 = jump_amplitude(m2, F2, x1, grid, xg, spec.fit, jobs);
      ArrayXcd p1 = predicted_jump(m1, j1.w_at_x1, x1);
      double scale = std::max(j1.J.abs().maxCoeff(), 1e-300);
      jdiff = std::max(jdiff, (j1.J - j2.J).abs().maxCoeff() / scale);
      jerr = std::max(jerr, (j1.J - p1).abs().maxCoeff() /
                                std::max(p1.abs().maxCoeff(), 1e-300));
      // probe consistency: measured/predicted ratio should not depend on
      // the probe
      for (Eigen::Index q = 0; q < j1.J.size(); ++q)
        if (std::abs(p1(q)) > 1e-8 * p1.abs().maxCoeff())
          ratios.push_back(std::abs(j1.J(q) / p1(q)));
    }
    if (ratios.size() >= 2) {
      auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
      probe_spread = std::max(probe_spread, *hi - *lo);
    }
    rep.j_rel_diff.push_back(jdiff);
    rep.j_rel_err.push_back(jerr);
  }
  rep.probe_consistency = probe_spread;
  if (probe_spread > spec.tol_probe)
    throw InconsistentProbes("measured/predicted spread " +
                             std::to_string(probe_spread));

  if (rep.scattering_diff <= spec.tol_scatter) {
    rep.verdict = "equal";
  } else {
    rep.verdict = "differ";
    for (size_t i = 0; i < rep.x1.size(); ++i)
      if (rep.j_rel_diff[i] > spec.tol_jump) {
        rep.first_diff_x1 = rep.x1[i];
        break;
      }
  }
  return rep;
}

}  // namespace ahrad
