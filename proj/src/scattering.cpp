#include "ahrad/scattering.hpp"

#include <algorithm>
#include <cmath>

#include "ahrad/errors.hpp"

namespace ahrad {

RadiationField scattering_apply(const WarpedMetric& m, const RadiationField& F,
                                const GridSpec& grid, const XGrid& xg,
                                double inv_tol, int jobs) {
  // R_-^{-1} F = (0, w) with R_+(0, w) = reflect(F)
  RadiationField Frefl = reflect(F);
  CauchyData w = inverse_forward_field(m, Frefl, grid, xg, inv_tol, jobs);
  return forward_field(m, w, grid, jobs);
}

ScatteringSample scattering_matrix_dynamic(const WarpedMetric& m, ModeKey k,
                                           const ArrayXd& lambda,
                                           const CauchyData& probe,
                                           const GridSpec& grid, int jobs) {
  const ModeData* md = probe.find(k);
  if (md == nullptr || md->f2.abs().maxCoeff() == 0.0)
    throw ProbeDeficient("probe has no mode-k content");
  CauchyData single;
  single.bdim = probe.bdim;
  single.L = probe.L;
  single.grid = probe.grid;
  single.conj_symmetric = false;
  ModeData one = *md;
  one.f1.setZero();
  single.modes.push_back(one);
  single.compute_support();

  RadiationField Fp = forward_field(m, single, grid, jobs);
  RadiationField Fm = backward_field(m, single, grid, jobs);

  int nl = static_cast<int>(lambda.size());
  ScatteringSample out;
  out.k = k;
  out.lambda = lambda;
  out.a = ArrayXcd::Zero(nl);
  out.masked.assign(nl, false);
  out.method = "dynamic";

  const ArrayXcd& fp = Fp.modes[0].F;
  const ArrayXcd& fm = Fm.modes[0].F;
  ArrayXcd hp(nl), hm(nl);
  for (int l = 0; l < nl; ++l) {
    cplx accp = 0.0, accm = 0.0;
    for (int i = 0; i < Fp.grid.n; ++i) {
      accp += fp(i) * std::exp(cplx(0.0, -lambda(l) * Fp.grid.s(i)));
      accm += fm(i) * std::exp(cplx(0.0, -lambda(l) * Fm.grid.s(i)));
    }
    // trapezoid end corrections are negligible for decayed fields
    hp(l) = accp * Fp.grid.ds;
    hm(l) = accm * Fm.grid.ds;
  }
  double floor = 1e-8 * hm.abs().maxCoeff();
  for (int l = 0; l < nl; ++l) {
    if (std::abs(hm(l)) < floor) {
      out.masked[l] = true;
      out.a(l) = 0.0;
    } else {
      out.a(l) = hp(l) / hm(l);
    }
  }
  return out;
}

StationaryResult scattering_matrix_stationary(const WarpedMetric& m, ModeKey k,
                                              double lambda, double eps_fit) {
  if (lambda == 0.0)
    throw PreconditionViolated("stationary solve needs lambda != 0");
  const int n = m.bdim();
  const double kap2 = m.kappa2(k);

  // U'' = xA U' - (lambda^2 + (n/2) xA - x^2 omega^2) U, x = e^{-r}
  auto rhs = [&](double r, double U, double V, double& dU, double& dV) {
    double x = std::exp(-r);
    double xA = x * m.A(x);
    double cx = m.c(x);
    double pot = lambda * lambda + 0.5 * n * xA - x * x * kap2 / (cx * cx);
    dU = V;
    dV = xA * V - pot * U;
  };

  double r0 = -std::log(m.x_max());
  double r1 = -std::log(eps_fit);
  double h = std::min(1e-3, 0.02 / std::max(1.0, std::abs(lambda)));
  int nstep = static_cast<int>(std::ceil((r1 - r0) / h));
  h = (r1 - r0) / nstep;

  double U = 0.0, V = 1.0;
  for (int i = 0; i < nstep; ++i) {
    double r = r0 + i * h;
    double k1u, k1v, k2u, k2v, k3u, k3v, k4u, k4v;
    rhs(r, U, V, k1u, k1v);
    rhs(r + 0.5 * h, U + 0.5 * h * k1u, V + 0.5 * h * k1v, k2u, k2v);
    rhs(r + 0.5 * h, U + 0.5 * h * k2u, V + 0.5 * h * k2v, k3u, k3v);
    rhs(r + h, U + h * k3u, V + h * k3v, k4u, k4v);
    U += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
    V += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
  }

  // two-term Frobenius branches at r1 (x = eps_fit)
  double a1 = m.dA(0.0);  // A(x) = a1 x + O(x^2)
  cplx sig_p(0.5 * n, lambda), sig_m(0.5 * n, -lambda);
  cplx c2p = (kap2 - a1 * sig_p) / (4.0 * cplx(1.0, lambda));
  cplx c2m = (kap2 - a1 * sig_m) / (4.0 * cplx(1.0, -lambda));
  double x = std::exp(-r1);
  cplx ep = std::exp(cplx(0.0, -lambda * r1));  // x^{+i lambda}
  cplx em = std::exp(cplx(0.0, lambda * r1));
  cplx gp = ep * (1.0 + c2p * x * x);
  cplx gm = em * (1.0 + c2m * x * x);
  cplx dgp = ep * (cplx(0.0, -lambda) * (1.0 + c2p * x * x) - 2.0 * c2p * x * x);
  cplx dgm = em * (cplx(0.0, lambda) * (1.0 + c2m * x * x) - 2.0 * c2m * x * x);

  Eigen::Matrix2cd M;
  M << gp, gm, dgp, dgm;
  Eigen::JacobiSVD<Eigen::Matrix2cd> svd(M, Eigen::ComputeFullU |
                                                Eigen::ComputeFullV);
  double cond = svd.singularValues()(0) /
                std::max(svd.singularValues()(1), 1e-300);
  if (cond > 1e8)
    throw FitIllConditioned("branch fit condition number " +
                            std::to_string(cond));
  Eigen::Vector2cd rhsv;
  rhsv << cplx(U, 0.0), cplx(V, 0.0);
  Eigen::Vector2cd ab = M.colPivHouseholderQr().solve(rhsv);

  StationaryResult out;
  out.a = ab(1) / ab(0);
  out.cond = cond;
  out.eps_fit = eps_fit;
  return out;
}

namespace {

double field_diff_norm(const RadiationField& A, const RadiationField& B) {
  double total = 0.0;
  for (size_t i = 0; i < A.modes.size(); ++i) {
    const ModeTrace* b = B.find(A.modes[i].k);
    ArrayXcd diff = b ? (A.modes[i].F - b->F).eval() : A.modes[i].F;
    total += trapz(diff.abs2().eval(), A.grid.ds);
  }
  return std::sqrt(total * A.measure());
}

}  // namespace

double membership_Mf(const WarpedMetric& m, const RadiationField& F,
                     const GridSpec& grid, const XGrid& xg, int jobs) {
  double nf = field_norm(F);
  if (nf == 0.0) return 0.0;
  // With (f1, f2) = R_+^{-1} F one has S F* = R_+(-f1, f2), so
  // F - S F* = 2 R_+(f1, 0): only the clean diagonal-value read enters.
  CauchyData d = invert_field_full(m, F, grid, xg, jobs);
  for (auto& md : d.modes) md.f2.setZero();
  d.compute_support();
  if (d.f1_zero()) return 0.0;
  RadiationField even_part = forward_field(m, d, grid, jobs);
  return 2.0 * field_norm(even_part) / nf;
}

double membership_Mb(const WarpedMetric& m, const RadiationField& F,
                     const GridSpec& grid, const XGrid& xg, int jobs) {
  return membership_Mf(m, reflect(F), grid, xg, jobs);
}

std::pair<cplx, cplx> indicial_roots(const WarpedMetric& m, ModeKey k,
                                     double lambda) {
  // radial ODE: x^2 u'' + x P1(x) u' + P0(x) u = 0 with
  //   P1(x) = A(x) x - (n-1),  P0(x) = n^2/4 + lambda^2 - x^2 omega_k^2(x);
  // indicial polynomial alpha(alpha-1) + P1(0) alpha + P0(0) = 0.
  double eps = 1e-7 * m.x_max();
  double P1 = m.A(eps) * eps - (m.bdim() - 1);
  double P0 = 0.25 * m.bdim() * m.bdim() + lambda * lambda -
              eps * eps * m.omega2(k, eps);
  cplx b = P1 - 1.0, c = P0;
  cplx disc = std::sqrt(b * b - 4.0 * c);
  return {(-b + disc) / 2.0, (-b - disc) / 2.0};
}

}  // namespace ahrad
