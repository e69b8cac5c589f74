#include "ahrad/radiation.hpp"

#include <algorithm>
#include <cmath>

#include "ahrad/errors.hpp"

namespace ahrad {

namespace {

bool mode_is_canonical(ModeKey k) {
  return k.k1 > 0 || (k.k1 == 0 && k.k2 >= 0);
}

bool zero_mode(const ArrayXcd& a) { return a.abs().maxCoeff() == 0.0; }

// boundary trace W(0, t') -> F(s) on the uniform s grid
ArrayXcd trace_to_field(const ArrayXcd& w0, double delta, double h0q,
                        const SGrid& sg, double t_corner) {
  const int nj = static_cast<int>(w0.size());
  int j_first = -1, j_last = -1;
  for (int j = 0; j < nj; ++j)
    if (w0(j) != cplx(0.0, 0.0)) {
      if (j_first < 0) j_first = j;
      j_last = j;
    }
  ArrayXcd F = ArrayXcd::Zero(sg.n);
  if (j_first < 0) return F;

  // Binomial prefilter [1,4,6,4,1]/16 against grid-scale cap-cell jitter:
  // the sawtooth mode is annihilated and smooth content only moves by
  // O(delta^2).  Applied only beyond the cap corner, where the jitter is
  // created; the pre-cap trace and the leading edge stay raw.
  ArrayXcd w0s = w0;
  int j_filter = std::max({j_first + 2, 2,
                           static_cast<int>(t_corner / delta) + 1});
  int j_top = std::min(j_last - 2, nj - 3);
  for (int pass = 0; pass < 2; ++pass) {
    ArrayXcd src = w0s;
    for (int j = j_filter + 2 * pass; j <= j_top - 2 * pass; ++j)
      w0s(j) = (src(j - 2) + 4.0 * src(j - 1) + 6.0 * src(j) +
                4.0 * src(j + 1) + src(j + 2)) /
               16.0;
  }

  ArrayXcd dW = deriv_uniform(w0s, delta);
  ArrayXcd Fsrc = ArrayXcd::Zero(nj);
  for (int j = 0; j < nj; ++j) {
    if (j < j_first || j > j_last) continue;  // exact discrete causality
    Fsrc(j) = 0.5 / h0q * (j * delta) * dW(j);
  }
  double t_lead = j_first * delta;
  for (int i = 0; i < sg.n; ++i) {
    double tp = std::exp(0.5 * sg.s(i));
    if (tp < t_lead) continue;  // keep the front exactly zero
    F(i) = interp_cubic(Fsrc, 0.0, delta, std::min(tp, (nj - 1) * delta));
  }
  return F;
}

struct Task {
  ModeKey k;
  Parity parity;
  int slot;
};

}  // namespace

const ModeTrace* RadiationField::find(ModeKey k) const {
  for (const auto& mt : modes)
    if (mt.k == k) return &mt;
  return nullptr;
}

double RadiationField::max_abs() const {
  double m = 0.0;
  for (const auto& mt : modes) m = std::max(m, mt.F.abs().maxCoeff());
  return m;
}

RadiationField reflect(const RadiationField& F) {
  RadiationField out = F;
  out.grid.s0 = -F.grid.s_last();
  out.backward = !F.backward;
  for (size_t i = 0; i < F.modes.size(); ++i)
    out.modes[i].F = F.modes[i].F.reverse();
  return out;
}

RadiationField forward_field(const WarpedMetric& m, const CauchyData& d,
                             const GridSpec& grid, int jobs) {
  grid.validate(m);
  RadiationField out;
  out.bdim = m.bdim();
  out.L = m.period();
  out.grid = SGrid{grid.s_min, grid.ds, grid.ns()};
  out.conj_symmetric = d.conj_symmetric;
  out.modes.resize(d.modes.size());
  for (size_t i = 0; i < d.modes.size(); ++i) {
    out.modes[i].k = d.modes[i].k;
    out.modes[i].F = ArrayXcd::Zero(out.grid.n);
  }

  const double t_end = grid.t_end(m.x_max());
  const double h0q = m.h_quarter(0.0);

  std::vector<Task> tasks;
  for (size_t i = 0; i < d.modes.size(); ++i) {
    const auto& md = d.modes[i];
    if (d.conj_symmetric && !mode_is_canonical(md.k)) continue;
    if (!zero_mode(md.f2)) tasks.push_back({md.k, Parity::Odd, (int)i});
    if (!zero_mode(md.f1)) tasks.push_back({md.k, Parity::Even, (int)i});
  }

  std::vector<ArrayXcd> partial(tasks.size());
  parallel_for(static_cast<int>(tasks.size()), jobs, [&](int ti) {
    const Task& t = tasks[ti];
    ModeProblem p = assemble_problem(m, t.k, grid);
    DiagonalData diag = diagonal_data(m, d, t.k, grid, t.parity);
    ForwardResult fr = solve_forward(p, diag, t_end, false);
    partial[ti] = trace_to_field(fr.trace, grid.delta, h0q, out.grid,
                                 std::sqrt(m.x_max()));
  });
  for (size_t ti = 0; ti < tasks.size(); ++ti)
    out.modes[tasks[ti].slot].F += partial[ti];

  if (d.conj_symmetric) {
    for (size_t i = 0; i < d.modes.size(); ++i) {
      if (mode_is_canonical(d.modes[i].k)) continue;
      ModeKey mk{-d.modes[i].k.k1, -d.modes[i].k.k2};
      const ModeTrace* src = out.find(mk);
      if (src) out.modes[i].F = src->F.conjugate();
    }
  }
  return out;
}

RadiationField backward_field(const WarpedMetric& m, const CauchyData& d,
                              const GridSpec& grid, int jobs) {
  CauchyData flipped = d;
  for (auto& md : flipped.modes) md.f1 = -md.f1;
  RadiationField fwd = forward_field(m, flipped, grid, jobs);
  RadiationField out = reflect(fwd);
  out.backward = true;
  return out;
}

namespace {

// W(0, t'_j) = int_{-inf}^{2 log t'_j} F(s) ds, evaluated on the t' grid.
ArrayXcd boundary_row_from_field(const ArrayXcd& F, const SGrid& sg,
                                 double delta, double t_end, double h0q) {
  ArrayXcd cum = cumtrapz(F, sg.ds);
  int nj = static_cast<int>(std::floor(t_end / delta + 1e-9)) + 1;
  ArrayXcd w0 = ArrayXcd::Zero(nj);
  double t_lo = std::exp(0.5 * sg.s0);
  for (int j = 1; j < nj; ++j) {
    double tp = j * delta;
    if (tp <= t_lo) continue;
    double s = 2.0 * std::log(tp);
    cplx v = (s >= sg.s_last()) ? cum(sg.n - 1)
                                : interp_cubic(cum, sg.s0, sg.ds, s);
    w0(j) = h0q * v;
  }
  return w0;
}

}  // namespace

CauchyData invert_field_full(const WarpedMetric& m, const RadiationField& F,
                             const GridSpec& grid, const XGrid& xg, int jobs) {
  grid.validate(m);
  const double delta = grid.delta;
  const double t_end = grid.t_end(m.x_max());
  const double h0q = m.h_quarter(0.0);

  CauchyData out;
  out.bdim = m.bdim();
  out.L = m.period();
  out.grid = xg;
  out.conj_symmetric = F.conj_symmetric;
  out.modes.resize(F.modes.size());

  parallel_for(static_cast<int>(F.modes.size()), jobs, [&](int i) {
    const auto& mt = F.modes[i];
    out.modes[i].k = mt.k;
    if (F.conj_symmetric && !mode_is_canonical(mt.k)) {
      out.modes[i].f1 = ArrayXcd::Zero(xg.n);
      out.modes[i].f2 = ArrayXcd::Zero(xg.n);
      return;
    }
    ModeProblem p = assemble_problem(m, mt.k, grid);
    ArrayXcd w0 = boundary_row_from_field(mt.F, F.grid, delta, t_end, h0q);
    InwardResult ir = solve_inward(p, w0, InwardClosure::Full, false);
    ArrayXcd f1(xg.n), f2(xg.n);
    for (int q = 0; q < xg.n; ++q) {
      double sig = std::sqrt(xg.x(q));
      f1(q) = interp_cubic_supported(ir.f1_sigma, 0.0, delta, sig);
      f2(q) = interp_cubic_supported(ir.f_sigma, ir.f_offset * delta, delta, sig);
    }
    out.modes[i].f1 = f1;
    out.modes[i].f2 = f2;
  });

  if (F.conj_symmetric)
    for (size_t i = 0; i < out.modes.size(); ++i) {
      if (mode_is_canonical(out.modes[i].k)) continue;
      const ModeData* src = out.find(ModeKey{-out.modes[i].k.k1,
                                             -out.modes[i].k.k2});
      if (src) {
        out.modes[i].f1 = src->f1.conjugate();
        out.modes[i].f2 = src->f2.conjugate();
      }
    }
  out.compute_support();
  return out;
}

CauchyData inverse_forward_field(const WarpedMetric& m,
                                 const RadiationField& F, const GridSpec& grid,
                                 const XGrid& xg, double rel_tol, int jobs) {
  grid.validate(m);
  const double delta = grid.delta;
  const double t_end = grid.t_end(m.x_max());
  const double h0q = m.h_quarter(0.0);
  if (rel_tol <= 0.0) rel_tol = 20.0 * delta * delta;

  CauchyData out;
  out.bdim = m.bdim();
  out.L = m.period();
  out.grid = xg;
  out.conj_symmetric = F.conj_symmetric;
  out.modes.resize(F.modes.size());
  std::vector<double> max_abs_mode(F.modes.size(), 0.0),
      dev_mode(F.modes.size(), 0.0);

  parallel_for(static_cast<int>(F.modes.size()), jobs, [&](int i) {
    const auto& mt = F.modes[i];
    out.modes[i].k = mt.k;
    out.modes[i].f1 = ArrayXcd::Zero(xg.n);
    if (F.conj_symmetric && !mode_is_canonical(mt.k)) {
      out.modes[i].f2 = ArrayXcd::Zero(xg.n);
      return;
    }
    ModeProblem p = assemble_problem(m, mt.k, grid);
    ArrayXcd w0 = boundary_row_from_field(mt.F, F.grid, delta, t_end, h0q);
    InwardResult ir = solve_inward(p, w0, InwardClosure::Odd, false);
    ArrayXcd f2(xg.n);
    for (int q = 0; q < xg.n; ++q)
      f2(q) = interp_cubic_supported(ir.f_sigma, ir.f_offset * delta, delta,
                                     std::sqrt(xg.x(q)));
    out.modes[i].f2 = f2;
    max_abs_mode[i] = ir.max_abs;
    dev_mode[i] = ir.parity_dev;
  });
  double max_abs_all = 0.0, dev_all = 0.0;
  for (size_t i = 0; i < F.modes.size(); ++i) {
    max_abs_all = std::max(max_abs_all, max_abs_mode[i]);
    dev_all = std::max(dev_all, dev_mode[i]);
  }

  if (F.conj_symmetric)
    for (size_t i = 0; i < out.modes.size(); ++i) {
      if (mode_is_canonical(out.modes[i].k)) continue;
      const ModeData* src =
          out.find(ModeKey{-out.modes[i].k.k1, -out.modes[i].k.k2});
      if (src) out.modes[i].f2 = src->f2.conjugate();
    }
  out.compute_support();

  // round-trip residual first: fields outside the odd range surface here
  double fnorm = field_norm(F);
  if (fnorm > 0.0) {
    RadiationField back = forward_field(m, out, grid, jobs);
    double num = 0.0;
    for (size_t i = 0; i < F.modes.size(); ++i) {
      ArrayXcd diff = back.modes[i].F - F.modes[i].F;
      num += trapz(diff.abs2().eval(), F.grid.ds);
    }
    double res = std::sqrt(num * F.measure()) / fnorm;
    if (res > rel_tol)
      throw NotInRange("round-trip residual " + std::to_string(res) +
                       " exceeds " + std::to_string(rel_tol));
  }
  // gross parity incompatibility that somehow survived the round trip
  if (max_abs_all > 0.0 && dev_all > 2e-3 * max_abs_all)
    throw ParityViolation("diagonal parity deviation " + std::to_string(dev_all));
  return out;
}

CauchyData evolve_cauchy(const WarpedMetric& m, const CauchyData& d,
                         double tau, const GridSpec& grid) {
  if (tau < 0.0) {
    CauchyData flip = d;
    for (auto& md : flip.modes) md.f2 = -md.f2;
    CauchyData ev = evolve_cauchy(m, flip, -tau, grid);
    for (auto& md : ev.modes) md.f2 = -md.f2;
    return ev;
  }
  const double delta = grid.delta;
  // the evolved support reaches x_hi e^tau, where t' = sqrt(x_hi) e^tau
  double t_need = std::sqrt(1.10 * d.x_hi) * std::exp(tau) + 8.0 * delta;
  double t_end = std::max(std::sqrt(m.x_max()), t_need);

  CauchyData out = d;
  for (auto& md : out.modes) {
    md.f1.setZero();
    md.f2.setZero();
  }
  double cone_lo = d.x_lo * std::exp(-tau) * 0.9;
  double cone_hi = d.x_hi * std::exp(tau) * 1.04;

  for (size_t i = 0; i < d.modes.size(); ++i) {
    const auto& md = d.modes[i];
    if (d.conj_symmetric && !mode_is_canonical(md.k)) continue;
    ModeProblem p = assemble_problem(m, md.k, grid);
    for (Parity par : {Parity::Odd, Parity::Even}) {
      if (par == Parity::Odd && zero_mode(md.f2)) continue;
      if (par == Parity::Even && zero_mode(md.f1)) continue;
      DiagonalData diag = diagonal_data(m, d, md.k, grid, par);
      ForwardResult fr = solve_forward(p, diag, t_end, true);
      for (int q = 0; q < d.grid.n; ++q) {
        double x = d.grid.x(q);
        double tp = std::sqrt(x) * std::exp(0.5 * tau);
        if (tp > t_end - 2.0 * delta || x > m.x_max()) {
          if (x > cone_lo && x < cone_hi)
            throw OutsideTriangle("evolve_cauchy: tau too large for grid");
          continue;
        }
        auto [u, ut] = sample_interior(*fr.field, p, tau, x);
        out.modes[i].f1(q) += u;
        out.modes[i].f2(q) += ut;
      }
    }
  }
  if (d.conj_symmetric)
    for (size_t i = 0; i < out.modes.size(); ++i) {
      if (mode_is_canonical(out.modes[i].k)) continue;
      const ModeData* src =
          out.find(ModeKey{-out.modes[i].k.k1, -out.modes[i].k.k2});
      if (src) {
        out.modes[i].f1 = src->f1.conjugate();
        out.modes[i].f2 = src->f2.conjugate();
      }
    }
  out.compute_support();
  return out;
}

RadiationField convolve_s(const RadiationField& F, const ArrayXd& phi) {
  const int np = static_cast<int>(phi.size());
  const int off = np / 2;
  RadiationField out = F;
  for (auto& mt : out.modes) {
    const ModeTrace* src = F.find(mt.k);
    ArrayXcd g = ArrayXcd::Zero(F.grid.n);
    for (int i = 0; i < F.grid.n; ++i) {
      cplx acc = 0.0;
      for (int j = 0; j < np; ++j) {
        int idx = i - (j - off);
        if (idx < 0 || idx >= F.grid.n) continue;
        if (src->F(idx) == cplx(0.0, 0.0)) continue;
        acc += phi(j) * src->F(idx);
      }
      g(i) = acc * F.grid.ds;
    }
    mt.F = g;
  }
  return out;
}

ArrayXd make_mollifier(double ds, double eps) {
  int half = static_cast<int>(std::ceil(eps / ds));
  int n = 2 * half + 1;
  ArrayXd phi(n);
  for (int i = 0; i < n; ++i) phi(i) = smooth_bump((i - half) * ds, 0.0, eps);
  double z = trapz(phi, ds);
  return phi / z;
}

double field_norm(const RadiationField& F) {
  double total = 0.0;
  for (const auto& mt : F.modes) total += trapz(mt.F.abs2().eval(), F.grid.ds);
  return std::sqrt(total * F.measure());
}

RadiationField translate(const RadiationField& F, double tau) {
  RadiationField out = F;
  for (auto& mt : out.modes) {
    const ModeTrace* src = F.find(mt.k);
    ArrayXcd g(F.grid.n);
    for (int i = 0; i < F.grid.n; ++i) {
      double s = F.grid.s(i) + tau;
      if (s < F.grid.s0 || s > F.grid.s_last())
        g(i) = 0.0;
      else
        g(i) = interp_cubic_supported(src->F, F.grid.s0, F.grid.ds, s);
    }
    mt.F = g;
  }
  return out;
}

const ModeTrace* FourierField::find(ModeKey k) const {
  for (const auto& mt : modes)
    if (mt.k == k) return &mt;
  return nullptr;
}

FourierField fourier_field(const RadiationField& F, double lambda_max,
                           int n_lambda, bool check_tail) {
  double mx = F.max_abs();
  if (check_tail && mx > 0.0) {
    for (const auto& mt : F.modes) {
      if (std::abs(mt.F(F.grid.n - 1)) > 1e-6 * mx)
        throw TailNotDecayed("field at the upper window edge is " +
                             std::to_string(std::abs(mt.F(F.grid.n - 1)) / mx) +
                             " of max");
    }
  }
  FourierField out;
  out.lambda.resize(n_lambda);
  for (int l = 0; l < n_lambda; ++l)
    out.lambda(l) = n_lambda == 1
                        ? lambda_max
                        : -lambda_max + 2.0 * lambda_max * l / (n_lambda - 1);
  out.modes.resize(F.modes.size());
  for (size_t mi = 0; mi < F.modes.size(); ++mi) {
    out.modes[mi].k = F.modes[mi].k;
    ArrayXcd& H = out.modes[mi].F;
    H.resize(n_lambda);
    const ArrayXcd& f = F.modes[mi].F;
    for (int l = 0; l < n_lambda; ++l) {
      double lam = out.lambda(l);
      ArrayXcd ker(F.grid.n);
      for (int i = 0; i < F.grid.n; ++i)
        ker(i) = f(i) * std::exp(cplx(0.0, -lam * F.grid.s(i)));
      H(l) = trapz(ker, F.grid.ds);
    }
  }
  return out;
}

}  // namespace ahrad
