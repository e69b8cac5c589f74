#include <doctest.h>

#include <random>

#include "ahrad/data.hpp"

using namespace ahrad;

namespace {

XGrid test_grid() { return XGrid{1e-3, (1.0 - 1e-3) / 1499, 1500}; }

CauchyData mode0_data(const WarpedMetric& m, std::vector<BumpSpec> f1,
                      std::vector<BumpSpec> f2) {
  CauchyData d;
  d.bdim = m.bdim();
  d.L = m.period();
  d.grid = test_grid();
  ModeData md;
  md.k = {0, 0};
  md.f1 = sample_bumps(d.grid, f1);
  md.f2 = sample_bumps(d.grid, f2);
  d.modes.push_back(md);
  d.compute_support();
  return d;
}

}  // namespace

TEST_CASE("zero data has zero energy") {
  WarpedMetric m = build_metric("hyperbolic", {}, 1, 2.0 * M_PI, 1.0);
  CauchyData d = mode0_data(m, {}, {});
  CHECK(energy_norm(m, d) == 0.0);
}

TEST_CASE("pure-f2 energy reduces to the weighted L2 integral") {
  WarpedMetric m = build_metric("hyperbolic", {}, 1, 2.0 * M_PI, 1.0);
  BumpSpec b;
  b.center = 0.4;
  b.halfwidth = 0.1;
  CauchyData d = mode0_data(m, {}, {b});
  // 1/2 * L * int |f2|^2 c x^{-2} dx  (n = 1, c = 1)
  const XGrid& g = d.grid;
  ArrayXd integ(g.n);
  for (int i = 0; i < g.n; ++i)
    integ(i) = std::norm(d.modes[0].f2(i)) / (g.x(i) * g.x(i));
  double expect = 0.5 * 2.0 * M_PI * trapz(integ, g.dx);
  CHECK(energy_norm(m, d) == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("energy is absolutely homogeneous of degree 2") {
  WarpedMetric m = build_metric("hyperbolic", {}, 1, 2.0 * M_PI, 1.0);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ut(-3.0, 3.0);
  CauchyData d = random_cauchy_data(m, test_grid(), 2, 0.15, 0.6, 11);
  double e = energy_norm(m, d);
  for (int trial = 0; trial < 5; ++trial) {
    double t = ut(rng);
    CauchyData ds = d;
    for (auto& md : ds.modes) {
      md.f1 *= t;
      md.f2 *= t;
    }
    CHECK(energy_norm(m, ds) == doctest::Approx(t * t * e).epsilon(1e-9));
  }
}

TEST_CASE("pure-f2 energy is nonnegative; f1 energy cross-checked on a 10x grid") {
  WarpedMetric m = build_metric("hyperbolic", {}, 1, 2.0 * M_PI, 1.0);
  BumpSpec b;
  b.center = 0.35;
  b.halfwidth = 0.12;
  CauchyData d2 = mode0_data(m, {}, {b});
  CHECK(energy_norm(m, d2) >= 0.0);

  // f1 = x^{1/2} * bump, f2 = 0: positive, stable under a 10x finer grid
  auto build_on = [&](const XGrid& g) {
    CauchyData d;
    d.bdim = 1;
    d.L = 2.0 * M_PI;
    d.grid = g;
    ModeData md;
    md.k = {0, 0};
    md.f1.resize(g.n);
    md.f2 = ArrayXcd::Zero(g.n);
    for (int i = 0; i < g.n; ++i)
      md.f1(i) = std::sqrt(g.x(i)) * smooth_bump(g.x(i), 0.35, 0.12);
    d.modes.push_back(md);
    d.compute_support();
    return d;
  };
  XGrid g1 = test_grid();
  XGrid g10{g1.x0, g1.dx / 10.0, (g1.n - 1) * 10 + 1};
  double e1 = energy_norm(m, build_on(g1));
  double e10 = energy_norm(m, build_on(g10));
  CHECK(e1 > 0.0);
  CHECK(e1 == doctest::Approx(e10).epsilon(1e-5));
}

TEST_CASE("unresolved quadrature is reported") {
  WarpedMetric m = build_metric("hyperbolic", {}, 1, 2.0 * M_PI, 1.0);
  XGrid coarse{1e-2, (1.0 - 1e-2) / 39, 40};
  CauchyData d;
  d.bdim = 1;
  d.L = 2.0 * M_PI;
  d.grid = coarse;
  ModeData md;
  md.k = {0, 0};
  md.f1 = ArrayXcd::Zero(coarse.n);
  md.f2.resize(coarse.n);
  for (int i = 0; i < coarse.n; ++i)
    md.f2(i) = smooth_bump(coarse.x(i), 0.2, 0.03);  // unresolved on 40 nodes
  d.modes.push_back(md);
  d.compute_support();
  CHECK_THROWS_AS(energy_norm(m, d), QuadratureUnresolved);
}

TEST_CASE("support markers bracket the samples") {
  WarpedMetric m = build_metric("hyperbolic", {}, 1, 2.0 * M_PI, 1.0);
  BumpSpec b;
  b.center = 0.3;
  b.halfwidth = 0.05;
  CauchyData d = mode0_data(m, {}, {b});
  // the markers bracket samples above the 1e-14 floor; the C-inf bump tails
  // drop below it slightly inside the nominal support
  CHECK(d.x_lo >= 0.245);
  CHECK(d.x_lo <= 0.26);
  CHECK(d.x_hi >= 0.34);
  CHECK(d.x_hi <= 0.355);
}

TEST_CASE("smooth bump has exact compact support") {
  CHECK(smooth_bump(0.2499, 0.3, 0.05) == 0.0);
  CHECK(smooth_bump(0.3501, 0.3, 0.05) == 0.0);
  CHECK(smooth_bump(0.3, 0.3, 0.05) == 1.0);
}
