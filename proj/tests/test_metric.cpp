#include <doctest.h>

#include "ahrad/metric.hpp"

using namespace ahrad;

TEST_CASE("hyperbolic profile: c = 1, A = 0, |h| = 1") {
  WarpedMetric m = build_metric("hyperbolic", {}, 1, 2.0 * M_PI, 1.0);
  for (double x : {0.0, 0.3, 0.77, 1.0}) {
    CHECK(m.c(x) == 1.0);
    CHECK(m.A(x) == 0.0);
    CHECK(m.h_det(x) == 1.0);
  }
}

TEST_CASE("funnel A matches the closed form and finite differences of c") {
  ProfileParams pp;
  pp.a = 0.1;
  WarpedMetric m = build_metric("funnel", pp, 1, 2.0 * M_PI, 1.0);
  // A = (0.2 x sigma + 0.1 x^2 sigma') / (1 + 0.1 x^2 sigma) for n = 1;
  // checked against centered differences of c.
  for (double x : {0.11, 0.3, 0.52, 0.8, 0.95}) {
    double h = 1e-6, h2 = 1e-4;
    double dc_fd = (m.c(x + h) - m.c(x - h)) / (2.0 * h);
    CHECK(m.dc(x) == doctest::Approx(dc_fd).epsilon(1e-7));
    CHECK(m.A(x) == doctest::Approx(dc_fd / m.c(x)).epsilon(1e-7));
    double d2c_fd = (m.c(x + h2) - 2.0 * m.c(x) + m.c(x - h2)) / (h2 * h2);
    CHECK(m.d2c(x) == doctest::Approx(d2c_fd).epsilon(1e-6));
    double dA_fd = (m.A(x + h) - m.A(x - h)) / (2.0 * h);
    CHECK(m.dA(x) == doctest::Approx(dA_fd).epsilon(1e-6));
  }
}

TEST_CASE("bump derivatives match finite differences") {
  ProfileParams pp;
  pp.a = 0.05;
  pp.x0 = 0.5;
  pp.w = 0.08;
  WarpedMetric m = build_metric("bump", pp, 1, 2.0 * M_PI, 1.0);
  for (double x : {0.35, 0.5, 0.62}) {
    double h = 1e-6, h2 = 1e-4;
    double dc_fd = (m.c(x + h) - m.c(x - h)) / (2.0 * h);
    CHECK(m.dc(x) == doctest::Approx(dc_fd).epsilon(1e-6));
    double d2c_fd = (m.c(x + h2) - 2.0 * m.c(x) + m.c(x - h2)) / (h2 * h2);
    CHECK(m.d2c(x) == doctest::Approx(d2c_fd).epsilon(1e-5));
  }
}

TEST_CASE("nonpositive warp is rejected") {
  ProfileParams pp;
  pp.a = -2.0;
  pp.x0 = 0.5;
  pp.w = 0.08;
  CHECK_THROWS_AS(build_metric("bump", pp, 1, 2.0 * M_PI, 1.0),
                  NonPositiveWarp);
}

TEST_CASE("bump too close to the boundary breaks c'(0) = 0") {
  ProfileParams pp;
  pp.a = 0.3;
  pp.x0 = 0.1;  // x0/w = 1.25: c'(0) far above 1e-12
  pp.w = 0.08;
  CHECK_THROWS_AS(build_metric("bump", pp, 1, 2.0 * M_PI, 1.0),
                  BadNormalization);
}

TEST_CASE("boundary normalization holds for every profile") {
  ProfileParams funnel;
  funnel.a = 0.1;
  ProfileParams bump;
  bump.a = 0.05;
  for (auto m : {build_metric("hyperbolic", {}, 1, 2.0 * M_PI, 1.0),
                 build_metric("funnel", funnel, 1, 2.0 * M_PI, 1.0),
                 build_metric("bump", bump, 1, 2.0 * M_PI, 1.0)}) {
    CHECK(m.h_det(0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(m.A(0.0)) < 1e-11);
  }
}

TEST_CASE("mode frequency: trivial values and symmetry") {
  WarpedMetric m = build_metric("hyperbolic", {}, 1, 2.0 * M_PI, 1.0);
  CHECK(mode_frequency2(m, {0, 0}, 0.4) == 0.0);
  CHECK(mode_frequency2(m, {1, 0}, 0.3) == doctest::Approx(1.0));

  ProfileParams pp;
  pp.a = 0.1;
  WarpedMetric f = build_metric("funnel", pp, 1, 2.0 * M_PI, 1.0);
  double c05 = f.c(0.5);
  CHECK(mode_frequency2(f, {2, 0}, 0.5) == doctest::Approx(4.0 / (c05 * c05)));
  // even in k, nonincreasing in c
  CHECK(mode_frequency2(f, {-2, 0}, 0.5) == mode_frequency2(f, {2, 0}, 0.5));
  CHECK(mode_frequency2(f, {2, 0}, 0.5) <= mode_frequency2(m, {2, 0}, 0.5));
}

TEST_CASE("isotropic torus frequency for n = 2") {
  WarpedMetric m = build_metric("hyperbolic", {}, 2, 2.0 * M_PI, 1.0);
  CHECK(mode_frequency2(m, {3, 4}, 0.2) == doctest::Approx(25.0));
}
