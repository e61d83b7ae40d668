#include <doctest.h>

#include "oracles.hpp"
#include "steinctrl/base_kernel.hpp"
#include "steinctrl/sampling.hpp"

using namespace steinctrl;

namespace {

Point rand_point(Rng& rng, int d, double lo, double hi) {
  Point x(d);
  for (int i = 0; i < d; ++i) x[i] = rng.uniform(lo, hi);
  return x;
}

std::vector<BaseKernel> test_kernels(int d) {
  std::vector<BaseKernel> ks;
  for (int b : {0, 1, 2})
    for (double h : {0.3, 1.0}) ks.push_back(BaseKernel{RadialProfile::wendland(b, d), h});
  ks.push_back(BaseKernel{RadialProfile::matern72(d), 0.5});
  return ks;
}

}  // namespace

TEST_CASE("kernel value is the profile at scaled distance") {
  const BaseKernel k{RadialProfile::wendland(0, 1), 2.0};
  Point x(1), xp(1);
  x << 0.0;
  xp << 1.0;  // r/h = 0.5
  CHECK(k.eval(x, xp) == doctest::Approx(0.3125).epsilon(1e-15));
  CHECK(k.eval(x, x) == 1.0);
}

TEST_CASE("gradient matches finite differences") {
  Rng rng(91);
  for (int d : {1, 2, 3}) {
    for (const BaseKernel& k : test_kernels(d)) {
      for (int trial = 0; trial < 25; ++trial) {
        const Point x = rand_point(rng, d, 0.0, 1.0);
        const Point xp = rand_point(rng, d, 0.0, 1.0);
        const double r = (x - xp).norm();
        // stay away from r=0 and the support seam, where the difference
        // stencil itself loses accuracy (seam behavior is checked exactly
        // elsewhere)
        if (r < 0.05 || std::abs(r - k.h) < 0.02 * k.h) continue;
        const Point g = k.grad_x(x, xp);
        const Point gfd = oracles::fd_grad([&](const Point& y) { return k.eval(y, xp); }, x,
                                           5e-4 * k.h);
        for (int i = 0; i < d; ++i) CHECK(oracles::close(g[i], gfd[i], 1e-5, 1e-7));
      }
    }
  }
}

TEST_CASE("cross divergence matches finite differences") {
  Rng rng(92);
  for (int d : {1, 2, 3}) {
    for (const BaseKernel& k : test_kernels(d)) {
      for (int trial = 0; trial < 15; ++trial) {
        const Point x = rand_point(rng, d, 0.0, 1.0);
        const Point xp = rand_point(rng, d, 0.0, 1.0);
        const double r = (x - xp).norm();
        if (r < 0.05 || std::abs(r - k.h) < 0.02 * k.h) continue;
        const double got = k.cross_div(x, xp);
        const double fd = oracles::fd_cross_div(
            [&](const Point& a, const Point& b) { return k.eval(a, b); }, x, xp, 5e-4 * k.h);
        CHECK(oracles::close(got, fd, 1e-4, 1e-6));
      }
    }
  }
}

TEST_CASE("coincident-point limits") {
  for (int d : {1, 2, 3}) {
    for (const BaseKernel& k : test_kernels(d)) {
      const Point x = Point::Constant(d, 0.4);
      CHECK(k.grad_x(x, x).norm() == 0.0);
      const double expected = -d * k.profile.phi_d2(0.0) / (k.h * k.h);
      CHECK(k.cross_div(x, x) == doctest::Approx(expected).epsilon(1e-14));
      CHECK(k.cross_div(x, x) > 0.0);
    }
  }
}

TEST_CASE("compact support carries through derivatives") {
  const BaseKernel k{RadialProfile::wendland(1, 2), 0.25};
  Point x(2), xp(2);
  x << 0.1, 0.1;
  xp << 0.9, 0.9;  // distance > h
  CHECK(k.eval(x, xp) == 0.0);
  CHECK(k.grad_x(x, xp).norm() == 0.0);
  CHECK(k.cross_div(x, xp) == 0.0);
}

TEST_CASE("symmetry in the two arguments") {
  Rng rng(93);
  const BaseKernel k{RadialProfile::wendland(2, 3), 0.7};
  for (int trial = 0; trial < 50; ++trial) {
    const Point x = rand_point(rng, 3, 0.0, 1.0);
    const Point xp = rand_point(rng, 3, 0.0, 1.0);
    CHECK(k.eval(x, xp) == k.eval(xp, x));
    CHECK(k.cross_div(x, xp) == k.cross_div(xp, x));
    CHECK((k.grad_x(x, xp) + k.grad_x(xp, x)).norm() == 0.0);
  }
}

TEST_CASE("dimension mismatches are rejected") {
  const BaseKernel k{RadialProfile::wendland(0, 2), 1.0};
  Point x(2), bad(3);
  x.setConstant(0.5);
  bad.setConstant(0.5);
  CHECK_THROWS_AS(k.eval(x, bad), std::invalid_argument);
  CHECK_THROWS_AS((BaseKernel{RadialProfile::wendland(0, 2), 0.0}), std::invalid_argument);
}
