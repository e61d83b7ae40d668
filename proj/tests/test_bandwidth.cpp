#include <doctest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "steinctrl/bandwidth.hpp"
#include "steinctrl/cf_estimator.hpp"
#include "steinctrl/sampling.hpp"

using namespace steinctrl;

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

Point pt1(double a) {
  Point x(1);
  x << a;
  return x;
}

SteinKernel make_kernel(int d, int b, double h, double c = 1.0) {
  ModifiedKernel mk{BaseKernel{RadialProfile::wendland(b, d), h},
                    BoundaryWeight::unit_cube_product(Box::unit(d))};
  return SteinKernel(std::move(mk), uniform_score(d), c);
}

}  // namespace

TEST_CASE("golden section finds the maximum of a concave objective") {
  auto f = [](double h) { return -(h - 3.0) * (h - 3.0); };
  BandwidthSearch s;  // (0, 10], 10 reductions
  const GoldenResult r = golden_section_max(f, s);
  CHECK(!r.all_failed);
  CHECK(!r.tie);
  // final bracket width is (hi-lo) * invphi^iters ~ 0.0813
  CHECK(std::abs(r.arg - 3.0) < 0.1);

  s.iters = 60;
  s.rel_tol = 0.0;
  const GoldenResult r2 = golden_section_max(f, s);
  CHECK(std::abs(r2.arg - 3.0) < 1e-6);
}

TEST_CASE("golden section runs a fixed reduction schedule deterministically") {
  auto f = [](double h) { return std::sin(h) + 0.1 * h; };
  BandwidthSearch s;
  s.lo = 0.0;
  s.hi = 7.0;
  s.iters = 13;
  const GoldenResult a = golden_section_max(f, s);
  const GoldenResult b = golden_section_max(f, s);
  CHECK(a.arg == b.arg);
  CHECK(a.value == b.value);
  CHECK(a.value == doctest::Approx(f(a.arg)).epsilon(1e-15));
}

TEST_CASE("constant objectives are reported as ties") {
  auto f = [](double) { return 1.5; };
  const GoldenResult r = golden_section_max(f, {});
  CHECK(r.tie);
  CHECK(!r.all_failed);
  CHECK(r.value == 1.5);
  CHECK(r.arg > 0.0);
  CHECK(r.arg <= 10.0);
}

TEST_CASE("ties prefer the smaller argument") {
  // piecewise: flat maximum plateau on [2, 8]
  auto f = [](double h) {
    if (h < 2.0) return h - 2.0;
    if (h > 8.0) return 8.0 - h;
    return 0.0;
  };
  BandwidthSearch s;
  s.iters = 30;
  s.rel_tol = 0.0;
  const GoldenResult r = golden_section_max(f, s);
  CHECK(r.value == 0.0);
  // among equal values the search keeps the leftmost probe it saw
  CHECK(r.arg < 4.0);
}

TEST_CASE("objectives that always fail give the midpoint and a flag") {
  auto f = [](double) { return kNegInf; };
  BandwidthSearch s;
  s.lo = 1.0;
  s.hi = 3.0;
  const GoldenResult r = golden_section_max(f, s);
  CHECK(r.all_failed);
  CHECK(r.arg == 2.0);
}

TEST_CASE("candidates at the open lower endpoint are never evaluated") {
  int calls_at_lo = 0;
  auto f = [&](double h) {
    if (h <= 0.5 + 1e-12) ++calls_at_lo;
    return -h;
  };
  BandwidthSearch s;
  s.lo = 0.5;
  s.hi = 1.5;
  s.iters = 25;
  s.rel_tol = 0.0;
  const GoldenResult r = golden_section_max(f, s);
  CHECK(calls_at_lo == 0);
  CHECK(r.arg > 0.5);
}

TEST_CASE("invalid search settings throw") {
  auto f = [](double h) { return h; };
  BandwidthSearch s;
  s.lo = 2.0;
  s.hi = 1.0;
  CHECK_THROWS_AS(golden_section_max(f, s), std::invalid_argument);
  s.lo = -1.0;
  s.hi = 1.0;
  CHECK_THROWS_AS(golden_section_max(f, s), std::invalid_argument);
  s.lo = 0.0;
  s.iters = 0;
  CHECK_THROWS_AS(golden_section_max(f, s), std::invalid_argument);
}

TEST_CASE("log marginal likelihood closed forms for one observation") {
  // K = [1], f = [0.3]:  -0.5*0.09 - 0 - 0.5 log(2 pi)
  Eigen::MatrixXd K(1, 1);
  Eigen::VectorXd f(1);
  K << 1.0;
  f << 0.3;
  CHECK(log_marginal_likelihood_from_gram(K, f, 1.0) ==
        doctest::Approx(-0.045 - 0.9189385332046727).epsilon(1e-10));

  // K = [4], f = [0]:  -0.5 log 4 - 0.5 log(2 pi)
  K << 4.0;
  f << 0.0;
  CHECK(log_marginal_likelihood_from_gram(K, f, 1.0) ==
        doctest::Approx(-std::log(2.0) - 0.9189385332046727).epsilon(1e-10));
}

TEST_CASE("log marginal likelihood matches a dense oracle") {
  Rng rng(61);
  const int m = 10;
  Eigen::MatrixXd A(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) A(i, j) = rng.uniform(-1.0, 1.0);
  Eigen::MatrixXd K = A.transpose() * A + m * Eigen::MatrixXd::Identity(m, m);
  Eigen::VectorXd f(m);
  for (int i = 0; i < m; ++i) f[i] = rng.uniform(-2.0, 2.0);

  const double scale = K.trace() / m;
  const double got = log_marginal_likelihood_from_gram(K, f, scale);

  const Eigen::MatrixXd Kj = K + (1e-10 * scale) * Eigen::MatrixXd::Identity(m, m);
  const double want = -0.5 * f.dot(Kj.inverse() * f) - 0.5 * std::log(Kj.determinant()) -
                      0.5 * m * std::log(2.0 * M_PI);
  CHECK(oracles::close(got, want, 1e-9, 1e-9));
}

TEST_CASE("log marginal likelihood signals failure as -inf") {
  Eigen::MatrixXd K(2, 2);
  K << 1.0, 2.0, 2.0, 1.0;  // indefinite
  Eigen::VectorXd f(2);
  f << 0.1, 0.2;
  CHECK(log_marginal_likelihood_from_gram(K, f, 1.0) == kNegInf);
  f << 0.1, std::nan("");
  CHECK_THROWS_AS(log_marginal_likelihood_from_gram(K, f, 1.0), std::invalid_argument);
}

TEST_CASE("bandwidth optimization is golden section over the likelihood") {
  Rng rng(62);
  const SteinKernel proto = make_kernel(1, 1, 0.5);
  PointList pts;
  std::vector<double> f;
  for (int i = 0; i < 12; ++i) {
    pts.push_back(pt1(rng.uniform(0.05, 0.95)));
    f.push_back(std::sin(3.0 * pts.back()[0]));
  }
  BandwidthSearch s;
  s.lo = 0.05;
  s.hi = 3.0;
  s.iters = 12;

  const BandwidthResult br = optimize_bandwidth(proto, pts, f, s);
  const GoldenResult gr = golden_section_max(
      [&](double h) { return log_marginal_likelihood(proto.with_bandwidth(h), pts, f); }, s);
  CHECK(br.h == gr.arg);
  CHECK(br.all_failed == gr.all_failed);
  CHECK(!br.all_failed);
  CHECK(br.h > s.lo);
  CHECK(br.h <= s.hi);
}

TEST_CASE("split fraction from smoothness") {
  CHECK(optimal_split(1.0, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(optimal_split(2.0, 2) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(optimal_split(1.0, 2) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(optimal_split(1.5, 1) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(optimal_split(0.0, 3) == 0.0);
  CHECK(optimal_split(std::numeric_limits<double>::infinity(), 2) == 1.0);
  CHECK_THROWS_AS(optimal_split(1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(optimal_split(-1.0, 1), std::invalid_argument);
}
