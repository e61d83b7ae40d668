#include "steinctrl/bandwidth.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "steinctrl/linalg.hpp"

namespace steinctrl {

namespace {

constexpr double neg_inf = -std::numeric_limits<double>::infinity();
constexpr double inv_phi = 0.6180339887498948482;  // (sqrt(5) - 1) / 2

}  // namespace

GoldenResult golden_section_max(const std::function<double(double)>& f,
                                const BandwidthSearch& search) {
  if (!(search.lo >= 0.0) || !(search.hi > search.lo))
    throw std::invalid_argument("golden_section_max: need 0 <= lo < hi");
  if (search.iters < 1) throw std::invalid_argument("golden_section_max: iters must be >= 1");

  const double lo = search.lo, hi = search.hi;
  auto guarded = [&](double x) { return (x - lo <= 1e-12) ? neg_inf : f(x); };

  GoldenResult best;
  best.arg = 0.5 * (lo + hi);
  best.value = neg_inf;
  bool any_finite = false;
  double first_finite = 0.0;
  bool values_vary = false;

  auto consider = [&](double x, double v) {
    if (std::isfinite(v)) {
      if (!any_finite) {
        any_finite = true;
        first_finite = v;
      } else if (v != first_finite) {
        values_vary = true;
      }
    }
    if (v > best.value || (v == best.value && x < best.arg)) {
      best.value = v;
      best.arg = x;
    }
  };

  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = guarded(c), fd = guarded(d);
  consider(c, fc);
  consider(d, fd);

  for (int it = 0; it < search.iters; ++it) {
    if (b - a < search.rel_tol * (hi - lo)) break;
    if (fc >= fd) {  // ties move the bracket toward the smaller argument
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = guarded(c);
      consider(c, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = guarded(d);
      consider(d, fd);
    }
  }

  if (!any_finite) {
    GoldenResult r;
    r.arg = 0.5 * (lo + hi);
    r.value = neg_inf;
    r.all_failed = true;
    return r;
  }
  best.tie = !values_vary;
  return best;
}

double log_marginal_likelihood_from_gram(const Eigen::MatrixXd& kplus,
                                         const Eigen::VectorXd& fvals, double jitter_scale) {
  const Eigen::Index m = kplus.rows();
  if (m == 0 || fvals.size() != m)
    throw std::invalid_argument("log_marginal_likelihood: shape mismatch");
  for (Eigen::Index i = 0; i < m; ++i)
    if (!std::isfinite(fvals[i]))
      throw std::invalid_argument("log_marginal_likelihood: non-finite function value");

  const SpdFactor f = jittered_llt(kplus, jitter_scale);
  if (!f.ok) return neg_inf;
  const double quad = fvals.dot(f.solve(fvals));
  return -0.5 * quad - 0.5 * f.log_det() -
         0.5 * static_cast<double>(m) * std::log(2.0 * std::numbers::pi);
}

double log_marginal_likelihood(const SteinKernel& sk, const PointList& states,
                               const std::vector<double>& fvals) {
  if (states.empty() || states.size() != fvals.size())
    throw std::invalid_argument("log_marginal_likelihood: shape mismatch");
  const Eigen::MatrixXd K0 = gram(sk, states, GramKind::K0);
  const Eigen::MatrixXd Kp = (K0.array() + sk.c).matrix();
  const Eigen::VectorXd f0 =
      Eigen::Map<const Eigen::VectorXd>(fvals.data(), static_cast<Eigen::Index>(fvals.size()));
  // Jitter scale comes from the Stein block so a large constant offset c
  // cannot inflate the regularization.
  return log_marginal_likelihood_from_gram(Kp, f0, K0.trace() / static_cast<double>(K0.rows()));
}

BandwidthResult optimize_bandwidth(const SteinKernel& proto, const PointList& states,
                                   const std::vector<double>& fvals,
                                   const BandwidthSearch& search) {
  auto objective = [&](double h) {
    return log_marginal_likelihood(proto.with_bandwidth(h), states, fvals);
  };
  const GoldenResult g = golden_section_max(objective, search);
  BandwidthResult r;
  r.h = g.arg;
  r.all_failed = g.all_failed;
  r.tie = g.tie;
  return r;
}

double optimal_split(double smoothness, int d) {
  if (d < 1) throw std::invalid_argument("optimal_split: dimension must be >= 1");
  if (smoothness < 0.0) throw std::invalid_argument("optimal_split: smoothness must be >= 0");
  if (std::isinf(smoothness)) return 1.0;
  const double nu = 2.0 * smoothness / static_cast<double>(d);
  return nu / (1.0 + nu);
}

}  // namespace steinctrl
