#pragma once

#include <functional>
#include <vector>

#include "steinctrl/stein_kernel.hpp"

namespace steinctrl {

// Bracket and iteration budget for the bandwidth search. The search runs
// exactly `iters` golden-section interval reductions over (lo, hi]; rel_tol
// is a collapse floor that only stops early if the bracket shrinks below
// rel_tol * (hi - lo) first (never reached with the defaults).
struct BandwidthSearch {
  double lo = 0.0;
  double hi = 10.0;
  int iters = 10;
  double rel_tol = 1e-4;
};

struct GoldenResult {
  double arg = 0.0;
  double value = 0.0;
  bool all_failed = false;  // every evaluation was -inf
  bool tie = false;         // objective constant across all evaluations
};

// Maximizes f over (search.lo, search.hi] by golden-section search. Arguments
// within 1e-12 of lo are treated as invalid (-inf). Ties are broken toward
// the smaller argument. Deterministic: same f and search give the same
// result.
GoldenResult golden_section_max(const std::function<double(double)>& f,
                                const BandwidthSearch& search);

// Gaussian-process log marginal likelihood of fvals under the kplus Gram
// matrix: -1/2 f'K^-1 f - 1/2 log|K| - m/2 log(2 pi), computed through the
// same jittered factorization as the fit path. Returns -inf when the
// factorization fails outright.
double log_marginal_likelihood_from_gram(const Eigen::MatrixXd& kplus,
                                         const Eigen::VectorXd& fvals, double jitter_scale);
double log_marginal_likelihood(const SteinKernel& sk, const PointList& states,
                               const std::vector<double>& fvals);

struct BandwidthResult {
  double h = 0.0;
  bool all_failed = false;
  bool tie = false;
};

// Marginal-likelihood bandwidth selection: maximizes the log marginal
// likelihood of (states, fvals) over the bandwidth of `proto`.
BandwidthResult optimize_bandwidth(const SteinKernel& proto, const PointList& states,
                                   const std::vector<double>& fvals,
                                   const BandwidthSearch& search = {});

// Theoretically motivated split fraction rho* = nu / (1 + nu) with
// nu = 2 min(a,b) / d, where min(a,b) is the joint smoothness of the target
// and the kernel. An infinite smoothness argument gives rho* = 1.
double optimal_split(double smoothness, int d);

// Per-fold bandwidth policy for leave-one-out estimation.
struct BandwidthPolicy {
  enum class Mode { Fixed, Optimize };
  Mode mode = Mode::Fixed;
  double fixed_h = 0.5;
  BandwidthSearch search;

  static BandwidthPolicy fixed(double h) {
    BandwidthPolicy p;
    p.mode = Mode::Fixed;
    p.fixed_h = h;
    return p;
  }
  static BandwidthPolicy optimize(BandwidthSearch s = {}) {
    BandwidthPolicy p;
    p.mode = Mode::Optimize;
    p.search = s;
    return p;
  }
};

}  // namespace steinctrl
