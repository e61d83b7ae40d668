#pragma once

#include <string>
#include <utility>
#include <vector>

#include "steinctrl/bandwidth.hpp"
#include "steinctrl/stein_kernel.hpp"

namespace steinctrl {

// Removes later occurrences of duplicate states (max-coordinate distance
// <= tol), keeping the first occurrence and its function value.
std::pair<PointList, std::vector<double>> dedupe(const PointList& states,
                                                 const std::vector<double>& fvals,
                                                 double tol = 0.0);

// A sample split into a fitting set D0 (deduplicated prefix) and an
// evaluation set D1 (untouched suffix). split_index is the raw cut position;
// d0 may be shorter after deduplication.
struct SplitDataset {
  PointList states;
  std::vector<double> fvals;
  int split_index = 0;
  double rho = 0.5;

  PointList d0_states;
  std::vector<double> d0_fvals;

  int n() const { return static_cast<int>(states.size()); }
  int m() const { return static_cast<int>(d0_states.size()); }
  int n1() const { return n() - split_index; }
};

SplitDataset make_split_at(PointList states, std::vector<double> fvals, int split_index,
                           double dedupe_tol = 0.0);
SplitDataset make_split(PointList states, std::vector<double> fvals, double rho,
                        double dedupe_tol = 0.0);

enum class FitStatus { FullRank, FallbackZero };

// Kernel interpolant f_m = sum_i a_i kplus(., x_i) fitted on D0. `beta` is
// the recovered constant component in the c -> infinity limit;
// `fitted_integral` is the exact integral of f_m under the target
// (c * sum a_i, since the zero-mean part integrates away). FallbackZero
// means f_m == 0: the downstream estimator degrades to plain averaging.
struct ControlFunctionalFit {
  Eigen::VectorXd coeffs;
  double beta = 0.0;
  double fitted_integral = 0.0;
  PointList training;
  FitStatus status = FitStatus::FallbackZero;
  double jitter_used = 0.0;
};

ControlFunctionalFit fit(const SteinKernel& sk, const PointList& states,
                         const std::vector<double>& fvals);

double predict(const ControlFunctionalFit& f, const SteinKernel& sk, const Point& x);

enum class EstimatorKind { MC, CF, LOOCF };

struct EstimateSummary {
  double value = 0.0;
  EstimatorKind kind = EstimatorKind::MC;
  int m_used = 0;
  int n1_used = 0;
  std::vector<std::string> flags;
};

// Plain sample mean.
EstimateSummary estimate_mc(const std::vector<double>& fvals);

// Sample-splitting control-functional estimator: fits the surrogate on D0
// and averages the corrected residual over D1,
//   (1/n1) sum_{x in D1} [ f(x) - k0(x, D0) K0^{-1} (f0 - beta 1) ],
// with beta = (1'K0^{-1}f0)/(1'K0^{-1}1). Unbiased conditional on D0. Falls
// back to the plain D1 mean (flag "fallback_zero") when the Gram
// factorization fails.
EstimateSummary estimate_cf(const SteinKernel& sk, const SplitDataset& data);

// Leave-one-out variant: each state is predicted from the other n-1, with
// the bandwidth chosen per fold according to `policy`.
EstimateSummary estimate_loo(const SteinKernel& sk, const PointList& states,
                             const std::vector<double>& fvals, const BandwidthPolicy& policy);

struct MseSummary {
  double mse = 0.0;
  double se = 0.0;
  int replicates = 0;
};

MseSummary mse_summary(const std::vector<double>& estimates, double truth);

}  // namespace steinctrl
