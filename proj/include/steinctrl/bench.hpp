#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "steinctrl/cf_estimator.hpp"

namespace steinctrl {

enum class Design { IIDConvergence, TorusStepSweep };

// Bandwidth handling for the harness: either a fixed value or marginal
// likelihood optimization on the fitting set (per fold for LOOCF).
struct BandwidthSpec {
  bool optimize = false;
  double fixed = 0.5;
  BandwidthSearch search;
};

struct ExperimentConfig {
  Design design = Design::IIDConvergence;
  int d = 1;
  int omega = 1;
  std::vector<int> b_list{1};
  std::vector<int> n_list;
  std::vector<double> eps_list;  // TorusStepSweep only
  int replicates = 100;
  double rho = 0.5;
  bool rho_optimal = false;  // use optimal_split(b, d) instead of rho
  BandwidthSpec bandwidth;
  double c = 1.0;
  std::uint64_t seed = 0;
  std::vector<EstimatorKind> estimators{EstimatorKind::MC, EstimatorKind::CF,
                                        EstimatorKind::LOOCF};
  int burn_in = 0;
  bool timing = false;  // real wall times break byte-determinism, so opt-in
  std::string rng = "mt19937_64/u53";
};

void validate(const ExperimentConfig& cfg);

struct ResultRow {
  std::string estimator;
  int d = 1;
  int b = 1;
  int omega = 1;
  int n = 0;
  std::optional<double> eps;
  double mse = 0.0;
  double se = 0.0;
  double mean_estimate = 0.0;
  int fallback_count = 0;
  double wall_time_ms = 0.0;
};

// The benchmark integrand 1 + sin(2 pi omega x_1); its integral over
// [0,1]^d is exactly 1 for integer omega.
double test_function(int omega, const Point& x);
inline constexpr double test_function_truth = 1.0;

// Runs the full cell grid (b x n for IIDConvergence, b x n x eps for
// TorusStepSweep) with `replicates` independent repetitions per cell; every
// requested estimator sees the same sample set within a replicate.
// Replicates run in parallel under the worker budget; output is
// deterministic given (config, seed).
std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg);

// Least-squares slope of log(mse) against log(n). Requires >= 3 points.
double fit_slope(const std::vector<int>& ns, const std::vector<double>& mses);

std::string format_g17(double v);
std::string to_csv(const std::vector<ResultRow>& rows);
std::string to_json(const std::vector<ResultRow>& rows);
std::vector<ResultRow> parse_csv(const std::string& text);

}  // namespace steinctrl
