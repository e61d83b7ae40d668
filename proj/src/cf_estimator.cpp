#include "steinctrl/cf_estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "steinctrl/linalg.hpp"

namespace steinctrl {

namespace {

void check_states(const PointList& states, const std::vector<double>& fvals) {
  if (states.empty()) throw std::invalid_argument("empty state list");
  if (states.size() != fvals.size())
    throw std::invalid_argument("states and fvals must have equal length");
  const Eigen::Index d = states.front().size();
  for (const Point& x : states)
    if (x.size() != d) throw std::invalid_argument("inconsistent state dimensions");
  for (double f : fvals)
    if (!std::isfinite(f)) throw std::invalid_argument("non-finite function value");
}

Eigen::VectorXd to_vec(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

// Weighted-mean constant of the c -> infinity fit and the centered solve.
// Returns false when the Gram factorization fails even with jitter.
bool stein_constant(const Eigen::MatrixXd& K0, const Eigen::VectorXd& f0, double& beta,
                    Eigen::VectorXd& g, double& jitter) {
  const Eigen::Index m = K0.rows();
  const SpdFactor F = jittered_llt(K0, K0.trace() / static_cast<double>(m));
  if (!F.ok) return false;
  const Eigen::VectorXd v = F.solve(Eigen::VectorXd::Ones(m));
  const double denom = v.sum();
  if (denom == 0.0 || !std::isfinite(denom)) return false;
  beta = v.dot(f0) / denom;
  g = F.solve((f0.array() - beta).matrix());
  jitter = F.jitter;
  return true;
}

}  // namespace

std::pair<PointList, std::vector<double>> dedupe(const PointList& states,
                                                 const std::vector<double>& fvals,
                                                 double tol) {
  if (tol < 0.0) throw std::invalid_argument("dedupe: tol must be >= 0");
  if (states.size() != fvals.size())
    throw std::invalid_argument("dedupe: states and fvals must have equal length");
  PointList kept;
  std::vector<double> kept_f;
  for (std::size_t i = 0; i < states.size(); ++i) {
    bool dup = false;
    for (const Point& y : kept) {
      if (y.size() == states[i].size() &&
          (states[i] - y).cwiseAbs().maxCoeff() <= tol) {
        dup = true;
        break;
      }
    }
    if (!dup) {
      kept.push_back(states[i]);
      kept_f.push_back(fvals[i]);
    }
  }
  return {std::move(kept), std::move(kept_f)};
}

SplitDataset make_split_at(PointList states, std::vector<double> fvals, int split_index,
                           double dedupe_tol) {
  check_states(states, fvals);
  const int n = static_cast<int>(states.size());
  if (n < 2) throw std::invalid_argument("make_split_at: need at least two states");
  if (split_index < 1 || split_index >= n)
    throw std::invalid_argument("make_split_at: split index must satisfy 1 <= m < n");

  SplitDataset s;
  s.states = std::move(states);
  s.fvals = std::move(fvals);
  s.split_index = split_index;
  s.rho = static_cast<double>(split_index) / static_cast<double>(n);

  PointList prefix(s.states.begin(), s.states.begin() + split_index);
  std::vector<double> prefix_f(s.fvals.begin(), s.fvals.begin() + split_index);
  auto [d0, d0f] = dedupe(prefix, prefix_f, dedupe_tol);
  s.d0_states = std::move(d0);
  s.d0_fvals = std::move(d0f);
  return s;
}

SplitDataset make_split(PointList states, std::vector<double> fvals, double rho,
                        double dedupe_tol) {
  if (!(rho > 0.0) || !(rho < 1.0))
    throw std::invalid_argument("make_split: rho must lie in (0, 1)");
  const int n = static_cast<int>(states.size());
  if (n < 2) throw std::invalid_argument("make_split: need at least two states");
  int m = static_cast<int>(std::lround(rho * n));
  m = std::max(1, std::min(n - 1, m));
  SplitDataset s = make_split_at(std::move(states), std::move(fvals), m, dedupe_tol);
  s.rho = rho;
  return s;
}

ControlFunctionalFit fit(const SteinKernel& sk, const PointList& states,
                         const std::vector<double>& fvals) {
  check_states(states, fvals);
  const Eigen::Index m = static_cast<Eigen::Index>(states.size());

  ControlFunctionalFit out;
  out.coeffs = Eigen::VectorXd::Zero(m);
  out.training = states;
  out.status = FitStatus::FallbackZero;
  out.beta = 0.0;
  out.fitted_integral = 0.0;

  if (has_duplicates(states)) return out;

  const Eigen::MatrixXd K0 = gram(sk, states, GramKind::K0);
  const Eigen::MatrixXd Kp = (K0.array() + sk.c).matrix();
  const Eigen::VectorXd f0 = to_vec(fvals);

  // Jitter scale from the Stein block, not the full diagonal: with a large c
  // the constant offset would otherwise dominate the regularization and pull
  // the finite-c solution away from the c -> infinity limit.
  const double scale = K0.trace() / static_cast<double>(m);
  const SpdFactor F = jittered_llt(Kp, scale);
  if (!F.ok) return out;

  out.coeffs = F.solve(f0);
  out.fitted_integral = sk.c * out.coeffs.sum();
  out.status = FitStatus::FullRank;
  out.jitter_used = F.jitter;

  double beta = 0.0, jit = 0.0;
  Eigen::VectorXd g;
  if (stein_constant(K0, f0, beta, g, jit))
    out.beta = beta;
  else
    out.beta = std::numeric_limits<double>::quiet_NaN();
  return out;
}

double predict(const ControlFunctionalFit& f, const SteinKernel& sk, const Point& x) {
  if (f.status == FitStatus::FallbackZero) return 0.0;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < f.coeffs.size(); ++i)
    acc += f.coeffs[i] * sk.kplus(x, f.training[static_cast<std::size_t>(i)]);
  return acc;
}

EstimateSummary estimate_mc(const std::vector<double>& fvals) {
  if (fvals.empty()) throw std::invalid_argument("estimate_mc: empty sample");
  double acc = 0.0;
  for (double f : fvals) {
    if (!std::isfinite(f)) throw std::invalid_argument("estimate_mc: non-finite value");
    acc += f;
  }
  EstimateSummary s;
  s.value = acc / static_cast<double>(fvals.size());
  s.kind = EstimatorKind::MC;
  s.m_used = 0;
  s.n1_used = static_cast<int>(fvals.size());
  return s;
}

EstimateSummary estimate_cf(const SteinKernel& sk, const SplitDataset& data) {
  check_states(data.states, data.fvals);
  if (data.split_index < 1 || data.split_index >= data.n())
    throw std::invalid_argument("estimate_cf: invalid split");
  if (data.m() < 1) throw std::invalid_argument("estimate_cf: empty fitting set");

  EstimateSummary s;
  s.kind = EstimatorKind::CF;
  s.m_used = data.m();
  s.n1_used = data.n1();
  if (sk.mk.weight.kind == WeightKind::Constant) s.flags.push_back("constant_weight_delta");

  const int n1 = data.n1();
  auto d1_mean = [&] {
    double acc = 0.0;
    for (int i = data.split_index; i < data.n(); ++i) acc += data.fvals[static_cast<std::size_t>(i)];
    return acc / static_cast<double>(n1);
  };

  const Eigen::MatrixXd K0 = gram(sk, data.d0_states, GramKind::K0);
  const Eigen::VectorXd f0 = to_vec(data.d0_fvals);

  double beta = 0.0, jitter = 0.0;
  Eigen::VectorXd g;
  if (!stein_constant(K0, f0, beta, g, jitter)) {
    s.value = d1_mean();
    s.flags.push_back("fallback_zero");
    return s;
  }

  std::vector<SteinPointData> d0_data;
  d0_data.reserve(data.d0_states.size());
  for (const Point& p : data.d0_states) d0_data.push_back(sk.point_data(p));

  double acc = 0.0;
  for (int i = data.split_index; i < data.n(); ++i) {
    const Point& x = data.states[static_cast<std::size_t>(i)];
    const SteinPointData px = sk.point_data(x);
    double corr = 0.0;
    for (std::size_t j = 0; j < data.d0_states.size(); ++j)
      corr += sk.k0(x, data.d0_states[j], px, d0_data[j]) * g[static_cast<Eigen::Index>(j)];
    acc += data.fvals[static_cast<std::size_t>(i)] - corr;
  }
  s.value = acc / static_cast<double>(n1);
  return s;
}

EstimateSummary estimate_loo(const SteinKernel& sk, const PointList& states,
                             const std::vector<double>& fvals, const BandwidthPolicy& policy) {
  check_states(states, fvals);
  const int n = static_cast<int>(states.size());
  if (n < 2) throw std::invalid_argument("estimate_loo: need at least two states");

  EstimateSummary s;
  s.kind = EstimatorKind::LOOCF;
  s.m_used = n - 1;
  s.n1_used = n;
  if (sk.mk.weight.kind == WeightKind::Constant) s.flags.push_back("constant_weight_delta");

  int fold_fallbacks = 0;
  double acc = 0.0;

  if (policy.mode == BandwidthPolicy::Mode::Fixed) {
    // One Gram at the fixed bandwidth; folds take principal submatrices.
    const SteinKernel skf = sk.with_bandwidth(policy.fixed_h);
    const Eigen::MatrixXd K0 = gram(skf, states, GramKind::K0);
    Eigen::MatrixXd Ksub(n - 1, n - 1);
    Eigen::VectorXd fsub(n - 1), krow(n - 1);
    for (int i = 0; i < n; ++i) {
      int a = 0;
      for (int r = 0; r < n; ++r) {
        if (r == i) continue;
        int bcol = 0;
        for (int col = 0; col < n; ++col) {
          if (col == i) continue;
          Ksub(a, bcol) = K0(r, col);
          ++bcol;
        }
        fsub[a] = fvals[static_cast<std::size_t>(r)];
        krow[a] = K0(i, r);
        ++a;
      }
      double beta = 0.0, jit = 0.0;
      Eigen::VectorXd g;
      if (!stein_constant(Ksub, fsub, beta, g, jit)) {
        ++fold_fallbacks;
        acc += fvals[static_cast<std::size_t>(i)];
        continue;
      }
      acc += fvals[static_cast<std::size_t>(i)] - krow.dot(g);
    }
  } else {
    PointList training(states.size() - 1);
    std::vector<double> tf(states.size() - 1);
    for (int i = 0; i < n; ++i) {
      int a = 0;
      for (int r = 0; r < n; ++r) {
        if (r == i) continue;
        training[static_cast<std::size_t>(a)] = states[static_cast<std::size_t>(r)];
        tf[static_cast<std::size_t>(a)] = fvals[static_cast<std::size_t>(r)];
        ++a;
      }
      const BandwidthResult br = optimize_bandwidth(sk, training, tf, policy.search);
      if (br.all_failed) {
        ++fold_fallbacks;
        acc += fvals[static_cast<std::size_t>(i)];
        continue;
      }
      const SteinKernel ski = sk.with_bandwidth(br.h);
      const Eigen::MatrixXd K0 = gram(ski, training, GramKind::K0);
      double beta = 0.0, jit = 0.0;
      Eigen::VectorXd g;
      if (!stein_constant(K0, to_vec(tf), beta, g, jit)) {
        ++fold_fallbacks;
        acc += fvals[static_cast<std::size_t>(i)];
        continue;
      }
      const SteinPointData px = ski.point_data(states[static_cast<std::size_t>(i)]);
      std::vector<SteinPointData> tdata;
      tdata.reserve(training.size());
      for (const Point& p : training) tdata.push_back(ski.point_data(p));
      double corr = 0.0;
      for (std::size_t j = 0; j < training.size(); ++j)
        corr += ski.k0(states[static_cast<std::size_t>(i)], training[j], px, tdata[j]) *
                g[static_cast<Eigen::Index>(j)];
      acc += fvals[static_cast<std::size_t>(i)] - corr;
    }
  }

  s.value = acc / static_cast<double>(n);
  if (fold_fallbacks > 0)
    s.flags.push_back("fold_fallback=" + std::to_string(fold_fallbacks));
  return s;
}

MseSummary mse_summary(const std::vector<double>& estimates, double truth) {
  if (estimates.empty()) throw std::invalid_argument("mse_summary: empty estimate list");
  const int r = static_cast<int>(estimates.size());
  std::vector<double> sq(estimates.size());
  double mean_sq = 0.0;
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    const double e = estimates[i] - truth;
    sq[i] = e * e;
    mean_sq += sq[i];
  }
  mean_sq /= static_cast<double>(r);

  double var = 0.0;
  if (r > 1) {
    for (double v : sq) var += (v - mean_sq) * (v - mean_sq);
    var /= static_cast<double>(r - 1);
  }
  MseSummary out;
  out.mse = mean_sq;
  out.se = (r > 1) ? std::sqrt(var / static_cast<double>(r)) : 0.0;
  out.replicates = r;
  return out;
}

}  // namespace steinctrl
