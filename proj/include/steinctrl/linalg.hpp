#pragma once

#include <Eigen/Dense>

namespace steinctrl {

// Cholesky factorization of K + jitter*I with an escalating jitter ladder:
// jitter = rel * scale for rel = rel_lo, 10*rel_lo, ..., rel_hi. `ok` is
// false when every rung fails (effectively singular input).
struct SpdFactor {
  Eigen::LLT<Eigen::MatrixXd> llt;
  double jitter = 0.0;
  bool ok = false;

  Eigen::VectorXd solve(const Eigen::VectorXd& b) const { return llt.solve(b); }
  double log_det() const {
    return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
  }
};

SpdFactor jittered_llt(const Eigen::MatrixXd& K, double scale, double rel_lo = 1e-10,
                       double rel_hi = 1e-6);

}  // namespace steinctrl
