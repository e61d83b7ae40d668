#include "steinctrl/linalg.hpp"

#include <cmath>

namespace steinctrl {

SpdFactor jittered_llt(const Eigen::MatrixXd& K, double scale, double rel_lo, double rel_hi) {
  SpdFactor f;
  if (!(scale > 0.0) || !std::isfinite(scale)) return f;
  // An inf on the diagonal yields an inf pivot, which LLT happily accepts.
  if (!K.allFinite()) return f;

  for (double rel = rel_lo; rel <= rel_hi * (1.0 + 1e-12); rel *= 10.0) {
    const double jitter = rel * scale;
    Eigen::MatrixXd Kj = K;
    Kj.diagonal().array() += jitter;
    f.llt.compute(Kj);
    if (f.llt.info() == Eigen::Success && f.llt.matrixLLT().diagonal().minCoeff() > 0.0) {
      f.jitter = jitter;
      f.ok = true;
      return f;
    }
  }
  f.ok = false;
  return f;
}

}  // namespace steinctrl
