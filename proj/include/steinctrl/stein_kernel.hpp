#pragma once

#include <functional>
#include <string>

#include "steinctrl/boundary.hpp"

namespace steinctrl {

// Gradient of the log target density. Note only the score is required, never
// the normalizing constant. The descriptor is informational (logging,
// reproducibility records).
struct ScoreFunction {
  std::function<Eigen::VectorXd(const Point&)> eval;
  std::string descriptor;
};

ScoreFunction uniform_score(int d);

// Differentiable vector field with a known divergence, used to apply the
// operator phi -> div phi + phi . score.
struct VectorField {
  std::function<Eigen::VectorXd(const Point&)> value;
  std::function<double(const Point&)> divergence;
};

double stein_apply(const ScoreFunction& score, const VectorField& field, const Point& x);

// Cached per-point quantities for Stein kernel evaluation. The score is only
// evaluated where the boundary weight is nonzero, so score singularities on
// the boundary are never touched.
struct SteinPointData {
  WeightData w;
  Eigen::VectorXd score;
};

// Reproducing kernel of the zero-mean class built from a boundary-modified
// base kernel k and a score u:
//
//   k0(x,x') = div_x div_x' k + u(x).grad_x' k + u(x').grad_x k
//              + (u(x).u(x')) k(x,x')
//
// plus the constant-augmented variant kplus = c + k0.
struct SteinKernel {
  ModifiedKernel mk;
  ScoreFunction score;
  double c = 1.0;

  SteinKernel(ModifiedKernel mk_, ScoreFunction score_, double c_ = 1.0)
      : mk(std::move(mk_)), score(std::move(score_)), c(c_) {
    if (!(c > 0.0)) throw std::invalid_argument("SteinKernel: c must be > 0");
    if (!score.eval) throw std::invalid_argument("SteinKernel: score function is empty");
  }

  int dim() const { return mk.dim(); }
  double bandwidth() const { return mk.base.h; }

  SteinKernel with_bandwidth(double h) const {
    SteinKernel out(*this);
    out.mk.base.h = h;
    if (!(h > 0.0)) throw std::invalid_argument("SteinKernel: bandwidth h must be > 0");
    return out;
  }

  SteinPointData point_data(const Point& x) const;

  double k0(const Point& x, const Point& xp) const;
  double k0(const Point& x, const Point& xp, const SteinPointData& px,
            const SteinPointData& pxp) const;
  double kplus(const Point& x, const Point& xp) const;
};

enum class GramKind { K0, KPlus };

// Symmetric Gram matrix; the upper triangle is computed and mirrored, so
// K(i,j) == K(j,i) holds bit-exactly.
Eigen::MatrixXd gram(const SteinKernel& sk, const PointList& points, GramKind kind);

// Exact duplicate scan (max-coordinate distance <= tol); duplicates make the
// K0 Gram singular, so callers use this as a rank-risk probe.
bool has_duplicates(const PointList& points, double tol = 0.0);

}  // namespace steinctrl
