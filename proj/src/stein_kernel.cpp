#include "steinctrl/stein_kernel.hpp"

namespace steinctrl {

ScoreFunction uniform_score(int d) {
  if (d < 1) throw std::invalid_argument("uniform_score: dimension must be >= 1");
  ScoreFunction s;
  s.eval = [d](const Point&) { return Eigen::VectorXd::Zero(d); };
  s.descriptor = "uniform";
  return s;
}

double stein_apply(const ScoreFunction& score, const VectorField& field, const Point& x) {
  return field.divergence(x) + field.value(x).dot(score.eval(x));
}

SteinPointData SteinKernel::point_data(const Point& x) const {
  SteinPointData p;
  p.w = mk.weight.data(x);
  if (p.w.value != 0.0)
    p.score = score.eval(x);
  else
    p.score = Eigen::VectorXd::Zero(x.size());
  return p;
}

double SteinKernel::k0(const Point& x, const Point& xp, const SteinPointData& px,
                       const SteinPointData& pxp) const {
  const ModifiedKernel::Core c0 = mk.core(x, xp, px.w, pxp.w);
  const double dx = px.w.value, dxp = pxp.w.value;

  // Score-bearing terms; each carries a factor delta(x) or delta(x'), so the
  // branches below drop terms that are identically zero without touching the
  // score where the weight vanishes.
  double s2 = 0.0, s3 = 0.0, s4 = 0.0;
  if (dx != 0.0) {
    // u(x) . grad_x' k
    s2 = (dx * c0.kt) * px.score.dot(pxp.w.grad) - (c0.dd * c0.s) * px.score.dot(x - xp);
  }
  if (dxp != 0.0) {
    // u(x') . grad_x k
    s3 = (dxp * c0.kt) * pxp.score.dot(px.w.grad) + (c0.dd * c0.s) * pxp.score.dot(x - xp);
  }
  if (dx != 0.0 && dxp != 0.0) {
    s4 = px.score.dot(pxp.score) * c0.value;
  }
  return c0.cross + (s2 + s3) + s4;
}

double SteinKernel::k0(const Point& x, const Point& xp) const {
  return k0(x, xp, point_data(x), point_data(xp));
}

double SteinKernel::kplus(const Point& x, const Point& xp) const { return c + k0(x, xp); }

Eigen::MatrixXd gram(const SteinKernel& sk, const PointList& points, GramKind kind) {
  const Eigen::Index m = static_cast<Eigen::Index>(points.size());
  if (m == 0) throw std::invalid_argument("gram: empty point set");

  std::vector<SteinPointData> data;
  data.reserve(points.size());
  for (const Point& p : points) data.push_back(sk.point_data(p));

  Eigen::MatrixXd K(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i; j < m; ++j) {
      double v = sk.k0(points[i], points[j], data[i], data[j]);
      if (kind == GramKind::KPlus) v = sk.c + v;
      K(i, j) = v;
      K(j, i) = v;
    }
  }
  return K;
}

bool has_duplicates(const PointList& points, double tol) {
  if (tol < 0.0) throw std::invalid_argument("has_duplicates: tol must be >= 0");
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if ((points[i] - points[j]).cwiseAbs().maxCoeff() <= tol) return true;
  return false;
}

}  // namespace steinctrl
