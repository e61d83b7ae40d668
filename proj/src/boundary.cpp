#include "steinctrl/boundary.hpp"

#include <cmath>

namespace steinctrl {

namespace {

void check_in_domain(const BoundaryWeight& w, const Point& x) {
  if (x.size() != w.domain.lo.size())
    throw std::invalid_argument("BoundaryWeight: point dimension mismatch");
  if (w.kind == WeightKind::Constant) return;
  if (!w.domain.contains(x))
    throw std::invalid_argument("BoundaryWeight: point outside the closed domain");
}

// One coordinate of the plateau weight: 1 on [a,b], 0 at lo/hi, bump
// transition on the gaps. C^1 everywhere (the transition has zero slope at
// both ends of each gap).
void plateau_coord(double t, double lo, double a, double b, double hi, double& v, double& dv) {
  if (t >= a && t <= b) {
    v = 1.0;
    dv = 0.0;
    return;
  }
  if (t <= lo || t >= hi) {
    v = 0.0;
    dv = 0.0;
    return;
  }
  double s, ds;
  if (t < a) {
    s = (t - a) / (a - lo);  // in (-1, 0)
    ds = 1.0 / (a - lo);
  } else {
    s = (t - b) / (hi - b);  // in (0, 1)
    ds = 1.0 / (hi - b);
  }
  const double q = 1.0 - s * s;
  v = std::exp(1.0 - 1.0 / q);
  dv = v * (-2.0 * s / (q * q)) * ds;
}

}  // namespace

BoundaryWeight BoundaryWeight::unit_cube_product(Box domain) {
  BoundaryWeight w;
  w.kind = WeightKind::UnitCubeProduct;
  w.domain = std::move(domain);
  return w;
}

BoundaryWeight BoundaryWeight::smooth_plateau(Box domain, Box plateau) {
  if (domain.dim() != plateau.dim())
    throw std::invalid_argument("BoundaryWeight: domain/plateau dimension mismatch");
  for (int i = 0; i < domain.dim(); ++i)
    if (!(domain.lo[i] < plateau.lo[i] && plateau.hi[i] < domain.hi[i]))
      throw std::invalid_argument("BoundaryWeight: plateau must be strictly inside the domain");
  BoundaryWeight w;
  w.kind = WeightKind::SmoothPlateau;
  w.domain = std::move(domain);
  w.plateau = std::move(plateau);
  return w;
}

BoundaryWeight BoundaryWeight::constant(int d) {
  BoundaryWeight w;
  w.kind = WeightKind::Constant;
  w.domain = Box::unit(d);
  return w;
}

WeightData BoundaryWeight::data(const Point& x) const {
  check_in_domain(*this, x);
  const int d = dim();
  WeightData out;
  out.grad = Eigen::VectorXd::Zero(d);
  if (kind == WeightKind::Constant) {
    out.value = 1.0;
    return out;
  }

  Eigen::VectorXd v(d), dv(d);
  for (int i = 0; i < d; ++i) {
    if (kind == WeightKind::UnitCubeProduct) {
      const double w = domain.hi[i] - domain.lo[i];
      const double t = (x[i] - domain.lo[i]) / w;
      v[i] = t * (1.0 - t);
      dv[i] = (1.0 - 2.0 * t) / w;
    } else {
      plateau_coord(x[i], domain.lo[i], plateau.lo[i], plateau.hi[i], domain.hi[i], v[i], dv[i]);
    }
  }

  double prod = 1.0;
  for (int i = 0; i < d; ++i) prod *= v[i];
  out.value = prod;
  for (int i = 0; i < d; ++i) {
    double rest = 1.0;
    for (int j = 0; j < d; ++j)
      if (j != i) rest *= v[j];
    out.grad[i] = dv[i] * rest;
  }
  return out;
}

double BoundaryWeight::delta(const Point& x) const { return data(x).value; }

Eigen::VectorXd BoundaryWeight::delta_grad(const Point& x) const { return data(x).grad; }

ModifiedKernel::Core ModifiedKernel::core(const Point& x, const Point& xp, const WeightData& wx,
                                          const WeightData& wxp) const {
  Core c;
  const double h = base.h;
  const int d = base.profile.d;
  const double r = (x - xp).norm();
  const double z = r / h;

  c.kt = base.profile.phi(z);
  c.dd = wx.value * wxp.value;
  c.value = c.dd * c.kt;

  double bcd;  // cross divergence of the base kernel
  if (z < 1e-12) {
    c.s = 0.0;
    bcd = -static_cast<double>(d) * base.profile.phi_d2(0.0) / (h * h);
  } else {
    c.s = base.profile.phi_d1(z) / (h * r);
    double t = base.profile.phi_d2(z) / (h * h);
    if (d > 1) t += static_cast<double>(d - 1) * base.profile.phi_d1(z) / (r * h);
    bcd = -t;
  }

  // grad_x delta . (x - x') and grad_x' delta . (x - x')
  const double bx = wx.grad.dot(x - xp);
  const double bxp = wxp.grad.dot(x - xp);

  const double t1 = wx.grad.dot(wxp.grad) * c.kt;
  const double t2 = wxp.value * (-(c.s * bx));
  const double t3 = wx.value * (c.s * bxp);
  const double t4 = c.dd * bcd;
  c.cross = t1 + (t2 + t3) + t4;
  return c;
}

double ModifiedKernel::eval(const Point& x, const Point& xp) const {
  const WeightData wx = weight.data(x), wxp = weight.data(xp);
  return core(x, xp, wx, wxp).value;
}

Eigen::VectorXd ModifiedKernel::grad_x(const Point& x, const Point& xp) const {
  const WeightData wx = weight.data(x), wxp = weight.data(xp);
  const Core c = core(x, xp, wx, wxp);
  return wx.grad * (wxp.value * c.kt) + (x - xp) * (c.dd * c.s);
}

Eigen::VectorXd ModifiedKernel::grad_xp(const Point& x, const Point& xp) const {
  const WeightData wx = weight.data(x), wxp = weight.data(xp);
  const Core c = core(x, xp, wx, wxp);
  return wxp.grad * (wx.value * c.kt) - (x - xp) * (c.dd * c.s);
}

double ModifiedKernel::cross_div(const Point& x, const Point& xp) const {
  const WeightData wx = weight.data(x), wxp = weight.data(xp);
  return core(x, xp, wx, wxp).cross;
}

}  // namespace steinctrl
