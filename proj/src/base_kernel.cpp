#include "steinctrl/base_kernel.hpp"

namespace steinctrl {

namespace {

void check_pair(const BaseKernel& k, const Point& x, const Point& xp) {
  if (x.size() != k.profile.d || xp.size() != k.profile.d)
    throw std::invalid_argument("BaseKernel: point dimension mismatch");
}

}  // namespace

double BaseKernel::eval(const Point& x, const Point& xp) const {
  check_pair(*this, x, xp);
  return profile.phi((x - xp).norm() / h);
}

Eigen::VectorXd BaseKernel::grad_x(const Point& x, const Point& xp) const {
  check_pair(*this, x, xp);
  const double r = (x - xp).norm();
  if (r / h < 1e-12) return Eigen::VectorXd::Zero(x.size());
  return (x - xp) * (profile.phi_d1(r / h) / (h * r));
}

double BaseKernel::cross_div(const Point& x, const Point& xp) const {
  check_pair(*this, x, xp);
  const double r = (x - xp).norm();
  const int d = profile.d;
  if (r / h < 1e-12) return -static_cast<double>(d) * profile.phi_d2(0.0) / (h * h);
  double t = profile.phi_d2(r / h) / (h * h);
  if (d > 1) t += static_cast<double>(d - 1) * profile.phi_d1(r / h) / (r * h);
  return -t;
}

}  // namespace steinctrl
