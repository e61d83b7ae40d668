#pragma once

#include "steinctrl/point.hpp"
#include "steinctrl/radial_profile.hpp"

namespace steinctrl {

// Isotropic kernel k(x,x') = phi(|x-x'|_2 / h) on R^d with bandwidth h > 0.
struct BaseKernel {
  RadialProfile profile;
  double h = 1.0;

  BaseKernel(RadialProfile profile_, double h_) : profile(profile_), h(h_) {
    if (!(h > 0.0)) throw std::invalid_argument("BaseKernel: bandwidth h must be > 0");
  }

  int dim() const { return profile.d; }

  double eval(const Point& x, const Point& xp) const;

  // Gradient in the first argument; the second-argument gradient is its
  // negation. Coincident points fall back to the zero limit.
  Eigen::VectorXd grad_x(const Point& x, const Point& xp) const;

  // sum_i d^2 k / dx_i dx'_i = -[ phi''(r/h)/h^2 + (d-1) phi'(r/h)/(r h) ],
  // with limit -d phi''(0)/h^2 as r -> 0.
  double cross_div(const Point& x, const Point& xp) const;
};

}  // namespace steinctrl
