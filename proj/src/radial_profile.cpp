#include "steinctrl/radial_profile.hpp"

#include <algorithm>
#include <cmath>

namespace steinctrl {

namespace {

double ipow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

constexpr double sqrt7 = 2.6457513110645905905016158;

}  // namespace

double RadialProfile::phi(double z) const {
  if (family == KernelFamily::Matern72) {
    const double z2 = z * z;
    return (1.0 + sqrt7 * z + (14.0 / 5.0) * z2 + (7.0 * sqrt7 / 15.0) * z2 * z) *
           std::exp(-sqrt7 * z);
  }
  const double l = static_cast<double>(ell());
  const double s = std::max(1.0 - z, 0.0);
  switch (b) {
    case 0:
      return ((l + 1.0) * z + 1.0) * ipow(s, ell() + 1);
    case 1:
      return (1.0 / 3.0) * ((l * l + 4.0 * l + 3.0) * z * z + 3.0 * (l + 2.0) * z + 3.0) *
             ipow(s, ell() + 2);
    default:  // b == 2
      return (1.0 / 15.0) *
             ((l * l * l + 9.0 * l * l + 23.0 * l + 15.0) * z * z * z +
              (6.0 * l * l + 36.0 * l + 45.0) * z * z + 15.0 * (l + 3.0) * z + 15.0) *
             ipow(s, ell() + 3);
  }
}

double RadialProfile::phi_d1(double z) const {
  if (family == KernelFamily::Matern72) {
    return -(7.0 / 15.0) * z * (3.0 + 3.0 * sqrt7 * z + 7.0 * z * z) * std::exp(-sqrt7 * z);
  }
  const double l = static_cast<double>(ell());
  const double s = std::max(1.0 - z, 0.0);
  switch (b) {
    case 0:
      return -(l * l + 3.0 * l + 2.0) * z * ipow(s, ell());
    case 1:
      return -(1.0 / 3.0) * (l * l + 7.0 * l + 12.0) * z * ((l + 1.0) * z + 1.0) *
             ipow(s, ell() + 1);
    default:
      return -(1.0 / 15.0) * (l * l + 11.0 * l + 30.0) *
             (l * l * z * z + 4.0 * l * z * z + 3.0 * l * z + 3.0 * z * z + 6.0 * z + 3.0) * z *
             ipow(s, ell() + 2);
  }
}

double RadialProfile::phi_d2(double z) const {
  if (family == KernelFamily::Matern72) {
    return -(7.0 / 15.0) * (3.0 + 3.0 * sqrt7 * z - 7.0 * sqrt7 * z * z * z) *
           std::exp(-sqrt7 * z);
  }
  const double l = static_cast<double>(ell());
  const double s = std::max(1.0 - z, 0.0);
  switch (b) {
    case 0:
      return (l * l + 3.0 * l + 2.0) * ((l + 1.0) * z - 1.0) * ipow(s, ell() - 1);
    case 1:
      return (1.0 / 3.0) * (l * l + 7.0 * l + 12.0) *
             (l * l * z * z + 4.0 * l * z * z - l * z + 3.0 * z * z - 1.0) * ipow(s, ell());
    default:
      return (1.0 / 15.0) * (l * l + 11.0 * l + 30.0) *
             (l * l * l * z * z * z + 9.0 * l * l * z * z * z + 23.0 * l * z * z * z +
              6.0 * l * z * z - 3.0 * l * z + 15.0 * z * z * z + 15.0 * z * z - 3.0 * z - 3.0) *
             ipow(s, ell() + 1);
  }
}

}  // namespace steinctrl
