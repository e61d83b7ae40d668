#pragma once

#include <stdexcept>

namespace steinctrl {

enum class KernelFamily { Wendland, Matern72 };

// Radial profile phi(z) of an isotropic kernel k(x,x') = phi(|x-x'| / h),
// normalized so phi(0) = 1, together with its first two derivatives.
//
// Wendland profiles are the compactly supported piecewise polynomials with
// smoothness index b in {0,1,2} and exponent l = floor(d/2) + b + 2; they
// vanish identically for z >= 1 and are positive definite in dimension d.
// Matern72 is the order-7/2 Matern profile (globally supported, C^4 at the
// origin, comparable smoothness to b = 2).
struct RadialProfile {
  KernelFamily family = KernelFamily::Wendland;
  int b = 1;
  int d = 1;

  RadialProfile(KernelFamily family_, int b_, int d_) : family(family_), b(b_), d(d_) {
    if (d < 1) throw std::invalid_argument("RadialProfile: dimension must be >= 1");
    if (family == KernelFamily::Wendland && (b < 0 || b > 2))
      throw std::invalid_argument("RadialProfile: Wendland smoothness b must be 0, 1 or 2");
  }

  static RadialProfile wendland(int b, int d) { return RadialProfile(KernelFamily::Wendland, b, d); }
  static RadialProfile matern72(int d) { return RadialProfile(KernelFamily::Matern72, 2, d); }

  int ell() const { return d / 2 + b + 2; }

  double phi(double z) const;
  double phi_d1(double z) const;
  double phi_d2(double z) const;
};

}  // namespace steinctrl
