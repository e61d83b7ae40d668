#pragma once

#include "steinctrl/base_kernel.hpp"
#include "steinctrl/point.hpp"

namespace steinctrl {

enum class WeightKind { UnitCubeProduct, SmoothPlateau, Constant };

struct WeightData {
  double value = 1.0;
  Eigen::VectorXd grad;
};

// Scalar weight delta >= 0 that vanishes on the boundary of an axis-aligned
// box and is C^1 in its interior. Multiplying a kernel by delta(x) delta(x')
// makes the kernel (and its first derivatives) vanish on the boundary, which
// is what the zero-mean construction downstream relies on.
//
//  - UnitCubeProduct: prod_i t_i (1 - t_i) with t the coordinates affinely
//    rescaled to [0,1]^d.
//  - SmoothPlateau: identically 1 on an inner box, 0 at the domain boundary,
//    joined per coordinate by the bump transition exp(1 - 1/(1 - s^2)).
//  - Constant: delta == 1 everywhere; no boundary vanishing (the zero-mean
//    property is lost unless the target itself decays).
struct BoundaryWeight {
  WeightKind kind = WeightKind::Constant;
  Box domain;
  Box plateau;  // SmoothPlateau only

  static BoundaryWeight unit_cube_product(Box domain);
  static BoundaryWeight smooth_plateau(Box domain, Box plateau);
  static BoundaryWeight constant(int d);

  int dim() const { return domain.dim(); }

  double delta(const Point& x) const;
  Eigen::VectorXd delta_grad(const Point& x) const;
  WeightData data(const Point& x) const;
};

// Kernel k(x,x') = delta(x) delta(x') k_base(x,x') together with the
// derivative combinations needed by the Stein construction. The cross
// divergence expands by the product rule into four terms; only first
// derivatives of delta appear anywhere.
struct ModifiedKernel {
  BaseKernel base;
  BoundaryWeight weight;

  ModifiedKernel(BaseKernel base_, BoundaryWeight weight_)
      : base(std::move(base_)), weight(std::move(weight_)) {
    if (base.dim() != weight.dim())
      throw std::invalid_argument("ModifiedKernel: kernel/weight dimension mismatch");
  }

  int dim() const { return base.dim(); }

  // Shared per-pair scalars. `s` is phi'(r/h)/(h r), the radial factor of the
  // base gradient (0 at the coincident limit); `cross` is the full cross
  // divergence of the modified kernel. Term grouping is chosen so that
  // swapping x and x' reproduces bit-identical values.
  struct Core {
    double kt = 0;     // base kernel value
    double s = 0;      // base gradient radial factor
    double dd = 0;     // delta(x) delta(x')
    double value = 0;  // modified kernel value
    double cross = 0;  // cross divergence of the modified kernel
  };
  Core core(const Point& x, const Point& xp, const WeightData& wx, const WeightData& wxp) const;

  double eval(const Point& x, const Point& xp) const;
  Eigen::VectorXd grad_x(const Point& x, const Point& xp) const;
  Eigen::VectorXd grad_xp(const Point& x, const Point& xp) const;
  double cross_div(const Point& x, const Point& xp) const;
};

}  // namespace steinctrl
