#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

namespace steinctrl {

using Point = Eigen::VectorXd;
using PointList = std::vector<Point>;

// Axis-aligned box, lo(i) < hi(i) on every axis.
struct Box {
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;

  Box() = default;
  Box(Eigen::VectorXd lo_, Eigen::VectorXd hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
    if (lo.size() != hi.size() || lo.size() == 0)
      throw std::invalid_argument("Box: lo and hi must have equal, positive dimension");
    for (Eigen::Index i = 0; i < lo.size(); ++i)
      if (!(lo[i] < hi[i])) throw std::invalid_argument("Box: lo < hi required on every axis");
  }

  static Box unit(int d) {
    if (d < 1) throw std::invalid_argument("Box::unit: dimension must be >= 1");
    return Box(Eigen::VectorXd::Zero(d), Eigen::VectorXd::Ones(d));
  }

  int dim() const { return static_cast<int>(lo.size()); }

  bool contains(const Point& x) const {
    if (x.size() != lo.size()) return false;
    for (Eigen::Index i = 0; i < x.size(); ++i)
      if (x[i] < lo[i] || x[i] > hi[i]) return false;
    return true;
  }
};

}  // namespace steinctrl
