#include "steinctrl/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace steinctrl {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + (stream + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

PointList sample_iid_uniform(int n, int d, std::uint64_t seed) {
  if (n < 1 || d < 1) throw std::invalid_argument("sample_iid_uniform: need n >= 1, d >= 1");
  Rng rng(seed);
  PointList out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Point x(d);
    for (int j = 0; j < d; ++j) x[j] = rng.u01();
    out[static_cast<std::size_t>(i)] = std::move(x);
  }
  return out;
}

PointList sample_torus_walk(const ChainConfig& cfg) {
  if (cfg.n < 1 || cfg.d < 1)
    throw std::invalid_argument("sample_torus_walk: need n >= 1, d >= 1");
  if (cfg.eps < 0.0) throw std::invalid_argument("sample_torus_walk: eps must be >= 0");
  if (cfg.burn_in < 0) throw std::invalid_argument("sample_torus_walk: burn_in must be >= 0");

  Rng rng(cfg.seed);
  Point x = Point::Zero(cfg.d);
  auto wrap = [](double v) {
    double t = v - std::floor(v);
    if (t >= 1.0) t -= 1.0;  // guard against rounding up to 1.0
    return t;
  };

  PointList out;
  out.reserve(static_cast<std::size_t>(cfg.n));
  const int total = cfg.burn_in + cfg.n;
  for (int step = 0; step < total; ++step) {
    if (step > 0) {
      for (int j = 0; j < cfg.d; ++j) x[j] = wrap(x[j] + rng.uniform(-cfg.eps, cfg.eps));
    }
    if (step >= cfg.burn_in) out.push_back(x);
  }
  return out;
}

FillDistanceReport fill_distance(const PointList& points, const Box& box, double resolution) {
  if (points.empty()) throw std::invalid_argument("fill_distance: empty point set");
  if (!(resolution > 0.0)) throw std::invalid_argument("fill_distance: resolution must be > 0");
  const int d = box.dim();
  for (const Point& p : points)
    if (p.size() != d) throw std::invalid_argument("fill_distance: point dimension mismatch");

  // Per-axis node counts with spacing <= resolution.
  std::vector<int> nodes(static_cast<std::size_t>(d));
  double spacing = 0.0;
  for (int i = 0; i < d; ++i) {
    const double w = box.hi[i] - box.lo[i];
    const int m = std::max(2, static_cast<int>(std::ceil(w / resolution)) + 1);
    nodes[static_cast<std::size_t>(i)] = m;
    spacing = std::max(spacing, w / static_cast<double>(m - 1));
  }

  double best = 0.0;
  if (d == 1) {
    std::vector<double> xs(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) xs[i] = points[i][0];
    std::sort(xs.begin(), xs.end());
    const int m = nodes[0];
    for (int k = 0; k < m; ++k) {
      const double t =
          box.lo[0] + (box.hi[0] - box.lo[0]) * static_cast<double>(k) / static_cast<double>(m - 1);
      auto it = std::lower_bound(xs.begin(), xs.end(), t);
      double dist = std::numeric_limits<double>::infinity();
      if (it != xs.end()) dist = std::min(dist, *it - t);
      if (it != xs.begin()) dist = std::min(dist, t - *(it - 1));
      best = std::max(best, dist);
    }
  } else {
    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    Point t(d);
    while (true) {
      for (int i = 0; i < d; ++i)
        t[i] = box.lo[i] + (box.hi[i] - box.lo[i]) * static_cast<double>(idx[static_cast<std::size_t>(i)]) /
                               static_cast<double>(nodes[static_cast<std::size_t>(i)] - 1);
      double sq = std::numeric_limits<double>::infinity();
      for (const Point& p : points) sq = std::min(sq, (p - t).squaredNorm());
      best = std::max(best, std::sqrt(sq));

      int axis = d - 1;
      while (axis >= 0) {
        if (++idx[static_cast<std::size_t>(axis)] < nodes[static_cast<std::size_t>(axis)]) break;
        idx[static_cast<std::size_t>(axis)] = 0;
        --axis;
      }
      if (axis < 0) break;
    }
  }

  FillDistanceReport r;
  r.value = best;
  r.resolution = spacing;
  r.slack = 0.5 * std::sqrt(static_cast<double>(d)) * spacing;
  r.exact = (r.slack == 0.0);
  return r;
}

}  // namespace steinctrl
