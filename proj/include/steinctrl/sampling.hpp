#pragma once

#include <cstdint>
#include <random>

#include "steinctrl/point.hpp"

namespace steinctrl {

// Deterministic seed splitting (splitmix64 finalizer). Derived streams are
// decorrelated and reproducible across platforms.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

// Uniform variates built directly from mt19937_64 output words (top 53 bits),
// so sequences are bit-reproducible everywhere; generator id "mt19937_64/u53".
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double u01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }  // [0, 1)
  double uniform(double a, double b) { return a + (b - a) * u01(); }
  std::uint64_t raw() { return eng_(); }

  static const char* id() { return "mt19937_64/u53"; }

 private:
  std::mt19937_64 eng_;
};

// n iid draws from the uniform distribution on [0,1]^d.
PointList sample_iid_uniform(int n, int d, std::uint64_t seed);

// Random-walk Metropolis chain on the d-torus targeting the uniform
// distribution (every proposal is accepted; steps are uniform on
// [-eps, eps]^d and states wrap into [0,1)^d). The chain starts at the
// origin; with burn_in > 0 the first burn_in steps are discarded and the
// emitted sequence starts at the current state instead.
struct ChainConfig {
  int d = 1;
  double eps = 0.5;
  int n = 100;
  std::uint64_t seed = 0;
  int burn_in = 0;
};

PointList sample_torus_walk(const ChainConfig& cfg);

// Fill distance sup_{x in box} min_i |x - x_i|, approximated on a uniform
// grid of spacing <= resolution. The grid maximum is a lower bound of the
// sup; the true value is certified to lie within value + slack, where
// slack = sqrt(d)/2 * spacing (the min-distance function is 1-Lipschitz).
struct FillDistanceReport {
  double value = 0.0;
  double resolution = 0.0;  // actual grid spacing used
  double slack = 0.0;
  bool exact = false;
};

FillDistanceReport fill_distance(const PointList& points, const Box& box, double resolution);

}  // namespace steinctrl
