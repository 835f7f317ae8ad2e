#pragma once

// Deterministic low-discrepancy sampling of planar regions.

#include "lglab/circle_geometry.hpp"

#include <cstdint>
#include <functional>

namespace lglab {

inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

/// Two-dimensional Halton sequence (bases 2 and 3) with a seeded
/// Cranley-Patterson rotation, so different seeds give independent-looking
/// but fully reproducible point sets.
class HaltonSampler {
 public:
  explicit HaltonSampler(std::uint64_t seed = kDefaultSeed);

  /// i-th point of the rotated sequence in [0,1)^2.
  Eigen::Vector2d unit_square(std::uint64_t i) const;
  /// i-th point mapped area-preservingly onto the disk of the given center and radius.
  Point disk(std::uint64_t i, const Point& center = Point::Zero(), double radius = 1.0) const;

 private:
  double shift_x_ = 0.0;
  double shift_y_ = 0.0;
};

/// Mean and standard error of a sampled quantity.
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
};

using PlanarFunction = std::function<double(const Point&)>;

/// Monte Carlo estimate of the integral of f over the unit disk.
Estimate integrate_disk(const PlanarFunction& f, std::size_t samples, std::uint64_t seed = kDefaultSeed);

}  // namespace lglab
