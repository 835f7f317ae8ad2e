#include "lglab/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace lglab {
namespace {

double radical_inverse(std::uint64_t i, std::uint64_t base) {
  double inv = 1.0 / static_cast<double>(base);
  double factor = inv;
  double result = 0.0;
  while (i > 0) {
    result += static_cast<double>(i % base) * factor;
    i /= base;
    factor *= inv;
  }
  return result;
}

}  // namespace

HaltonSampler::HaltonSampler(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  shift_x_ = unit(rng);
  shift_y_ = unit(rng);
}

Eigen::Vector2d HaltonSampler::unit_square(std::uint64_t i) const {
  double x = radical_inverse(i + 1, 2) + shift_x_;
  double y = radical_inverse(i + 1, 3) + shift_y_;
  x -= std::floor(x);
  y -= std::floor(y);
  return {x, y};
}

Point HaltonSampler::disk(std::uint64_t i, const Point& center, double radius) const {
  const Eigen::Vector2d u = unit_square(i);
  const double r = radius * std::sqrt(u.x());
  const double phi = kTwoPi * u.y();
  return center + Point(r * std::cos(phi), r * std::sin(phi));
}

Estimate integrate_disk(const PlanarFunction& f, std::size_t samples, std::uint64_t seed) {
  const HaltonSampler sampler(seed);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    Point p = sampler.disk(i);
    // Guard against rounding onto the circle.
    if (p.squaredNorm() >= 1.0) p *= (1.0 - 1e-15);
    const double v = f(p);
    sum += v;
    sum_sq += v * v;
  }
  const double n = static_cast<double>(samples);
  const double mean = sum / n;
  const double var = std::max(0.0, sum_sq / n - mean * mean);
  return {kPi * mean, kPi * std::sqrt(var / n), samples};
}

}  // namespace lglab
