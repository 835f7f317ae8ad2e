#pragma once

// Least-gradient functions for real-valued piecewise-constant data, assembled
// from the minimal solutions of the superlevel data at each threshold.

#include "lglab/chord_solver.hpp"

#include <vector>

namespace lglab {

struct LevelSetStack {
  double base_value = 0.0;
  /// Midpoints between consecutive distinct data values, increasing.
  std::vector<double> thresholds;
  /// Data value attained above thresholds[j].
  std::vector<double> level_values;
  /// Minimal solution for the superlevel data at thresholds[j].
  std::vector<ChordConfiguration> configs;
  std::vector<PlanarFunction> indicators;

  /// Gap between the data values on either side of thresholds[j].
  double gap(std::size_t j) const {
    return level_values[j] - (j == 0 ? base_value : level_values[j - 1]);
  }
};

/// Solves every threshold and checks that consecutive label-1 regions nest
/// exactly; throws NestednessError naming the pair otherwise.
LevelSetStack solve_general(const PiecewiseConstantBoundary& data);

/// u(p) = sup{ value above t : p in the region of t }, base value if none.
double evaluate(const LevelSetStack& stack, const Point& p);
PlanarFunction stack_to_function(const LevelSetStack& stack);

/// Total variation by the coarea formula: sum of gap times chord length.
double bv_energy(const LevelSetStack& stack);

/// Seeded low-discrepancy estimate of the L1 distance over the unit disk.
/// Requires samples >= 1000.
Estimate l1_distance(const PlanarFunction& a, const PlanarFunction& b, std::size_t samples,
                     std::uint64_t seed = kDefaultSeed);

}  // namespace lglab
