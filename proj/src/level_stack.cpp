#include "lglab/level_stack.hpp"

#include "lglab/errors.hpp"

#include <cmath>

namespace lglab {

LevelSetStack solve_general(const PiecewiseConstantBoundary& data) {
  const std::vector<double> values = data.distinct_values();
  LevelSetStack stack;
  stack.base_value = values.front();
  for (std::size_t j = 0; j + 1 < values.size(); ++j) {
    const double t = 0.5 * (values[j] + values[j + 1]);
    stack.thresholds.push_back(t);
    stack.level_values.push_back(values[j + 1]);
    stack.configs.push_back(solve_binary(data.superlevel(t), SolveMode::minimal));
    stack.indicators.push_back(stack.configs.back().to_function());
  }
  for (std::size_t j = 0; j + 1 < stack.configs.size(); ++j) {
    if (!region_contains(stack.configs[j], stack.configs[j + 1])) {
      throw NestednessError(j, j + 1, stack.thresholds[j], stack.thresholds[j + 1]);
    }
  }
  return stack;
}

double evaluate(const LevelSetStack& stack, const Point& p) {
  if (!(p.squaredNorm() < 1.0)) throw DomainError("evaluate: point not inside the open unit disk");
  double value = stack.base_value;
  for (std::size_t j = 0; j < stack.configs.size(); ++j) {
    if (stack.indicators[j](p) == 1.0) value = stack.level_values[j];
  }
  return value;
}

PlanarFunction stack_to_function(const LevelSetStack& stack) {
  return [stack](const Point& p) { return evaluate(stack, p); };
}

double bv_energy(const LevelSetStack& stack) {
  double total = 0.0;
  for (std::size_t j = 0; j < stack.configs.size(); ++j) total += stack.gap(j) * stack.configs[j].energy();
  return total;
}

Estimate l1_distance(const PlanarFunction& a, const PlanarFunction& b, std::size_t samples, std::uint64_t seed) {
  if (samples < 1000) throw DomainError("l1_distance: at least 1000 samples required");
  return integrate_disk([&](const Point& p) { return std::abs(a(p) - b(p)); }, samples, seed);
}

}  // namespace lglab
