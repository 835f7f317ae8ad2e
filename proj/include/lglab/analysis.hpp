#pragma once

// Boundary traces, inequality verifiers and scenario drivers that reproduce
// the numerical witnesses for existence and non-existence of solutions.

#include "lglab/level_stack.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace lglab {

struct Verdict {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// A named table of numbers, e.g. per-stage energies.
struct ReportTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct ScenarioReport {
  std::string scenario;
  std::uint64_t seed = kDefaultSeed;
  std::vector<Verdict> verdicts;
  std::vector<ReportTable> tables;
  std::vector<std::string> notes;

  void check(std::string name, double value, double tolerance, bool pass) {
    verdicts.push_back({std::move(name), value, tolerance, pass});
  }
  bool passed() const;
  /// Appends the verdicts, tables and notes of another report, prefixing names.
  void merge(const ScenarioReport& other, const std::string& prefix);
};

// ---------------------------------------------------------------------------
// Traces

struct TraceEstimate {
  BoundaryAngle point;
  std::vector<double> radii;
  std::vector<double> averages;
  std::vector<double> std_errors;
  double limit = 0.0;
  /// Largest deviation of the last four averages from the limit.
  double residual = 0.0;
  /// Set when too few samples landed inside the disk at some radius.
  bool starved = false;
};

/// Half-ball averages of u over B(x, r_k) inside the disk with r_k = r0 2^-k,
/// k = 0..levels-1. Requires r0 in (0, 1) and levels >= 4.
TraceEstimate trace(const PlanarFunction& u, const BoundaryAngle& x, double r0, int levels, std::size_t samples,
                    std::uint64_t seed = kDefaultSeed);

/// Traces at interior points of every data arc of a solved configuration,
/// with the starting radius kept below the distance to the nearest chord.
ScenarioReport trace_suite(const ChordConfiguration& config, const std::string& name, int points = 20,
                           std::size_t samples = 2000, std::uint64_t seed = kDefaultSeed);

// ---------------------------------------------------------------------------
// Inequalities

/// h(theta) = 2[sin(c/2) + sin((L+c+theta)/2) - sin(L/2) - sin(theta/2)] with
/// c = 4^-k and L the stage-k kept-arc length.
double trapezoid_h(int k, double theta);
double trapezoid_h_derivative(int k, double theta);
/// h_lambda(theta) = 2[sin(c/2) + sin((lambda+c+theta)/2) - sin(lambda/2) - sin(theta/2)].
double trapezoid_h_lambda(int k, double lambda, double theta);

ScenarioReport trapezoid_check(int k_max);
/// sin(x + 2^-(k+2)) - sin(x) > 4^-k for x = c/2 in [0, c_max/2], k in [k_lo, k_hi].
ScenarioReport sin_meanval_check(int k_lo, int k_hi, double c_max = 0.75);

// ---------------------------------------------------------------------------
// Scenario drivers

/// Closed form 2^n * 2 sin((2^n + 1) / 2^(2n+2)).
double un_energy_closed_form(int n);
/// Closed form sum_{l<=n} 2^(l-1) * 2 sin(4^-l / 2).
double vn_energy_closed_form(int n);

ScenarioReport cantor_nonexistence_demo(int n_max, std::size_t samples = 100000,
                                        std::uint64_t seed = kDefaultSeed);
ScenarioReport nonlin_demo(int n_max, std::size_t samples = 100000, std::uint64_t seed = kDefaultSeed);
ScenarioReport nonlocality_demo(int k, int m, std::size_t samples = 100000, std::uint64_t seed = kDefaultSeed);
ScenarioReport monotone_pipeline(const PiecewiseConstantBoundary& indicator_of_f, int k_max, double eps0 = 0.1,
                                 std::size_t samples = 100000, std::uint64_t seed = kDefaultSeed);
ScenarioReport minmax_check(const PiecewiseConstantBoundary& f, const PiecewiseConstantBoundary& g,
                            std::size_t samples = 100000, std::uint64_t seed = kDefaultSeed);

/// DP against exhaustive enumeration on seeded random data plus f_n, g_n for n <= 2.
ScenarioReport oracle_suite(int instances = 500, std::size_t samples = 100000, std::uint64_t seed = kDefaultSeed);
/// The two optimal matchings of chi_{|y| > 1/sqrt 2} and their areas.
ScenarioReport nonuniqueness_report();
/// Partition of unity, L1 bound and uniform continuity of the discrete convolution.
ScenarioReport convolution_suite(int instances = 50, std::uint64_t seed = kDefaultSeed);

// ---------------------------------------------------------------------------
// Helpers shared with the command line and the tests

/// Boundary data chi_{|y| > 1/sqrt 2}: breakpoints at pi/4 + k pi/2.
PiecewiseConstantBoundary notconverge_data();

/// Binary data with 2..max_transitions (even) transitions at random angles.
PiecewiseConstantBoundary random_binary_data(std::mt19937_64& rng, std::size_t max_transitions);
/// Union of 1..max_arcs disjoint arcs separated by gaps of at least min_gap.
std::vector<Arc> random_arc_union(std::mt19937_64& rng, int max_arcs, double min_gap);

/// Perimeter inside the disk of {chi = 1} from the mean jump of chi across
/// random segments of length h (Crofton), extending chi radially outside.
Estimate perimeter_estimate(const PlanarFunction& indicator, std::size_t samples, double h = 0.02,
                            std::uint64_t seed = kDefaultSeed);

/// Area of {a = 1} minus {b = 1}.
Estimate excess_area(const PlanarFunction& a, const PlanarFunction& b, std::size_t samples,
                     std::uint64_t seed = kDefaultSeed);

}  // namespace lglab
