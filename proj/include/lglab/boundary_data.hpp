#pragma once

// Boundary data on the unit circle: piecewise-constant functions with exact
// breakpoints, continuous evaluable functions, the fat Cantor construction and
// its approximants, the eta dilations and the discrete convolution.

#include "lglab/circle_geometry.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace lglab {

/// values[i] holds on the half-open arc [breakpoints[i], breakpoints[i+1]),
/// indices taken cyclically. Always kept in normalized form: breakpoints sorted
/// by absolute angle, no duplicates, adjacent values distinct. A constant
/// function has no breakpoints and a single value.
class PiecewiseConstantBoundary {
 public:
  PiecewiseConstantBoundary() : values_{0.0} {}
  /// breakpoints must be cyclically strictly increasing; equal neighbouring
  /// values are merged. Throws DomainError on malformed input.
  PiecewiseConstantBoundary(std::vector<BoundaryAngle> breakpoints, std::vector<double> values);

  static PiecewiseConstantBoundary constant(double c);
  /// Characteristic function of a union of arcs (overlaps allowed).
  static PiecewiseConstantBoundary indicator(std::span<const Arc> arcs);

  const std::vector<BoundaryAngle>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t piece_count() const { return values_.size(); }
  bool is_constant() const { return breakpoints_.empty(); }
  bool is_binary() const;

  /// The i-th piece as an arc (the full circle for constant data).
  Arc piece(std::size_t i) const;
  /// Arcs on which the function equals v.
  std::vector<Arc> arcs_with_value(double v) const;

  double value_at(const BoundaryAngle& a) const;
  double operator()(double theta) const;

  /// Integral of |f| against arc length.
  double integral_abs() const;
  /// Mean of f over the arc of half-width w centred at theta.
  double average(double theta, double half_width) const;
  /// Circular distance from theta to the nearest breakpoint (infinity if none).
  double distance_to_breakpoint(double theta) const;

  /// chi_{f > t}.
  PiecewiseConstantBoundary superlevel(double t) const;
  PiecewiseConstantBoundary plus(double c) const;
  PiecewiseConstantBoundary scaled(double s) const;
  /// Sorted distinct values.
  std::vector<double> distinct_values() const;

  friend bool operator==(const PiecewiseConstantBoundary& a, const PiecewiseConstantBoundary& b) {
    return a.breakpoints_ == b.breakpoints_ && a.values_ == b.values_;
  }

 private:
  void normalize();

  std::vector<BoundaryAngle> breakpoints_;
  std::vector<double> values_;
  std::vector<double> radians_;
};

/// f <= g at every point, decided exactly on the common refinement.
bool pointwise_leq(const PiecewiseConstantBoundary& f, const PiecewiseConstantBoundary& g);

/// A boundary function given by an evaluator on absolute angles (radians).
class EvaluableBoundary {
 public:
  using Function = std::function<double(double)>;

  EvaluableBoundary() = default;
  explicit EvaluableBoundary(Function f) : f_(std::move(f)) {}
  static EvaluableBoundary from(PiecewiseConstantBoundary data);

  double operator()(double theta) const { return f_(theta); }

 private:
  Function f_;
};

// ---------------------------------------------------------------------------
// Fat Cantor set on the arc I_0 = [pi/2 - 1/2, pi/2 + 1/2].

struct RemovedArc {
  int level;
  Arc arc;
};

struct CantorStage {
  int n = 0;
  std::vector<Arc> kept;          ///< I_{n,1..2^n}, counterclockwise order
  std::vector<RemovedArc> removed;  ///< C_{l,m} for l <= n, counterclockwise order
  Rational kept_total() const;
  Rational removed_total() const;
};

inline constexpr int kMaxCantorStage = 24;

/// The arc I_0 of length 1 centred at pi/2.
Arc cantor_base_arc();
/// Stage n of the construction removing centred arcs of length ratio^l at level l.
CantorStage cantor_stage(int n, const Rational& ratio = Rational(1, 4));
/// Closed form (2^n + 1) / 2^(2n+1) of each kept arc for ratio 1/4.
Rational cantor_kept_arc_measure(int n);
/// Limit of the kept measure: 1 - ratio / (1 - 2 ratio); equals 1/2 for ratio 1/4.
Rational cantor_measure_limit(const Rational& ratio = Rational(1, 4));

/// f_n = chi_{J_n}.
PiecewiseConstantBoundary build_fn(int n);
/// g_n = chi_{J_n} + chi_F with F the complement of I_0: zero exactly on removed arcs.
PiecewiseConstantBoundary build_gn(int n);
/// chi_{J_n cap I_{k,m}} with m counted from 1 in counterclockwise order.
PiecewiseConstantBoundary build_restricted_fn(int n, int k, int m);

// ---------------------------------------------------------------------------
// Continuous approximants.

/// max{1 - dist(x, F)/eps, 0}, intrinsic arc-length distance. F is given by
/// its indicator.
EvaluableBoundary eta_plus(const PiecewiseConstantBoundary& indicator_of_f, double eps);
/// min{dist(x, complement of F)/eps, 1}.
EvaluableBoundary eta_minus(const PiecewiseConstantBoundary& indicator_of_f, double eps);

/// Discrete convolution of boundary data at scale eps: ball averages over
/// arcs of half-width eps about evenly spaced centres, blended by a
/// normalized piecewise-linear partition of unity supported in the arcs of
/// half-width 2 eps.
class DiscreteConvolution {
 public:
  DiscreteConvolution(const PiecewiseConstantBoundary& f, double eps);
  DiscreteConvolution(const EvaluableBoundary& f, double eps);

  double eps() const { return eps_; }
  std::size_t size() const { return averages_.size(); }
  double spacing() const { return spacing_; }
  double center(std::size_t i) const { return spacing_ * static_cast<double>(i); }
  double ball_average(std::size_t i) const { return averages_[i]; }

  /// Partition-of-unity weights that are positive at theta.
  std::vector<std::pair<std::size_t, double>> weights(double theta) const;
  /// Largest possible number of centres whose support contains a point.
  std::size_t overlap_bound() const;

  double operator()(double theta) const;
  EvaluableBoundary as_evaluable() const;

 private:
  void init_grid(double eps);

  double eps_ = 0.0;
  double spacing_ = 0.0;
  std::vector<double> averages_;
};

DiscreteConvolution discrete_convolution(const PiecewiseConstantBoundary& f, double eps);
DiscreteConvolution discrete_convolution(const EvaluableBoundary& f, double eps);

struct QuantizeResult {
  PiecewiseConstantBoundary data;
  std::vector<std::string> warnings;
  std::size_t resolution = 0;
};

/// Projects f onto the nearest of the given levels (ties go up). Crossings
/// are bracketed on a uniform grid and located by bisection to 1e-12 rad; the
/// grid is doubled until two successive resolutions agree.
QuantizeResult quantize(const EvaluableBoundary& f, std::span<const double> levels,
                        std::size_t resolution = 4096);
/// Exact variant for data that is already piecewise constant.
PiecewiseConstantBoundary quantize(const PiecewiseConstantBoundary& f, std::span<const double> levels);

}  // namespace lglab
