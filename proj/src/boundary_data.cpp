#include "lglab/boundary_data.hpp"

#include "lglab/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <set>

namespace lglab {
namespace {

double wrap_angle(double theta) {
  theta -= kTwoPi * std::floor(theta / kTwoPi);
  return theta >= kTwoPi ? 0.0 : theta;
}

double circular_distance(double a, double b) {
  const double d = std::abs(wrap_angle(a) - wrap_angle(b));
  return std::min(d, kTwoPi - d);
}

void require_binary(const PiecewiseConstantBoundary& f, const char* who) {
  if (!f.is_binary()) throw DomainError(std::string(who) + ": data must take values in {0, 1}");
}

void require_levels(std::span<const double> levels) {
  if (levels.empty()) throw DomainError("quantize: empty level set");
  for (std::size_t i = 1; i < levels.size(); ++i) {
    if (!(levels[i - 1] < levels[i])) throw DomainError("quantize: levels must be strictly increasing");
  }
}

std::size_t level_index(double v, std::span<const double> levels) {
  std::size_t idx = 0;
  while (idx + 1 < levels.size() && v >= 0.5 * (levels[idx] + levels[idx + 1])) ++idx;
  return idx;
}

// Composite 5-point Gauss-Legendre rule on [a, b].
double integrate(const EvaluableBoundary& f, double a, double b, int panels) {
  static constexpr std::array<double, 5> nodes = {0.0, -0.5384693101056831, 0.5384693101056831,
                                                  -0.9061798459386640, 0.9061798459386640};
  static constexpr std::array<double, 5> weights = {0.5688888888888889, 0.4786286704993665,
                                                    0.4786286704993665, 0.2369268850561891,
                                                    0.2369268850561891};
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (std::size_t q = 0; q < nodes.size(); ++q) total += weights[q] * f(mid + 0.5 * h * nodes[q]);
  }
  return 0.5 * h * total;
}

}  // namespace

// ---------------------------------------------------------------------------
// PiecewiseConstantBoundary

PiecewiseConstantBoundary::PiecewiseConstantBoundary(std::vector<BoundaryAngle> breakpoints,
                                                     std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (breakpoints_.empty() ? values_.size() != 1 : values_.size() != breakpoints_.size()) {
    throw DomainError("PiecewiseConstantBoundary: need one value per breakpoint (or one value, no breakpoints)");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw DomainError("PiecewiseConstantBoundary: non-finite value");
  }
  normalize();
}

PiecewiseConstantBoundary PiecewiseConstantBoundary::constant(double c) {
  return PiecewiseConstantBoundary({}, {c});
}

PiecewiseConstantBoundary PiecewiseConstantBoundary::indicator(std::span<const Arc> arcs) {
  if (arcs.empty()) return constant(0.0);
  // Sweep of +1/-1 events; arcs wrapping past angle 0 cover it initially.
  std::vector<std::pair<BoundaryAngle, int>> events;
  events.reserve(2 * arcs.size());
  int coverage = 0;
  for (const Arc& arc : arcs) {
    if (arc.is_full()) return constant(1.0);
    events.emplace_back(arc.start, 1);
    events.emplace_back(arc.end, -1);
    if (arc.end < arc.start) ++coverage;
  }
  std::sort(events.begin(), events.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<BoundaryAngle> points;
  std::vector<double> values;
  for (std::size_t i = 0; i < events.size();) {
    std::size_t j = i;
    while (j < events.size() && events[j].first == events[i].first) coverage += events[j++].second;
    points.push_back(events[i].first);
    values.push_back(coverage > 0 ? 1.0 : 0.0);
    i = j;
  }
  return PiecewiseConstantBoundary(std::move(points), std::move(values));
}

void PiecewiseConstantBoundary::normalize() {
  const std::size_t n = breakpoints_.size();
  if (n > 0) {
    const auto first = std::min_element(breakpoints_.begin(), breakpoints_.end()) - breakpoints_.begin();
    std::rotate(breakpoints_.begin(), breakpoints_.begin() + first, breakpoints_.end());
    std::rotate(values_.begin(), values_.begin() + first, values_.end());
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (!(breakpoints_[i] < breakpoints_[i + 1])) {
        throw DomainError("PiecewiseConstantBoundary: breakpoints not cyclically strictly increasing");
      }
    }
    std::vector<BoundaryAngle> kept_points;
    std::vector<double> kept_values;
    for (std::size_t i = 0; i < n; ++i) {
      if (values_[i] != values_[(i + n - 1) % n]) {
        kept_points.push_back(breakpoints_[i]);
        kept_values.push_back(values_[i]);
      }
    }
    if (kept_points.empty()) {
      kept_values = {values_.front()};
    }
    breakpoints_ = std::move(kept_points);
    values_ = std::move(kept_values);
  }
  radians_.clear();
  for (const BoundaryAngle& b : breakpoints_) radians_.push_back(b.radians());
}

bool PiecewiseConstantBoundary::is_binary() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0 || v == 1.0; });
}

Arc PiecewiseConstantBoundary::piece(std::size_t i) const {
  if (is_constant()) return Arc{BoundaryAngle{}, BoundaryAngle{}};
  return Arc{breakpoints_[i], breakpoints_[(i + 1) % breakpoints_.size()]};
}

std::vector<Arc> PiecewiseConstantBoundary::arcs_with_value(double v) const {
  std::vector<Arc> arcs;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] == v) arcs.push_back(piece(i));
  }
  return arcs;
}

double PiecewiseConstantBoundary::value_at(const BoundaryAngle& a) const {
  if (is_constant()) return values_.front();
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), a);
  if (it == breakpoints_.begin()) return values_.back();
  return values_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
}

double PiecewiseConstantBoundary::operator()(double theta) const {
  if (is_constant()) return values_.front();
  const double t = wrap_angle(theta);
  const auto it = std::upper_bound(radians_.begin(), radians_.end(), t);
  if (it == radians_.begin()) return values_.back();
  return values_[static_cast<std::size_t>(it - radians_.begin()) - 1];
}

double PiecewiseConstantBoundary::integral_abs() const {
  double total = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) total += std::abs(values_[i]) * piece(i).measure_double();
  return total;
}

double PiecewiseConstantBoundary::average(double theta, double half_width) const {
  if (is_constant()) return values_.front();
  // Antiderivative from angle 0, extended periodically.
  const std::size_t n = radians_.size();
  std::vector<double> prefix(n + 1);
  prefix[0] = radians_[0] * values_.back();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    prefix[i + 1] = prefix[i] + ccw_gap_double(breakpoints_[i], breakpoints_[i + 1]) * values_[i];
  }
  const double period = prefix[n - 1] + (kTwoPi - radians_[n - 1]) * values_.back();
  auto primitive = [&](double x) {
    const double turns = std::floor(x / kTwoPi);
    const double t = x - turns * kTwoPi;
    double within;
    const auto it = std::upper_bound(radians_.begin(), radians_.end(), t);
    if (it == radians_.begin()) {
      within = t * values_.back();
    } else {
      const auto i = static_cast<std::size_t>(it - radians_.begin()) - 1;
      within = prefix[i] + (t - radians_[i]) * values_[i];
    }
    return turns * period + within;
  };
  return (primitive(theta + half_width) - primitive(theta - half_width)) / (2.0 * half_width);
}

double PiecewiseConstantBoundary::distance_to_breakpoint(double theta) const {
  if (is_constant()) return std::numeric_limits<double>::infinity();
  const double t = wrap_angle(theta);
  const auto it = std::upper_bound(radians_.begin(), radians_.end(), t);
  const std::size_t n = radians_.size();
  const std::size_t hi = static_cast<std::size_t>(it - radians_.begin()) % n;
  const std::size_t lo = (hi + n - 1) % n;
  return std::min(circular_distance(t, radians_[hi]), circular_distance(t, radians_[lo]));
}

PiecewiseConstantBoundary PiecewiseConstantBoundary::superlevel(double t) const {
  std::vector<double> v(values_.size());
  std::transform(values_.begin(), values_.end(), v.begin(), [t](double x) { return x > t ? 1.0 : 0.0; });
  return PiecewiseConstantBoundary(breakpoints_, std::move(v));
}

PiecewiseConstantBoundary PiecewiseConstantBoundary::plus(double c) const {
  std::vector<double> v(values_);
  for (double& x : v) x += c;
  return PiecewiseConstantBoundary(breakpoints_, std::move(v));
}

PiecewiseConstantBoundary PiecewiseConstantBoundary::scaled(double s) const {
  std::vector<double> v(values_);
  for (double& x : v) x *= s;
  return PiecewiseConstantBoundary(breakpoints_, std::move(v));
}

std::vector<double> PiecewiseConstantBoundary::distinct_values() const {
  std::vector<double> v(values_);
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

bool pointwise_leq(const PiecewiseConstantBoundary& f, const PiecewiseConstantBoundary& g) {
  std::vector<BoundaryAngle> points(f.breakpoints());
  points.insert(points.end(), g.breakpoints().begin(), g.breakpoints().end());
  if (points.empty()) return f.values().front() <= g.values().front();
  return std::all_of(points.begin(), points.end(),
                     [&](const BoundaryAngle& p) { return f.value_at(p) <= g.value_at(p); });
}

EvaluableBoundary EvaluableBoundary::from(PiecewiseConstantBoundary data) {
  return EvaluableBoundary([d = std::move(data)](double theta) { return d(theta); });
}

// ---------------------------------------------------------------------------
// Cantor construction

Rational CantorStage::kept_total() const {
  Rational total{0};
  for (const Arc& a : kept) total += a.measure().offset();
  return total;
}

Rational CantorStage::removed_total() const {
  Rational total{0};
  for (const RemovedArc& r : removed) total += r.arc.measure().offset();
  return total;
}

Arc cantor_base_arc() {
  return Arc{BoundaryAngle::from_offset(Rational(-1, 2)), BoundaryAngle::from_offset(Rational(1, 2))};
}

CantorStage cantor_stage(int n, const Rational& ratio) {
  if (n < 0 || n > kMaxCantorStage) throw DomainError("cantor_stage: stage outside [0, 24]");
  if (!(ratio > 0 && ratio < Rational(1, 2))) throw DomainError("cantor_stage: ratio outside (0, 1/2)");

  struct Interval {
    Rational lo, hi;
  };
  std::vector<Interval> kept{{Rational(-1, 2), Rational(1, 2)}};
  std::vector<std::pair<int, Interval>> removed;
  Rational length{1};
  for (int level = 1; level <= n; ++level) {
    length *= ratio;
    std::vector<Interval> next;
    next.reserve(2 * kept.size());
    for (const Interval& iv : kept) {
      if (!(iv.hi - iv.lo > length)) throw DomainError("cantor_stage: removed arc does not fit");
      const Rational center = (iv.lo + iv.hi) / 2;
      const Rational half = length / 2;
      next.push_back({iv.lo, center - half});
      next.push_back({center + half, iv.hi});
      removed.push_back({level, {center - half, center + half}});
    }
    kept = std::move(next);
  }
  std::sort(removed.begin(), removed.end(),
            [](const auto& a, const auto& b) { return a.second.lo < b.second.lo; });

  CantorStage stage;
  stage.n = n;
  stage.kept.reserve(kept.size());
  for (const Interval& iv : kept) {
    stage.kept.push_back({BoundaryAngle::from_offset(iv.lo), BoundaryAngle::from_offset(iv.hi)});
  }
  for (const auto& [level, iv] : removed) {
    stage.removed.push_back({level, {BoundaryAngle::from_offset(iv.lo), BoundaryAngle::from_offset(iv.hi)}});
  }
  return stage;
}

Rational cantor_kept_arc_measure(int n) {
  if (n < 0) throw DomainError("cantor_kept_arc_measure: negative stage");
  const BigInt two_n = pow(BigInt(2), static_cast<unsigned>(n));
  return Rational(two_n + 1, pow(BigInt(2), static_cast<unsigned>(2 * n + 1)));
}

Rational cantor_measure_limit(const Rational& ratio) {
  if (!(ratio > 0 && ratio < Rational(1, 2))) throw DomainError("cantor_measure_limit: ratio outside (0, 1/2)");
  return 1 - ratio / (1 - 2 * ratio);
}

PiecewiseConstantBoundary build_fn(int n) { return PiecewiseConstantBoundary::indicator(cantor_stage(n).kept); }

PiecewiseConstantBoundary build_gn(int n) {
  const CantorStage stage = cantor_stage(n);
  std::vector<Arc> removed;
  removed.reserve(stage.removed.size());
  for (const RemovedArc& r : stage.removed) removed.push_back(r.arc);
  return PiecewiseConstantBoundary::indicator(removed).scaled(-1.0).plus(1.0);
}

PiecewiseConstantBoundary build_restricted_fn(int n, int k, int m) {
  if (k < 0 || k > n) throw DomainError("build_restricted_fn: need 0 <= k <= n");
  if (m < 1 || m > (1 << k)) throw DomainError("build_restricted_fn: arc index out of range");
  const Arc parent = cantor_stage(k).kept[static_cast<std::size_t>(m - 1)];
  std::vector<Arc> inside;
  for (const Arc& a : cantor_stage(n).kept) {
    if (!(a.start < parent.start) && !(parent.end < a.end)) inside.push_back(a);
  }
  return PiecewiseConstantBoundary::indicator(inside);
}

// ---------------------------------------------------------------------------
// Continuous approximants

EvaluableBoundary eta_plus(const PiecewiseConstantBoundary& indicator_of_f, double eps) {
  if (!(eps > 0.0)) throw DomainError("eta_plus: eps must be positive");
  require_binary(indicator_of_f, "eta_plus");
  return EvaluableBoundary([f = indicator_of_f, eps](double theta) {
    if (f(theta) == 1.0) return 1.0;
    if (f.is_constant()) return 0.0;
    return std::max(1.0 - f.distance_to_breakpoint(theta) / eps, 0.0);
  });
}

EvaluableBoundary eta_minus(const PiecewiseConstantBoundary& indicator_of_f, double eps) {
  if (!(eps > 0.0)) throw DomainError("eta_minus: eps must be positive");
  require_binary(indicator_of_f, "eta_minus");
  return EvaluableBoundary([f = indicator_of_f, eps](double theta) {
    if (f(theta) == 0.0) return 0.0;
    if (f.is_constant()) return 1.0;
    return std::min(f.distance_to_breakpoint(theta) / eps, 1.0);
  });
}

// ---------------------------------------------------------------------------
// Discrete convolution

void DiscreteConvolution::init_grid(double eps) {
  if (!(eps > 0.0 && eps < kPi / 4.0)) throw DomainError("discrete_convolution: eps outside (0, pi/4)");
  eps_ = eps;
  const auto count = static_cast<std::size_t>(std::ceil(kTwoPi / (0.4 * eps)));
  spacing_ = kTwoPi / static_cast<double>(count);
  averages_.assign(count, 0.0);
}

DiscreteConvolution::DiscreteConvolution(const PiecewiseConstantBoundary& f, double eps) {
  init_grid(eps);
  for (std::size_t i = 0; i < averages_.size(); ++i) averages_[i] = f.average(center(i), eps_);
}

DiscreteConvolution::DiscreteConvolution(const EvaluableBoundary& f, double eps) {
  init_grid(eps);
  for (std::size_t i = 0; i < averages_.size(); ++i) {
    const double c = center(i);
    averages_[i] = integrate(f, c - eps_, c + eps_, 16) / (2.0 * eps_);
  }
}

std::vector<std::pair<std::size_t, double>> DiscreteConvolution::weights(double theta) const {
  const double t = wrap_angle(theta);
  const double support = 2.0 * eps_;
  const auto n = static_cast<long long>(averages_.size());
  const auto first = static_cast<long long>(std::ceil((t - support) / spacing_));
  const auto last = static_cast<long long>(std::floor((t + support) / spacing_));
  std::vector<std::pair<std::size_t, double>> out;
  double total = 0.0;
  for (long long j = first; j <= last; ++j) {
    const double hat = 1.0 - std::abs(t - static_cast<double>(j) * spacing_) / support;
    if (hat <= 0.0) continue;
    const auto index = static_cast<std::size_t>(((j % n) + n) % n);
    out.emplace_back(index, hat);
    total += hat;
  }
  for (auto& w : out) w.second /= total;
  return out;
}

std::size_t DiscreteConvolution::overlap_bound() const {
  return static_cast<std::size_t>(std::floor(4.0 * eps_ / spacing_)) + 1;
}

double DiscreteConvolution::operator()(double theta) const {
  double value = 0.0;
  for (const auto& [i, w] : weights(theta)) value += w * averages_[i];
  return value;
}

EvaluableBoundary DiscreteConvolution::as_evaluable() const {
  return EvaluableBoundary([self = *this](double theta) { return self(theta); });
}

DiscreteConvolution discrete_convolution(const PiecewiseConstantBoundary& f, double eps) {
  return DiscreteConvolution(f, eps);
}

DiscreteConvolution discrete_convolution(const EvaluableBoundary& f, double eps) {
  return DiscreteConvolution(f, eps);
}

// ---------------------------------------------------------------------------
// Quantization

namespace {

struct Crossing {
  double theta;
  double value_after;
};

std::vector<Crossing> locate_crossings(const EvaluableBoundary& f, std::span<const double> levels,
                                       std::size_t resolution) {
  std::vector<std::size_t> index(resolution);
  const double h = kTwoPi / static_cast<double>(resolution);
  for (std::size_t i = 0; i < resolution; ++i) index[i] = level_index(f(h * static_cast<double>(i)), levels);

  std::vector<Crossing> crossings;
  for (std::size_t i = 0; i < resolution; ++i) {
    const std::size_t a = index[i];
    const std::size_t b = index[(i + 1) % resolution];
    if (a == b) continue;
    const double lo0 = h * static_cast<double>(i);
    const double hi0 = lo0 + h;
    const bool rising = a < b;
    const std::size_t from = std::min(a, b);
    const std::size_t to = std::max(a, b);
    std::vector<Crossing> local;
    for (std::size_t j = from; j < to; ++j) {
      const double threshold = 0.5 * (levels[j] + levels[j + 1]);
      double lo = lo0;
      double hi = hi0;
      // Invariant: (f(lo) >= threshold) == !rising, (f(hi) >= threshold) == rising.
      while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if ((f(mid) >= threshold) == rising) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
      local.push_back({0.5 * (lo + hi), rising ? levels[j + 1] : levels[j]});
    }
    if (!rising) std::reverse(local.begin(), local.end());
    crossings.insert(crossings.end(), local.begin(), local.end());
  }
  return crossings;
}

PiecewiseConstantBoundary assemble(std::vector<Crossing> crossings, double fallback) {
  if (crossings.empty()) return PiecewiseConstantBoundary::constant(fallback);
  for (Crossing& c : crossings) c.theta = wrap_angle(c.theta);
  std::stable_sort(crossings.begin(), crossings.end(),
                   [](const Crossing& a, const Crossing& b) { return a.theta < b.theta; });
  std::vector<BoundaryAngle> points;
  std::vector<double> values;
  for (std::size_t i = 0; i < crossings.size(); ++i) {
    if (i + 1 < crossings.size() && crossings[i + 1].theta == crossings[i].theta) continue;
    points.push_back(BoundaryAngle::from_radians(crossings[i].theta));
    values.push_back(crossings[i].value_after);
  }
  return PiecewiseConstantBoundary(std::move(points), std::move(values));
}

}  // namespace

QuantizeResult quantize(const EvaluableBoundary& f, std::span<const double> levels, std::size_t resolution) {
  require_levels(levels);
  if (resolution < 16) resolution = 16;
  constexpr std::size_t kMaxResolution = std::size_t{1} << 22;

  QuantizeResult result;
  std::vector<Crossing> coarse = locate_crossings(f, levels, resolution);
  while (true) {
    std::vector<Crossing> fine = locate_crossings(f, levels, 2 * resolution);
    if (fine.size() == coarse.size() || 2 * resolution >= kMaxResolution) {
      if (fine.size() != coarse.size()) {
        result.warnings.push_back("quantize: crossings still unstable at resolution " +
                                  std::to_string(2 * resolution));
      }
      const double fallback = levels[level_index(f(0.0), levels)];
      result.data = assemble(std::move(coarse), fallback);
      result.resolution = resolution;
      return result;
    }
    result.warnings.push_back("quantize: resolution " + std::to_string(resolution) +
                              " insufficient to isolate crossings; retrying at " +
                              std::to_string(2 * resolution));
    resolution *= 2;
    coarse = std::move(fine);
  }
}

PiecewiseConstantBoundary quantize(const PiecewiseConstantBoundary& f, std::span<const double> levels) {
  require_levels(levels);
  std::vector<double> v(f.values());
  for (double& x : v) x = levels[level_index(x, levels)];
  return PiecewiseConstantBoundary(f.breakpoints(), std::move(v));
}

}  // namespace lglab
