#include "lglab/circle_geometry.hpp"

#include "lglab/errors.hpp"

#include <cmath>

namespace lglab {
namespace {

const PiRational& half_pi() {
  static const PiRational value = PiRational::pi_multiple(Rational(1, 2));
  return value;
}

double cross(const Point& a, const Point& b) { return a.x() * b.y() - a.y() * b.x(); }

}  // namespace

BoundaryAngle::BoundaryAngle(PiRational offset) : offset_(std::move(offset)) {
  PiRational abs = offset_ + half_pi();
  const double approx = abs.to_double();
  const double turns = std::floor(approx / kTwoPi);
  if (turns != 0.0) {
    const Rational shift = Rational(static_cast<long long>(turns)) * 2;
    offset_ -= PiRational::pi_multiple(shift);
    abs -= PiRational::pi_multiple(shift);
  }
  while (abs.sign() < 0) {
    offset_ += PiRational::two_pi();
    abs += PiRational::two_pi();
  }
  while ((abs - PiRational::two_pi()).sign() >= 0) {
    offset_ -= PiRational::two_pi();
    abs -= PiRational::two_pi();
  }
  radians_ = abs.to_double();
  pi_coeff_d_ = to_double(offset_.pi_coeff());
  offset_d_ = to_double(offset_.offset());
}

BoundaryAngle BoundaryAngle::from_radians(double theta) {
  if (!std::isfinite(theta)) throw DomainError("BoundaryAngle::from_radians: non-finite angle");
  return BoundaryAngle(PiRational(Rational(-1, 2), rational_from_double(theta)));
}

Point BoundaryAngle::point() const { return {std::cos(radians_), std::sin(radians_)}; }

PiRational ccw_gap(const BoundaryAngle& from, const BoundaryAngle& to) {
  PiRational d = to.offset_ - from.offset_;
  if (d.sign() < 0) d += PiRational::two_pi();
  return d;
}

double ccw_gap_double(const BoundaryAngle& from, const BoundaryAngle& to) {
  double d = (to.pi_coeff_d_ - from.pi_coeff_d_) * kPi + (to.offset_d_ - from.offset_d_);
  if (std::abs(d) < 1e-9) {
    if (from == to) return 0.0;
    if (to < from) d += kTwoPi;
    return d;
  }
  if (d < 0.0) d += kTwoPi;
  return d;
}

std::strong_ordering operator<=>(const BoundaryAngle& a, const BoundaryAngle& b) {
  if (a.offset_ == b.offset_) return std::strong_ordering::equal;
  // Separated doubles decide immediately; otherwise fall back to exact arithmetic.
  if (std::abs(a.radians_ - b.radians_) > 1e-9) {
    return a.radians_ < b.radians_ ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return a.offset_ <=> b.offset_;
}

PiRational Arc::measure() const {
  if (is_full()) return PiRational::two_pi();
  return ccw_gap(start, end);
}

double Arc::measure_double() const {
  if (is_full()) return kTwoPi;
  return ccw_gap_double(start, end);
}

bool Arc::contains(const BoundaryAngle& a) const {
  if (is_full()) return true;
  return (ccw_gap(start, a) <=> measure()) < 0;
}

bool Arc::contains(double theta) const {
  if (is_full()) return true;
  double d = theta - start.radians();
  d -= kTwoPi * std::floor(d / kTwoPi);
  return d < measure_double();
}

BoundaryAngle Arc::midpoint() const { return start + measure() * Rational(1, 2); }

double chord_length(double theta) {
  if (!(theta >= 0.0 && theta <= kTwoPi)) throw DomainError("chord_length: angle outside [0, 2pi]");
  return 2.0 * std::sin(theta / 2.0);
}

double segment_area(double theta) {
  if (!(theta >= 0.0 && theta <= kTwoPi)) throw DomainError("segment_area: angle outside [0, 2pi]");
  if (theta < 1e-3) {
    const double t2 = theta * theta;
    return theta * t2 * (1.0 / 12.0 - t2 * (1.0 / 240.0 - t2 / 10080.0));
  }
  return (theta - std::sin(theta)) / 2.0;
}

Cell cap_cell(const Arc& arc, int label) {
  Cell cell;
  cell.label = label;
  cell.edges.push_back({EdgeKind::arc, arc.start, arc.end});
  if (!arc.is_full()) cell.edges.push_back({EdgeKind::chord, arc.end, arc.start});
  return cell;
}

Cell disk_cell(int label) {
  Cell cell;
  cell.label = label;
  const BoundaryAngle origin;
  cell.edges.push_back({EdgeKind::arc, origin, origin});
  return cell;
}

void validate_cell(const Cell& cell) {
  const auto n = cell.edges.size();
  if (n == 0) throw InvalidCellError("cell has no edges");
  PiRational winding;
  for (std::size_t i = 0; i < n; ++i) {
    const Edge& e = cell.edges[i];
    const Edge& next = cell.edges[(i + 1) % n];
    if (!(e.to == next.from)) throw InvalidCellError("consecutive cell edges do not share an endpoint");
    if (e.kind == EdgeKind::chord) {
      if (e.from == e.to) throw InvalidCellError("degenerate chord edge");
      winding += ccw_gap(e.from, e.to);
    } else {
      winding += Arc{e.from, e.to}.measure();
    }
  }
  if (!(winding == PiRational::two_pi())) {
    throw InvalidCellError("cell boundary is not a simple counterclockwise curve");
  }
}

double cell_area(const Cell& cell) {
  validate_cell(cell);
  double polygon = 0.0;
  double segments = 0.0;
  for (const Edge& e : cell.edges) {
    polygon += cross(e.from.point(), e.to.point());
    if (e.kind == EdgeKind::arc) segments += segment_area(Arc{e.from, e.to}.measure_double());
  }
  const double area = polygon / 2.0 + segments;
  if (!(area > 0.0)) throw InvalidCellError("cell has zero area");
  return area;
}

bool point_in_cell(const Point& p, const Cell& cell) {
  if (!(p.squaredNorm() < 1.0)) throw DomainError("point_in_cell: point not inside the open unit disk");
  for (const Edge& e : cell.edges) {
    if (e.kind != EdgeKind::chord) continue;
    const Point a = e.from.point();
    const Point b = e.to.point();
    if (!(cross(b - a, p - a) > 0.0)) return false;
  }
  return true;
}

}  // namespace lglab
