#pragma once

// Exact and floating-point primitives on the unit circle and the unit disk.

#include "lglab/exact.hpp"

#include <Eigen/Core>

#include <compare>
#include <numbers>
#include <string>
#include <vector>

namespace lglab {

using Point = Eigen::Vector2d;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// A point of the unit circle, stored as an exact offset from the reference
/// angle pi/2 and normalized so that the absolute angle lies in [0, 2pi).
class BoundaryAngle {
 public:
  BoundaryAngle() : BoundaryAngle(PiRational{}) {}

  /// pi/2 + offset, reduced modulo 2pi.
  explicit BoundaryAngle(PiRational offset);

  static BoundaryAngle from_offset(const Rational& offset) {
    return BoundaryAngle(PiRational::rational(offset));
  }
  /// Absolute angle q*pi.
  static BoundaryAngle from_pi_fraction(const Rational& q) {
    return BoundaryAngle(PiRational::pi_multiple(q - Rational(1, 2)));
  }
  /// Absolute angle in radians; the double is taken exactly.
  static BoundaryAngle from_radians(double theta);
  /// Offset-from-pi/2 string, see PiRational::parse.
  static BoundaryAngle parse(std::string_view text) { return BoundaryAngle(PiRational::parse(text)); }

  const PiRational& offset() const { return offset_; }
  /// Absolute angle in [0, 2pi).
  PiRational absolute() const { return offset_ + PiRational::pi_multiple(Rational(1, 2)); }
  double radians() const { return radians_; }
  Point point() const;

  std::string to_string() const { return offset_.to_string(); }

  /// Counterclockwise gap (to - from) mod 2pi in [0, 2pi), exact.
  friend PiRational ccw_gap(const BoundaryAngle& from, const BoundaryAngle& to);
  /// Same quantity in double precision without catastrophic cancellation for
  /// nearby dyadic angles.
  friend double ccw_gap_double(const BoundaryAngle& from, const BoundaryAngle& to);

  BoundaryAngle operator+(const PiRational& delta) const { return BoundaryAngle(offset_ + delta); }
  BoundaryAngle operator-(const PiRational& delta) const { return BoundaryAngle(offset_ - delta); }

  friend bool operator==(const BoundaryAngle& a, const BoundaryAngle& b) {
    return a.offset_ == b.offset_;
  }
  friend std::strong_ordering operator<=>(const BoundaryAngle& a, const BoundaryAngle& b);

 private:
  PiRational offset_;
  double radians_ = 0.0;
  double pi_coeff_d_ = 0.0;
  double offset_d_ = 0.0;
};

/// Counterclockwise half-open arc [start, end). start == end denotes the full circle.
struct Arc {
  BoundaryAngle start;
  BoundaryAngle end;

  bool is_full() const { return start == end; }
  /// Exact arc length in (0, 2pi].
  PiRational measure() const;
  double measure_double() const;
  bool contains(const BoundaryAngle& a) const;
  bool contains(double theta) const;
  /// Angle halfway along the arc.
  BoundaryAngle midpoint() const;
};

/// Length of the chord subtending a circular arc of measure theta: 2 sin(theta/2).
double chord_length(double theta);
/// Area between a chord and the arc of measure theta: (theta - sin theta) / 2.
double segment_area(double theta);

enum class EdgeKind { arc, chord };

/// Oriented boundary piece of a cell; the cell lies to the left.
struct Edge {
  EdgeKind kind;
  BoundaryAngle from;
  BoundaryAngle to;
};

/// A face of the disk cut by non-crossing chords.
struct Cell {
  std::vector<Edge> edges;
  int label = 0;
};

/// Cell made of a single counterclockwise arc and the chord closing it.
Cell cap_cell(const Arc& arc, int label = 1);
/// The whole disk as a single cell.
Cell disk_cell(int label = 0);

/// Validates closure and positive simple orientation; throws InvalidCellError.
void validate_cell(const Cell& cell);
/// Shoelace area of the vertex polygon plus a circular segment per arc edge.
double cell_area(const Cell& cell);
/// Open-interior membership; points on chords are outside. Requires |p| < 1.
bool point_in_cell(const Point& p, const Cell& cell);

}  // namespace lglab
