#include "lglab/analysis.hpp"
#include "lglab/chord_solver.hpp"
#include "lglab/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace lglab;

namespace {

// Crossing-number test against a finely sampled polygon of the cell boundary.
bool winding_reference(const Point& p, const Cell& cell) {
  std::vector<Point> poly;
  for (const Edge& e : cell.edges) {
    if (e.kind == EdgeKind::chord) {
      poly.push_back(e.from.point());
      continue;
    }
    const double start = e.from.radians();
    const double measure = e.from == e.to ? kTwoPi : ccw_gap_double(e.from, e.to);
    const int steps = std::max(4, static_cast<int>(std::ceil(measure / 0.002)));
    for (int i = 0; i < steps; ++i) {
      const double t = start + measure * i / steps;
      poly.emplace_back(std::cos(t), std::sin(t));
    }
  }
  bool inside = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const Point& a = poly[i];
    const Point& b = poly[j];
    if ((a.y() > p.y()) != (b.y() > p.y()) && p.x() < (b.x() - a.x()) * (p.y() - a.y()) / (b.y() - a.y()) + a.x()) {
      inside = !inside;
    }
  }
  return inside;
}

double distance_to_chord_edges(const Point& p, const Cell& cell) {
  double best = 1.0;
  for (const Edge& e : cell.edges) {
    if (e.kind != EdgeKind::chord) continue;
    const Point a = e.from.point();
    const Point d = e.to.point() - a;
    const double t = std::clamp((p - a).dot(d) / d.squaredNorm(), 0.0, 1.0);
    best = std::min(best, (p - a - t * d).norm());
  }
  return best;
}

}  // namespace

TEST_SUITE("exact") {
  TEST_CASE("angle strings round trip") {
    for (const char* s : {"0", "-1/2", "1/4pi", "3/8-1/2pi", "7/1024+1pi"}) {
      const PiRational a = PiRational::parse(s);
      CHECK(PiRational::parse(a.to_string()) == a);
    }
    CHECK(PiRational::parse("pi") == PiRational::pi_multiple(Rational(1)));
    CHECK(PiRational::parse(" -3/4 * pi ") == PiRational::pi_multiple(Rational(-3, 4)));
    CHECK_THROWS_AS(PiRational::parse("1/0"), ParseError);
    CHECK_THROWS_AS(PiRational::parse("abc"), ParseError);
    CHECK_THROWS_AS(PiRational::parse(""), ParseError);
  }

  TEST_CASE("exact sign separates values close to rational multiples of pi") {
    CHECK((PiRational::pi_multiple(Rational(1)) - PiRational::rational(Rational(355, 113))).sign() < 0);
    CHECK((PiRational::pi_multiple(Rational(1)) - PiRational::rational(Rational(333, 106))).sign() > 0);
  }

  TEST_CASE("from_radians keeps the double exactly") {
    const double x = 1.2345678901234567;
    CHECK(BoundaryAngle::from_radians(x).radians() == x);
    CHECK(rational_from_double(0.375) == Rational(3, 8));
  }
}

TEST_SUITE("circle_geometry") {
  TEST_CASE("angles normalize modulo two pi") {
    const BoundaryAngle a = BoundaryAngle::from_offset(Rational(0));
    CHECK(a.radians() == doctest::Approx(kPi / 2).epsilon(1e-15));
    CHECK(BoundaryAngle(PiRational::pi_multiple(Rational(2))) == a);
    CHECK(BoundaryAngle::from_pi_fraction(Rational(1, 4)) < BoundaryAngle::from_pi_fraction(Rational(1, 2)));
    CHECK(ccw_gap(BoundaryAngle::from_offset(Rational(1, 8)), BoundaryAngle::from_offset(Rational(-1, 8))) ==
          PiRational(Rational(2), Rational(-1, 4)));
  }

  TEST_CASE("arc measure and membership") {
    const Arc a{BoundaryAngle::from_offset(Rational(-1, 2)), BoundaryAngle::from_offset(Rational(1, 2))};
    CHECK(a.measure() == PiRational::rational(Rational(1)));
    CHECK(a.contains(BoundaryAngle::from_offset(Rational(-1, 2))));
    CHECK_FALSE(a.contains(BoundaryAngle::from_offset(Rational(1, 2))));
    CHECK(a.midpoint() == BoundaryAngle::from_offset(Rational(0)));
    const Arc full{a.start, a.start};
    CHECK(full.is_full());
    CHECK(full.measure_double() == doctest::Approx(kTwoPi));
  }

  TEST_CASE("chord_length") {
    CHECK(chord_length(0.0) == 0.0);
    CHECK(chord_length(kPi) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(chord_length(5.0 / 8.0) == doctest::Approx(0.6148770291607617).epsilon(1e-15));
    CHECK_THROWS_AS(chord_length(-0.1), DomainError);
    CHECK_THROWS_AS(chord_length(7.0), DomainError);
    const double h = 1e-3;
    for (double t = h; t < kPi - h; t += 0.01) {
      CHECK(chord_length(t + h) - 2 * chord_length(t) + chord_length(t - h) <= 1e-9);
    }
  }

  TEST_CASE("segment_area") {
    CHECK(segment_area(0.0) == 0.0);
    CHECK(segment_area(kPi) == doctest::Approx(kPi / 2).epsilon(1e-15));
    CHECK(segment_area(kPi / 2) == doctest::Approx(0.28539816339744831).epsilon(1e-15));
    CHECK_THROWS_AS(segment_area(-1.0), DomainError);
    for (int i = 0; i <= 100; ++i) {
      const double t = kTwoPi * i / 100;
      CHECK(std::abs(segment_area(t) + segment_area(kTwoPi - t) - kPi) <= 1e-12);
    }
  }

  TEST_CASE("cell_area") {
    CHECK(cell_area(disk_cell(1)) == doctest::Approx(kPi).epsilon(1e-15));
    const Arc quarter{BoundaryAngle::from_pi_fraction(Rational(0)), BoundaryAngle::from_pi_fraction(Rational(1, 2))};
    CHECK(cell_area(cap_cell(quarter)) == doctest::Approx(0.28539816339744831).epsilon(1e-14));

    Cell square;
    for (int k = 0; k < 4; ++k) {
      square.edges.push_back({EdgeKind::chord, BoundaryAngle::from_pi_fraction(Rational(1, 4) + Rational(k, 2)),
                              BoundaryAngle::from_pi_fraction(Rational(3, 4) + Rational(k, 2))});
    }
    CHECK(cell_area(square) == doctest::Approx(2.0).epsilon(1e-14));

    Cell clockwise = square;
    std::reverse(clockwise.edges.begin(), clockwise.edges.end());
    for (Edge& e : clockwise.edges) std::swap(e.from, e.to);
    CHECK_THROWS_AS(validate_cell(clockwise), InvalidCellError);
    Cell open = square;
    open.edges.pop_back();
    CHECK_THROWS_AS(validate_cell(open), InvalidCellError);
  }

  TEST_CASE("point_in_cell") {
    CHECK(point_in_cell(Point(0, 0), disk_cell()));
    const Cell cap = cap_cell(cantor_base_arc());
    CHECK(point_in_cell(Point(0, 0.99), cap));
    CHECK_FALSE(point_in_cell(Point(0, 0), cap));
    CHECK_FALSE(point_in_cell(Point(0, 0.8775825618903727), cap));  // on the chord
    CHECK_THROWS_AS(point_in_cell(Point(1, 0), cap), DomainError);
  }

  TEST_CASE("point_in_cell agrees with a winding-number reference") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int checked = 0;
    int disagreements = 0;
    while (checked < 10000) {
      const ChordConfiguration config = solve_binary(random_binary_data(rng, 10));
      for (const Cell& cell : config.cells()) {
        for (int i = 0; i < 100; ++i) {
          const double r = std::sqrt(unit(rng));
          const double t = kTwoPi * unit(rng);
          const Point p(r * std::cos(t), r * std::sin(t));
          if (1.0 - r < 1e-4 || distance_to_chord_edges(p, cell) < 1e-9) continue;
          if (point_in_cell(p, cell) != winding_reference(p, cell)) ++disagreements;
          ++checked;
        }
      }
    }
    CHECK(disagreements == 0);
  }

  TEST_CASE("cell areas of a configuration sum to pi") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
      const ChordConfiguration config = solve_binary(random_binary_data(rng, 16));
      double total = 0.0;
      for (const Cell& c : config.cells()) total += cell_area(c);
      CHECK(std::abs(total - kPi) <= 1e-9);
    }
  }
}
