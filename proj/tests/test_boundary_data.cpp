#include "lglab/boundary_data.hpp"
#include "lglab/errors.hpp"

#include <doctest.h>

#include <array>
#include <cmath>

using namespace lglab;

namespace {

BoundaryAngle off(long long p, long long q = 1) { return BoundaryAngle::from_offset(Rational(p, q)); }

std::vector<Rational> offsets(const PiecewiseConstantBoundary& f) {
  std::vector<Rational> out;
  for (const BoundaryAngle& a : f.breakpoints()) {
    REQUIRE(a.offset().pi_coeff() == 0);
    out.push_back(a.offset().offset());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_SUITE("boundary_data") {
  TEST_CASE("normal form") {
    const PiecewiseConstantBoundary f({off(0), off(1), off(2)}, {1.0, 1.0, 0.0});
    CHECK(f.piece_count() == 2);
    CHECK(f.values() == std::vector<double>{1.0, 0.0});
    CHECK(PiecewiseConstantBoundary({off(0), off(1)}, {2.0, 2.0}).is_constant());
    CHECK_THROWS_AS(PiecewiseConstantBoundary({off(1), off(0), off(2)}, {1.0, 0.0, 1.0}), DomainError);
    CHECK_THROWS_AS(PiecewiseConstantBoundary({off(0), off(0)}, {1.0, 0.0}), DomainError);
  }

  TEST_CASE("indicator of overlapping and wrapping arcs") {
    const std::array<Arc, 2> arcs{Arc{off(0), off(2)}, Arc{off(1), off(3)}};
    const auto f = PiecewiseConstantBoundary::indicator(arcs);
    CHECK(f.piece_count() == 2);
    CHECK(f.value_at(off(5, 2)) == 1.0);
    CHECK(f.value_at(off(4)) == 0.0);
    const std::array<Arc, 1> wrap{Arc{off(3), off(1)}};
    const auto g = PiecewiseConstantBoundary::indicator(wrap);
    CHECK(g.value_at(off(0)) == 1.0);
    CHECK(g.value_at(off(2)) == 0.0);
    CHECK(PiecewiseConstantBoundary::indicator(std::span<const Arc>{}).is_constant());
  }

  TEST_CASE("average and distances") {
    const auto f = build_fn(0);
    CHECK(f.average(kPi / 2, 0.25) == doctest::Approx(1.0));
    CHECK(f.average(kPi / 2 + 0.5, 0.25) == doctest::Approx(0.5));
    CHECK(f.distance_to_breakpoint(kPi / 2) == doctest::Approx(0.5));
    CHECK(f.integral_abs() == doctest::Approx(1.0));
  }

  TEST_CASE("pointwise order") {
    CHECK(pointwise_leq(build_fn(2), build_gn(2)));
    CHECK(pointwise_leq(build_fn(3), build_fn(2)));
    CHECK_FALSE(pointwise_leq(build_fn(2), build_fn(3)));
    CHECK(pointwise_leq(PiecewiseConstantBoundary::constant(0.0), build_fn(1)));
  }

  TEST_CASE("cantor stages") {
    const CantorStage s0 = cantor_stage(0);
    CHECK(s0.kept.size() == 1);
    CHECK(s0.removed.empty());
    CHECK(s0.kept[0].measure() == PiRational::rational(Rational(1)));

    const CantorStage s1 = cantor_stage(1);
    REQUIRE(s1.kept.size() == 2);
    CHECK(s1.kept[0].measure() == PiRational::rational(Rational(3, 8)));
    CHECK(s1.kept[1].measure() == PiRational::rational(Rational(3, 8)));
    REQUIRE(s1.removed.size() == 1);
    CHECK(s1.removed[0].arc.measure() == PiRational::rational(Rational(1, 4)));
    CHECK(s1.removed[0].arc.midpoint() == off(0));
    CHECK(s1.kept_total() == Rational(3, 4));

    const CantorStage s2 = cantor_stage(2);
    for (const Arc& a : s2.kept) CHECK(a.measure() == PiRational::rational(Rational(5, 32)));
    CHECK(cantor_stage(4).kept_total() == Rational(17, 32));
    CHECK(cantor_measure_limit() == Rational(1, 2));

    CHECK_THROWS_AS(cantor_stage(-1), DomainError);
    CHECK_THROWS_AS(cantor_stage(25), DomainError);
  }

  TEST_CASE("cantor measure identities hold exactly") {
    for (int n = 0; n <= 12; ++n) {
      const CantorStage s = cantor_stage(n);
      CHECK(s.kept.size() == (std::size_t{1} << n));
      Rational removed_formula{0};
      for (int l = 1; l <= n; ++l) removed_formula += Rational(1 << (l - 1), 1) / pow(BigInt(4), static_cast<unsigned>(l));
      CHECK(s.kept_total() == 1 - removed_formula);
      CHECK(s.kept_total() + s.removed_total() == 1);
      for (const Arc& a : s.kept) CHECK(a.measure() == PiRational::rational(cantor_kept_arc_measure(n)));
      for (const RemovedArc& r : s.removed) {
        CHECK(r.arc.measure() == PiRational::rational(Rational(1) / pow(BigInt(4), static_cast<unsigned>(r.level))));
      }
      // Symmetric about pi/2.
      CHECK(s.kept.front().start.offset() == -s.kept.back().end.offset());
    }
  }

  TEST_CASE("f_n and g_n") {
    CHECK(offsets(build_fn(1)) == std::vector<Rational>{Rational(-1, 2), Rational(-1, 8), Rational(1, 8), Rational(1, 2)});
    const auto g1 = build_gn(1);
    CHECK(offsets(g1) == std::vector<Rational>{Rational(-1, 8), Rational(1, 8)});
    CHECK(g1.value_at(off(0)) == 0.0);
    CHECK(g1.value_at(off(3)) == 1.0);
    const std::array<Arc, 1> base{cantor_base_arc()};
    CHECK(build_fn(0) == PiecewiseConstantBoundary::indicator(base));
    CHECK(build_gn(0).is_constant());
    CHECK(build_restricted_fn(2, 1, 1).piece_count() == 4);
  }

  TEST_CASE("eta dilations") {
    const auto f = build_fn(0);
    const double eps = 0.1;
    const auto plus = eta_plus(f, eps);
    const auto minus = eta_minus(f, eps);
    CHECK(plus(kPi / 2) == 1.0);
    CHECK(plus(kPi / 2 + 0.5 + eps / 2) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(plus(kPi / 2 + 0.5 + eps) == doctest::Approx(0.0));
    CHECK(plus(kPi / 2 + 2.0) == 0.0);
    CHECK(minus(kPi / 2) == 1.0);
    CHECK(minus(kPi / 2 + 0.5 - eps / 2) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(minus(kPi / 2 + 2.0) == 0.0);
    CHECK_THROWS_AS(eta_plus(f, 0.0), DomainError);
    CHECK_THROWS_AS(eta_minus(f, -1.0), DomainError);

    const auto data = build_fn(2);
    const auto p1 = eta_plus(data, 0.01), p2 = eta_plus(data, 0.05);
    const auto m1 = eta_minus(data, 0.01), m2 = eta_minus(data, 0.05);
    for (int i = 0; i < 10000; ++i) {
      const double t = kTwoPi * i / 10000;
      const double chi = data(t);
      CHECK(chi <= p1(t));
      CHECK(p1(t) <= p2(t));
      CHECK(m2(t) <= m1(t));
      CHECK(m1(t) <= chi);
    }
  }

  TEST_CASE("discrete convolution") {
    const DiscreteConvolution c(PiecewiseConstantBoundary::constant(0.7), 0.05);
    for (int i = 0; i < 100; ++i) CHECK(c(kTwoPi * i / 100) == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(c.size() == static_cast<std::size_t>(std::ceil(kTwoPi / (0.4 * 0.05))));

    const DiscreteConvolution j1(build_fn(1), 0.01);
    CHECK(j1(kPi / 2) == 0.0);

    for (double eps : {0.003, 0.05, 0.5}) {
      const DiscreteConvolution conv(build_fn(2), eps);
      for (int i = 0; i < 10000; ++i) {
        const auto w = conv.weights(kTwoPi * i / 10000);
        double sum = 0.0;
        for (const auto& [idx, wt] : w) sum += wt;
        CHECK(std::abs(sum - 1.0) <= 1e-12);
        CHECK(w.size() <= conv.overlap_bound());
      }
    }
    CHECK_THROWS_AS(DiscreteConvolution(build_fn(1), 0.0), DomainError);
    CHECK_THROWS_AS(DiscreteConvolution(build_fn(1), 1.0), DomainError);

    const auto smooth = discrete_convolution(EvaluableBoundary([](double t) { return std::sin(t); }), 0.01);
    CHECK(smooth(1.0) == doctest::Approx(std::sin(1.0)).epsilon(1e-3));
  }

  TEST_CASE("quantize") {
    const std::array<double, 2> levels{0.0, 1.0};
    const auto f = build_fn(2);
    CHECK(quantize(f, levels) == f);
    const auto sampled = quantize(EvaluableBoundary::from(f), levels).data;
    REQUIRE(sampled.breakpoints().size() == f.breakpoints().size());
    for (std::size_t i = 0; i < f.breakpoints().size(); ++i) {
      CHECK(sampled.breakpoints()[i].radians() == doctest::Approx(f.breakpoints()[i].radians()).epsilon(1e-12));
      CHECK(sampled.values()[i] == f.values()[i]);
    }

    const double eps = 0.1;
    const auto q = quantize(eta_plus(build_fn(0), eps), levels).data;
    REQUIRE(q.breakpoints().size() == 2);
    std::vector<double> got{q.breakpoints()[0].radians(), q.breakpoints()[1].radians()};
    std::sort(got.begin(), got.end());
    CHECK(got[0] == doctest::Approx(kPi / 2 - 0.5 - eps / 2).epsilon(1e-11));
    CHECK(got[1] == doctest::Approx(kPi / 2 + 0.5 + eps / 2).epsilon(1e-11));

    const auto zero = quantize(EvaluableBoundary([](double) { return 0.3; }), levels).data;
    CHECK(zero == PiecewiseConstantBoundary::constant(0.0));

    const std::array<double, 3> three{0.0, 1.0, 2.0};
    const PiecewiseConstantBoundary g({off(0), off(1), off(2)}, {0.2, 1.6, 0.9});
    CHECK(quantize(g, three).values() == std::vector<double>{0.0, 2.0, 1.0});
  }
}
