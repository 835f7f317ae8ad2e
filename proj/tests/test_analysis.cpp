#include "lglab/analysis.hpp"
#include "lglab/errors.hpp"

#include <doctest.h>

#include <cmath>

using namespace lglab;

namespace {

const Verdict& verdict(const ScenarioReport& r, const std::string& name) {
  for (const Verdict& v : r.verdicts) {
    if (v.name == name) return v;
  }
  FAIL("missing verdict " << name);
  throw std::logic_error("unreachable");
}

}  // namespace

TEST_SUITE("analysis") {
  TEST_CASE("trace of a constant") {
    const TraceEstimate t = trace([](const Point&) { return 0.4; }, BoundaryAngle::from_offset(Rational(1)), 0.01, 5, 500);
    CHECK(t.limit == doctest::Approx(0.4));
    CHECK(t.residual == doctest::Approx(0.0));
    CHECK(t.radii.size() == 5);
    for (std::size_t k = 1; k < t.radii.size(); ++k) CHECK(t.radii[k] < t.radii[k - 1]);
    CHECK_FALSE(t.starved);
    CHECK_THROWS_AS(trace([](const Point&) { return 0.0; }, BoundaryAngle{}, 1.0, 4, 100), DomainError);
    CHECK_THROWS_AS(trace([](const Point&) { return 0.0; }, BoundaryAngle{}, 0.1, 3, 100), DomainError);
  }

  TEST_CASE("trace of u_1 at the centre of the removed arc") {
    const TraceEstimate t = trace(reference_un(1).to_function(), BoundaryAngle::from_offset(Rational(0)), 8e-3, 4, 2000);
    CHECK(t.limit == 0.0);
  }

  TEST_CASE("trace of v at a Cantor endpoint") {
    const PlanarFunction v = reference_vn(12).to_function();
    const BoundaryAngle x = cantor_stage(6).kept[5].start;
    const TraceEstimate t = trace(v, x, 8e-4, 4, 4000);
    CHECK(t.radii.back() == doctest::Approx(1e-4));
    CHECK(t.limit >= 0.9);
    CHECK(t.residual <= 0.1);
  }

  TEST_CASE("trace suites on solved instances") {
    CHECK(trace_suite(solve_binary(build_fn(3)), "u3").passed());
    CHECK(trace_suite(solve_binary(notconverge_data(), SolveMode::maximal), "band").passed());
  }

  TEST_CASE("trapezoid function") {
    CHECK(trapezoid_h(1, 3.0 / 8.0) > 0.0);
    const double c = std::ldexp(1.0, -2 * 3);
    CHECK(trapezoid_h_lambda(3, 0.0, 0.0) == doctest::Approx(4.0 * std::sin(c / 2)).epsilon(1e-14));
    // Direct (cancellation-prone) evaluation agrees at moderate k.
    const double length = 5.0 / 32.0, cc = 1.0 / 16.0, th = 0.05;
    const double direct = 2 * (std::sin(cc / 2) + std::sin((length + cc + th) / 2) - std::sin(length / 2) - std::sin(th / 2));
    CHECK(trapezoid_h(2, th) == doctest::Approx(direct).epsilon(1e-12));
    const ScenarioReport r = trapezoid_check(10);
    CHECK(r.passed());
    CHECK(verdict(r, "h_lambda_grid_min[10]").value > 0.0);
    CHECK_THROWS_AS(trapezoid_check(21), DomainError);
  }

  TEST_CASE("sin mean-value inequality") {
    const double d = std::ldexp(1.0, -8);
    CHECK(std::sin(0.125 + d) - std::sin(0.125) == doctest::Approx(0.0038748110895042654).epsilon(1e-12));
    CHECK(std::sin(d) == doctest::Approx(0.0039062400659001166).epsilon(1e-14));
    CHECK(sin_meanval_check(6, 20, 0.25).passed());
    const ScenarioReport r = sin_meanval_check(6, 20, 0.75);
    CHECK(r.passed());
    for (int k = 6; k <= 20; ++k) {
      CHECK(verdict(r, "sin_meanval_margin[" + std::to_string(k) + "]").value >= 0.5 * std::ldexp(1.0, -2 * k));
    }
    CHECK_THROWS_AS(sin_meanval_check(5, 8), DomainError);
  }

  TEST_CASE("closed forms") {
    for (int n = 0; n <= 8; ++n) CHECK(std::abs(un_energy_closed_form(n) - reference_un(n).energy()) <= 1e-12);
    for (int n = 1; n <= 8; ++n) CHECK(std::abs(vn_energy_closed_form(n) - reference_vn(n).energy()) <= 1e-12);
    CHECK(un_energy_closed_form(3) == doctest::Approx(0.56238413573097961).epsilon(1e-14));
  }

  TEST_CASE("non-existence scenario") {
    const ScenarioReport r = cantor_nonexistence_demo(3, 20000);
    CHECK(r.passed());
    CHECK(verdict(r, "first_n_below_two_sin_5_16").value == 3.0);
    CHECK_THROWS_AS(cantor_nonexistence_demo(2), DomainError);
  }

  TEST_CASE("non-linearity scenario") {
    const ScenarioReport r = nonlin_demo(6, 20000);
    CHECK(r.passed());
    CHECK_THROWS_AS(nonlin_demo(1), DomainError);
  }

  TEST_CASE("non-locality scenario") {
    const ScenarioReport r = nonlocality_demo(1, 1, 20000);
    CHECK(r.passed());
    CHECK(verdict(r, "restricted_measure_limit").value == 0.25);
    CHECK(nonlocality_demo(2, 3, 20000).passed());
    CHECK_THROWS_AS(nonlocality_demo(1, 3), DomainError);
  }

  TEST_CASE("monotone pipeline") {
    const std::vector<Arc> single{{BoundaryAngle::from_offset(Rational(-1, 2)), BoundaryAngle::from_offset(Rational(1, 2))}};
    const ScenarioReport one = monotone_pipeline(PiecewiseConstantBoundary::indicator(single), 8);
    CHECK(verdict(one, "comparison_chain_violations").value == 0.0);
    CHECK(verdict(one, "l1_u_k_to_limit_nonincreasing").pass);
    CHECK(verdict(one, "l1_u_k_to_limit_last_stage").pass);

    const ScenarioReport empty = monotone_pipeline(PiecewiseConstantBoundary::constant(0.0), 3);
    CHECK(verdict(empty, "comparison_chain_violations").value == 0.0);

    const ScenarioReport nc = monotone_pipeline(notconverge_data(), 8);
    CHECK(verdict(nc, "comparison_chain_violations").value == 0.0);
    CHECK(std::find(nc.notes.begin(), nc.notes.end(), "v_k approach a distinct (maximal) solution") != nc.notes.end());
    CHECK_THROWS_AS(monotone_pipeline(PiecewiseConstantBoundary::constant(2.0), 3), DomainError);
  }

  TEST_CASE("min/max of solutions") {
    CHECK(minmax_check(build_fn(1), build_fn(1)).passed());
    CHECK(minmax_check(build_fn(2), build_gn(2)).passed());
    CHECK(minmax_check(notconverge_data(), PiecewiseConstantBoundary::constant(1.0)).passed());
    CHECK_THROWS_AS(minmax_check(build_gn(1), build_fn(1)), DomainError);
  }

  TEST_CASE("oracle suite") {
    const ScenarioReport r = oracle_suite(60, 20000);
    CHECK(r.passed());
  }

  TEST_CASE("non-uniqueness report") { CHECK(nonuniqueness_report().passed()); }

  TEST_CASE("convolution suite") { CHECK(convolution_suite(10).passed()); }

  TEST_CASE("perimeter estimate") {
    const Estimate half = perimeter_estimate([](const Point& p) { return p.y() > 0 ? 1.0 : 0.0; }, 200000);
    CHECK(half.value == doctest::Approx(2.0).epsilon(0.05));
    CHECK_THROWS_AS(perimeter_estimate([](const Point&) { return 0.0; }, 10, 0.0), DomainError);
  }

  TEST_CASE("reports merge with prefixes") {
    ScenarioReport a;
    a.check("x", 1.0, 0.0, true);
    ScenarioReport b;
    b.check("y", 2.0, 0.0, false);
    b.notes.push_back("n");
    a.merge(b, "b/");
    CHECK(a.verdicts.back().name == "b/y");
    CHECK_FALSE(a.passed());
    CHECK(a.notes == std::vector<std::string>{"b/n"});
  }
}
