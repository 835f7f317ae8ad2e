// Acceptance run: one line per criterion, exit status 1 if any fails.

#include "lglab/analysis.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace lglab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

const Verdict* find(const ScenarioReport& r, const std::string& name) {
  for (const Verdict& v : r.verdicts) {
    if (v.name == name) return &v;
  }
  return nullptr;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

/// Collects failed verdict names of a report into the outcome.
void absorb(Outcome& o, const ScenarioReport& r, const std::string& label) {
  for (const Verdict& v : r.verdicts) {
    if (!v.pass) {
      o.pass = false;
      o.detail += " " + label + ":" + v.name + "=" + fmt(v.value);
    }
  }
}

Outcome cantor_arithmetic() {
  Outcome o;
  for (int n = 0; n <= 12; ++n) {
    const CantorStage s = cantor_stage(n);
    const Rational closed = Rational(pow(BigInt(2), static_cast<unsigned>(n)) + 1) /
                            pow(BigInt(2), static_cast<unsigned>(2 * n + 1));
    for (const Arc& a : s.kept) {
      if (a.measure() != PiRational::rational(closed)) o.pass = false;
    }
    // 2^n (2^n + 1) / 2^(2n+1) = 1/2 + 2^-(n+1)
    if (s.kept_total() != Rational(1, 2) + Rational(1) / pow(BigInt(2), static_cast<unsigned>(n + 1))) o.pass = false;
  }
  if (cantor_measure_limit() != Rational(1, 2)) o.pass = false;
  o.detail = "kept arcs equal (2^n+1)/2^(2n+1) for n <= 12; limit " + to_string(cantor_measure_limit());
  return o;
}

Outcome energy_limit() {
  Outcome o;
  double band = INFINITY;
  double decrease = INFINITY;
  double previous = 0.0;
  for (int n = 2; n <= 14; ++n) {
    const double e = reference_un(n).energy();
    band = std::min({band, e - 0.5, std::ldexp(1.0, -n) - (e - 0.5)});
    if (n > 2) decrease = std::min(decrease, previous - e);
    previous = e;
  }
  o.pass = band >= 1e-12 && decrease >= 1e-12;
  o.detail = "min band margin " + fmt(band) + ", min decrease " + fmt(decrease) + " (need >= 1e-12)";
  return o;
}

Outcome threshold_constant() {
  Outcome o;
  const double bound = 2.0 * std::sin(5.0 / 16.0);
  int first = -1;
  for (int n = 0; n <= 14 && first < 0; ++n) {
    if (reference_un(n).energy() < bound) first = n;
  }
  o.pass = first == 3 && bound > 0.5;
  o.detail = "2 sin(5/16) = " + fmt(bound) + ", first n below it = " + std::to_string(first);
  return o;
}

Outcome solver_oracle() {
  Outcome o;
  const ScenarioReport r = oracle_suite(500, 100000);
  absorb(o, r, "oracle");
  o.detail = "energy gap " + fmt(find(r, "dp_energy_vs_oracle_relative_gap")->value) + ", containment failures " +
             fmt(find(r, "minimal_region_not_contained_exact")->value) + ", max MC excess area " +
             fmt(find(r, "minimal_region_excess_area_monte_carlo")->value) + o.detail;
  return o;
}

Outcome structure() {
  Outcome o;
  int mismatches = 0;
  for (int n = 0; n <= 6; ++n) {
    if (solve_binary(build_fn(n)).matching() != reference_un(n).matching()) ++mismatches;
    if (solve_binary(build_gn(n)).matching() != reference_vn(n).matching()) ++mismatches;
  }
  double max_vn = 0.0;
  for (int n = 1; n <= 12; ++n) max_vn = std::max(max_vn, reference_vn(n).energy());
  o.pass = mismatches == 0 && max_vn < 0.5;
  o.detail = "matching mismatches " + std::to_string(mismatches) + ", max energy(v_n) " + fmt(max_vn);
  return o;
}

Outcome nonuniqueness() {
  Outcome o;
  absorb(o, nonuniqueness_report(), "nonuniqueness");
  const PiecewiseConstantBoundary data = notconverge_data();
  o.detail = "optimal matchings " + std::to_string(enumerate_optimal(data).optimal.size()) + ", areas " +
             fmt(solve_binary(data, SolveMode::minimal).label_area()) + " / " +
             fmt(solve_binary(data, SolveMode::maximal).label_area()) + o.detail;
  return o;
}

Outcome inequalities() {
  Outcome o;
  const ScenarioReport t = trapezoid_check(10);
  const ScenarioReport s = sin_meanval_check(6, 20, 0.75);
  absorb(o, t, "trapezoid");
  absorb(o, s, "sin_meanval");
  double ratio = INFINITY;
  for (int k = 6; k <= 20; ++k) {
    ratio = std::min(ratio, find(s, "sin_meanval_margin[" + std::to_string(k) + "]")->value / std::ldexp(1.0, -2 * k));
  }
  o.detail = "trapezoid k <= 10 grid minima positive, min sin margin / 4^-k = " + fmt(ratio) + o.detail;
  return o;
}

Outcome traces() {
  Outcome o;
  int suites = 0;
  auto run = [&](const ChordConfiguration& c, const std::string& name) {
    absorb(o, trace_suite(c, name), name);
    ++suites;
  };
  for (int n = 0; n <= 6; ++n) {
    run(solve_binary(build_fn(n)), "f" + std::to_string(n));
    run(solve_binary(build_gn(n)), "g" + std::to_string(n));
  }
  run(solve_binary(notconverge_data(), SolveMode::minimal), "notconverge-min");
  run(solve_binary(notconverge_data(), SolveMode::maximal), "notconverge-max");
  const ScenarioReport nl = nonlin_demo(12);
  const ScenarioReport ne = cantor_nonexistence_demo(14);
  const Verdict* cantor = find(nl, "cantor_point_trace_min_at_1e-4");
  const Verdict* zero = find(ne, "zero_limit_trace_at_cantor_points");
  const Verdict* data = find(ne, "data_at_cantor_points");
  o.pass = o.pass && cantor->pass && zero->pass && data->pass;
  o.detail = std::to_string(suites) + " instances x 20 points; limit v at Cantor points >= " + fmt(cantor->value) +
             "; zero-limit trace " + fmt(zero->value) + " vs data " + fmt(data->value) + o.detail;
  return o;
}

Outcome monotone() {
  Outcome o;
  std::mt19937_64 rng(kDefaultSeed);
  int chain_failures = 0;
  int l1_failures = 0;
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const auto arcs = random_arc_union(rng, 4, 0.05);
    const ScenarioReport r = monotone_pipeline(PiecewiseConstantBoundary::indicator(arcs), 8);
    if (!find(r, "comparison_chain_violations")->pass) ++chain_failures;
    const Verdict* l1 = find(r, "l1_u_k_to_limit_once_eps_below_half_gap");
    if (!l1->pass) ++l1_failures;
    worst = std::max(worst, l1->value);
  }
  o.pass = chain_failures == 0 && l1_failures == 0;
  o.detail = "chain failures " + std::to_string(chain_failures) + "/20; L1(u_k, u_inf) >= 1e-2 after eps_k < gap/2 in " +
             std::to_string(l1_failures) + "/20 (worst " + fmt(worst) + ")";
  return o;
}

Outcome convolution() {
  Outcome o;
  const ScenarioReport r = convolution_suite(50);
  absorb(o, r, "convolution");
  o.detail = "partition of unity error " + fmt(find(r, "partition_of_unity_error")->value) + ", max L1 ratio " +
             fmt(find(r, "l1_ratio_max")->value) + ", continuity deviation " +
             fmt(find(r, "uniform_continuity_max_deviation")->value) + o.detail;
  return o;
}

}  // namespace

int main() {
  std::setvbuf(stdout, nullptr, _IOLBF, 0);
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"Cantor arithmetic", cantor_arithmetic},
      {"Energy limit", energy_limit},
      {"Threshold constant", threshold_constant},
      {"Solver-oracle equivalence", solver_oracle},
      {"Structure reproduction", structure},
      {"Non-uniqueness", nonuniqueness},
      {"Inequality suites", inequalities},
      {"Trace suite", traces},
      {"Monotone pipeline", monotone},
      {"Discrete convolution", convolution},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %2zu %-26s %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), secs);
    if (!o.pass) ++failed;
  }
  std::printf("%d of %zu criteria pass\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
