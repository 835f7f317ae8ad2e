#include "lglab/cli.hpp"

#include "lglab/errors.hpp"
#include "lglab/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

namespace lglab {
namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::uint64_t seed = kDefaultSeed;
  std::optional<std::size_t> samples;
  std::string out_path;
  std::string render_path;
  // generate
  std::vector<std::string> spec;
  // solve / trace
  std::string input;
  std::string input_spec;
  std::string mode = "minimal";
  std::string point;
  double r0 = 8e-3;
  int levels = 4;
  // verify
  std::string suite;
  std::optional<int> n_max;
  int k = 1;
  int m = 1;
  int k_max = 8;
  int instances = 20;
};

void write_text(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open '" + path + "' for writing");
  f << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

PiecewiseConstantBoundary load_input(const RunConfig& cfg) {
  if (!cfg.input_spec.empty()) {
    if (!cfg.input.empty()) throw UsageError("give either an input file or --spec, not both");
    return generate_from_spec(cfg.input_spec);
  }
  if (cfg.input.empty()) throw UsageError("missing input file (or --spec)");
  std::ifstream f(cfg.input);
  if (!f) throw UsageError("cannot read '" + cfg.input + "'");
  Json j;
  try {
    j = Json::parse(f);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return boundary_from_json(j);
}

SolveMode parse_mode(const std::string& mode) {
  if (mode == "minimal") return SolveMode::minimal;
  if (mode == "maximal") return SolveMode::maximal;
  throw UsageError("mode must be minimal or maximal");
}

int cmd_generate(const RunConfig& cfg, std::ostream& out) {
  std::string spec;
  for (const std::string& s : cfg.spec) spec += (spec.empty() ? "" : " ") + s;
  write_text(dump(boundary_to_json(generate_from_spec(spec))), cfg.out_path, out);
  return kExitOk;
}

int cmd_solve(const RunConfig& cfg, std::ostream& out) {
  const PiecewiseConstantBoundary data = load_input(cfg);
  const SolveMode mode = parse_mode(cfg.mode);
  if (data.is_binary()) {
    const ChordConfiguration config = solve_binary(data, mode);
    write_text(dump(solution_to_json(config, mode)), cfg.out_path, out);
    if (!cfg.render_path.empty()) write_text(render_svg(config), cfg.render_path, out);
    return kExitOk;
  }
  if (mode != SolveMode::minimal) throw UsageError("maximal mode needs binary data");
  const LevelSetStack stack = solve_general(data);
  write_text(dump(stack_to_json(stack, data)), cfg.out_path, out);
  if (!cfg.render_path.empty()) write_text(render_stack_svg(stack, data), cfg.render_path, out);
  return kExitOk;
}

int cmd_trace(const RunConfig& cfg, std::ostream& out) {
  const PiecewiseConstantBoundary data = load_input(cfg);
  const LevelSetStack stack = solve_general(data);
  const PlanarFunction u = stack_to_function(stack);
  const BoundaryAngle x = cfg.point.empty() ? data.piece(0).midpoint() : BoundaryAngle::parse(cfg.point);
  const TraceEstimate est = trace(u, x, cfg.r0, cfg.levels, cfg.samples.value_or(2000), cfg.seed);
  write_text(dump(trace_to_json(est, data.value_at(x))), cfg.out_path, out);
  return kExitOk;
}

ScenarioReport run_suite(const RunConfig& cfg) {
  const std::string& s = cfg.suite;
  const std::size_t samples = cfg.samples.value_or(100000);
  if (s == "nonexistence") return cantor_nonexistence_demo(cfg.n_max.value_or(14), samples, cfg.seed);
  if (s == "nonlinearity") return nonlin_demo(cfg.n_max.value_or(12), samples, cfg.seed);
  if (s == "nonlocality") return nonlocality_demo(cfg.k, cfg.m, samples, cfg.seed);
  if (s == "inequalities") {
    ScenarioReport r;
    r.scenario = "inequalities";
    r.seed = cfg.seed;
    r.merge(trapezoid_check(10), "trapezoid/");
    r.merge(sin_meanval_check(6, 20), "sin_meanval/");
    return r;
  }
  if (s == "oracle") {
    ScenarioReport r = oracle_suite(500, samples, cfg.seed);
    r.merge(nonuniqueness_report(), "nonuniqueness/");
    return r;
  }
  if (s == "monotone") {
    ScenarioReport r;
    r.scenario = "monotone";
    r.seed = cfg.seed;
    std::mt19937_64 rng(cfg.seed);
    for (int i = 0; i < cfg.instances; ++i) {
      const auto arcs = random_arc_union(rng, 4, 0.05);
      r.merge(monotone_pipeline(PiecewiseConstantBoundary::indicator(arcs), cfg.k_max, 0.1, samples, cfg.seed),
              "F" + std::to_string(i) + "/");
    }
    r.merge(monotone_pipeline(notconverge_data(), cfg.k_max, 0.1, samples, cfg.seed), "notconverge/");
    return r;
  }
  if (s == "convolution") return convolution_suite(50, cfg.seed);
  throw UsageError("unknown suite '" + s + "'");
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const ScenarioReport report = run_suite(cfg);
  write_text(dump(report_to_json(report)), cfg.out_path, out);
  return report.passed() ? kExitOk : kExitFailure;
}

void diagnostic(std::ostream& err, const std::string& kind, const std::string& message) {
  Json j;
  j["error"] = kind;
  j["message"] = message;
  err << j.dump() << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Least-gradient solver and verification harness for the unit disk", "lglab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
    sub->add_option("--samples", cfg.samples, "Monte Carlo samples");
    sub->add_option("--out", cfg.out_path, "Output file (default: standard output)");
  };

  CLI::App* gen = app.add_subcommand("generate", "Write boundary data JSON");
  gen->add_option("spec", cfg.spec, "cantor-fn N | cantor-gn N | arcs [a:b,...] | notconverge")->required();
  add_common(gen);

  CLI::App* solve = app.add_subcommand("solve", "Solve boundary data and write the solution JSON");
  solve->add_option("input", cfg.input, "Boundary JSON file");
  solve->add_option("--spec", cfg.input_spec, "Generator spec instead of an input file");
  solve->add_option("--mode", cfg.mode, "minimal or maximal")->check(CLI::IsMember({"minimal", "maximal"}));
  solve->add_option("--render", cfg.render_path, "Also write an SVG drawing");
  add_common(solve);

  CLI::App* verify = app.add_subcommand("verify", "Run a verification suite and write its report");
  verify->add_option("suite", cfg.suite,
                     "nonexistence | nonlinearity | nonlocality | monotone | inequalities | oracle | convolution")
      ->required();
  verify->add_option("--n-max", cfg.n_max, "Largest stage for the Cantor suites");
  verify->add_option("--k", cfg.k, "Stage of the restricted arc (nonlocality)");
  verify->add_option("--m", cfg.m, "Index of the restricted arc (nonlocality)");
  verify->add_option("--k-max", cfg.k_max, "Last approximation index (monotone)");
  verify->add_option("--instances", cfg.instances, "Random arc unions (monotone)");
  add_common(verify);

  CLI::App* tr = app.add_subcommand("trace", "Estimate the boundary trace of the solution at a point");
  tr->add_option("input", cfg.input, "Boundary JSON file");
  tr->add_option("--spec", cfg.input_spec, "Generator spec instead of an input file");
  tr->add_option("--point", cfg.point, "Boundary angle (offset from pi/2)");
  tr->add_option("--r0", cfg.r0, "Largest radius");
  tr->add_option("--levels", cfg.levels, "Number of dyadic radii");
  add_common(tr);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*gen) return cmd_generate(cfg, out);
    if (*solve) return cmd_solve(cfg, out);
    if (*verify) return cmd_verify(cfg, out);
    return cmd_trace(cfg, out);
  } catch (const UsageError& e) {
    diagnostic(err, "usage", e.what());
    return kExitUsage;
  } catch (const ParseError& e) {
    diagnostic(err, "parse", e.what());
    return kExitUsage;
  } catch (const NestednessError& e) {
    diagnostic(err, "nestedness", e.what());
    return kExitFailure;
  } catch (const SizeError& e) {
    diagnostic(err, "size", e.what());
    return kExitFailure;
  } catch (const InvalidCellError& e) {
    diagnostic(err, "invalid_cell", e.what());
    return kExitFailure;
  } catch (const DomainError& e) {
    diagnostic(err, "domain", e.what());
    return kExitFailure;
  }
}

}  // namespace lglab
