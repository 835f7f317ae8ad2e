#pragma once

// JSON documents and SVG drawings for boundary data, solutions and reports.

#include "lglab/analysis.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace lglab {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "1.0.0";

/// Decimal string with 17 significant digits; "inf", "-inf", "nan" otherwise.
std::string format_double(double x);
/// Accepts a JSON number or a string produced by format_double.
double parse_double(const Json& j);

/// {"breakpoints": [angle strings, offsets from pi/2], "values": [numbers]}.
Json boundary_to_json(const PiecewiseConstantBoundary& data);
/// Throws ParseError on schema violations, DomainError on invalid data.
PiecewiseConstantBoundary boundary_from_json(const Json& j);

/// Generator specs: "cantor-fn n", "cantor-gn n", "arcs [a:b, ...]", "notconverge".
/// Arc endpoints are angle strings (offsets from pi/2). Throws ParseError.
PiecewiseConstantBoundary generate_from_spec(std::string_view spec);

Json report_to_json(const ScenarioReport& report);
Json solution_to_json(const ChordConfiguration& config, SolveMode mode);
Json stack_to_json(const LevelSetStack& stack, const PiecewiseConstantBoundary& data);
Json trace_to_json(const TraceEstimate& estimate, double data_value);

/// 1000x1000 drawing: unit circle, data arcs coloured by value, chords and
/// shaded label-1 cells.
std::string render_svg(const ChordConfiguration& config);
/// Every level region shaded with opacity proportional to its gap.
std::string render_stack_svg(const LevelSetStack& stack, const PiecewiseConstantBoundary& data);

}  // namespace lglab
