#include "lglab/io.hpp"

#include "lglab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace lglab {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

int parse_stage(const std::string& text, const std::string& spec) {
  try {
    std::size_t used = 0;
    const int n = std::stoi(text, &used);
    if (used != text.size()) throw ParseError("");
    return n;
  } catch (const std::exception&) {
    throw ParseError("generator spec '" + spec + "': expected an integer stage, got '" + text + "'");
  }
}

Json matching_json(const Matching& m) {
  Json out = Json::array();
  for (const auto& [i, j] : m) out.push_back(Json::array({i, j}));
  return out;
}

// SVG coordinates: unit circle of radius 450 centred in a 1000x1000 canvas.
constexpr double kCanvas = 1000.0;
constexpr double kRadius = 450.0;

std::string svg_xy(const Point& p) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f %.3f", kCanvas / 2 + kRadius * p.x(), kCanvas / 2 - kRadius * p.y());
  return buf;
}

/// Counterclockwise in the plane is clockwise on screen, hence sweep flag 0.
std::string svg_arc_to(const BoundaryAngle& from, const BoundaryAngle& to) {
  const double measure = from == to ? kTwoPi : ccw_gap_double(from, to);
  std::ostringstream os;
  if (from == to) {
    // A full circle needs two half arcs.
    const Point mid = -from.point();
    os << "A " << kRadius << ' ' << kRadius << " 0 0 0 " << svg_xy(mid) << ' ';
    os << "A " << kRadius << ' ' << kRadius << " 0 0 0 " << svg_xy(to.point()) << ' ';
    return os.str();
  }
  os << "A " << kRadius << ' ' << kRadius << " 0 " << (measure > kPi ? 1 : 0) << " 0 " << svg_xy(to.point()) << ' ';
  return os.str();
}

std::string cell_path(const Cell& cell) {
  std::ostringstream os;
  os << "M " << svg_xy(cell.edges.front().from.point()) << ' ';
  for (const Edge& e : cell.edges) {
    if (e.kind == EdgeKind::chord) {
      os << "L " << svg_xy(e.to.point()) << ' ';
    } else {
      os << svg_arc_to(e.from, e.to);
    }
  }
  os << 'Z';
  return os.str();
}

/// Blue for the lowest data value, red for the highest.
std::string value_colour(double v, double lo, double hi) {
  const double t = hi > lo ? (v - lo) / (hi - lo) : 1.0;
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(31 + t * (214 - 31)),
                static_cast<int>(119 + t * (39 - 119)), static_cast<int>(180 + t * (40 - 180)));
  return buf;
}

void svg_open(std::ostringstream& os) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1000\" height=\"1000\" viewBox=\"0 0 1000 1000\">\n";
  os << "<rect width=\"1000\" height=\"1000\" fill=\"white\"/>\n";
}

void svg_data_arcs(std::ostringstream& os, const PiecewiseConstantBoundary& data) {
  const auto distinct = data.distinct_values();
  const double lo = distinct.front();
  const double hi = distinct.back();
  for (std::size_t i = 0; i < data.piece_count(); ++i) {
    const Arc a = data.piece(i);
    os << "<path d=\"M " << svg_xy(a.start.point()) << ' ' << svg_arc_to(a.start, a.end) << "\" fill=\"none\" stroke=\""
       << value_colour(data.values()[i], lo, hi) << "\" stroke-width=\"8\"/>\n";
  }
}

void svg_chords(std::ostringstream& os, const ChordConfiguration& config, const char* colour) {
  for (std::size_t k = 0; k < config.matching().size(); ++k) {
    const auto [a, b] = config.chord(k);
    os << "<path d=\"M " << svg_xy(a.point()) << " L " << svg_xy(b.point()) << "\" stroke=\"" << colour
       << "\" stroke-width=\"1.5\" fill=\"none\"/>\n";
  }
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_double(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (!j.is_string()) throw ParseError("expected a number or a numeric string");
  const auto s = j.get<std::string>();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw ParseError("");
    return v;
  } catch (const std::exception&) {
    throw ParseError("malformed numeric string '" + s + "'");
  }
}

Json boundary_to_json(const PiecewiseConstantBoundary& data) {
  Json j;
  j["breakpoints"] = Json::array();
  for (const BoundaryAngle& a : data.breakpoints()) j["breakpoints"].push_back(a.to_string());
  j["values"] = Json::array();
  for (double v : data.values()) j["values"].push_back(v);
  return j;
}

PiecewiseConstantBoundary boundary_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("breakpoints") || !j.contains("values")) {
    throw ParseError("boundary JSON needs \"breakpoints\" and \"values\"");
  }
  const Json& bp = j["breakpoints"];
  const Json& vals = j["values"];
  if (!bp.is_array() || !vals.is_array()) throw ParseError("\"breakpoints\" and \"values\" must be arrays");
  std::vector<double> values;
  for (const Json& v : vals) values.push_back(parse_double(v));
  if (bp.empty()) {
    if (values.size() != 1) throw ParseError("constant data needs exactly one value");
    return PiecewiseConstantBoundary::constant(values[0]);
  }
  if (bp.size() != values.size()) throw ParseError("breakpoints and values differ in length");
  std::vector<BoundaryAngle> angles;
  for (const Json& a : bp) {
    if (!a.is_string()) throw ParseError("breakpoints must be angle strings");
    angles.push_back(BoundaryAngle::parse(a.get<std::string>()));
  }
  return PiecewiseConstantBoundary(std::move(angles), std::move(values));
}

PiecewiseConstantBoundary generate_from_spec(std::string_view spec_text) {
  const std::string spec = trim(spec_text);
  const auto space = spec.find_first_of(" \t");
  const std::string head = spec.substr(0, space);
  const std::string rest = space == std::string::npos ? std::string{} : trim(spec.substr(space));
  if (head == "notconverge") {
    if (!rest.empty()) throw ParseError("notconverge takes no arguments");
    return notconverge_data();
  }
  if (head == "cantor-fn" || head == "cantor-gn") {
    const int n = parse_stage(rest, spec);
    if (n < 0 || n > kMaxCantorStage) throw ParseError("stage outside [0, 24] in '" + spec + "'");
    return head == "cantor-fn" ? build_fn(n) : build_gn(n);
  }
  if (head == "arcs") {
    if (rest.size() < 2 || rest.front() != '[' || rest.back() != ']') {
      throw ParseError("arcs spec must look like \"arcs [a:b, c:d]\"");
    }
    std::vector<Arc> arcs;
    std::stringstream list(rest.substr(1, rest.size() - 2));
    std::string item;
    while (std::getline(list, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      const auto colon = item.find(':');
      if (colon == std::string::npos) throw ParseError("arc '" + item + "' lacks a ':'");
      try {
        arcs.push_back({BoundaryAngle::parse(trim(item.substr(0, colon))), BoundaryAngle::parse(trim(item.substr(colon + 1)))});
      } catch (const ParseError& e) {
        throw ParseError("arc '" + item + "': " + e.what());
      }
    }
    return PiecewiseConstantBoundary::indicator(arcs);
  }
  throw ParseError("unknown generator '" + head + "'");
}

Json report_to_json(const ScenarioReport& report) {
  Json j;
  j["scenario"] = report.scenario;
  j["verdicts"] = Json::array();
  for (const Verdict& v : report.verdicts) {
    j["verdicts"].push_back({{"name", v.name},
                             {"value", format_double(v.value)},
                             {"tolerance", format_double(v.tolerance)},
                             {"pass", v.pass}});
  }
  j["seed"] = report.seed;
  j["version"] = kVersion;
  j["pass"] = report.passed();
  j["tables"] = Json::array();
  for (const ReportTable& t : report.tables) {
    Json rows = Json::array();
    for (const auto& row : t.rows) {
      Json r = Json::array();
      for (double x : row) r.push_back(format_double(x));
      rows.push_back(std::move(r));
    }
    j["tables"].push_back({{"name", t.name}, {"columns", t.columns}, {"rows", std::move(rows)}});
  }
  j["notes"] = report.notes;
  return j;
}

Json solution_to_json(const ChordConfiguration& config, SolveMode mode) {
  Json j;
  j["mode"] = mode == SolveMode::minimal ? "minimal" : "maximal";
  j["energy"] = format_double(config.energy());
  j["label_area"] = format_double(config.label_area());
  j["matching"] = matching_json(config.matching());
  j["chords"] = Json::array();
  for (std::size_t k = 0; k < config.matching().size(); ++k) {
    const auto [a, b] = config.chord(k);
    j["chords"].push_back(Json::array({a.to_string(), b.to_string()}));
  }
  j["data"] = boundary_to_json(config.data());
  j["version"] = kVersion;
  return j;
}

Json stack_to_json(const LevelSetStack& stack, const PiecewiseConstantBoundary& data) {
  Json j;
  j["mode"] = "minimal";
  j["energy"] = format_double(bv_energy(stack));
  j["base_value"] = format_double(stack.base_value);
  j["levels"] = Json::array();
  for (std::size_t k = 0; k < stack.configs.size(); ++k) {
    const ChordConfiguration& c = stack.configs[k];
    j["levels"].push_back({{"threshold", format_double(stack.thresholds[k])},
                           {"value", format_double(stack.level_values[k])},
                           {"gap", format_double(stack.gap(k))},
                           {"energy", format_double(c.energy())},
                           {"label_area", format_double(c.label_area())},
                           {"matching", matching_json(c.matching())}});
  }
  j["data"] = boundary_to_json(data);
  j["version"] = kVersion;
  return j;
}

Json trace_to_json(const TraceEstimate& estimate, double data_value) {
  Json j;
  j["point"] = estimate.point.to_string();
  j["radians"] = format_double(estimate.point.radians());
  j["radii"] = Json::array();
  j["averages"] = Json::array();
  j["std_errors"] = Json::array();
  for (std::size_t k = 0; k < estimate.radii.size(); ++k) {
    j["radii"].push_back(format_double(estimate.radii[k]));
    j["averages"].push_back(format_double(estimate.averages[k]));
    j["std_errors"].push_back(format_double(estimate.std_errors[k]));
  }
  j["limit"] = format_double(estimate.limit);
  j["residual"] = format_double(estimate.residual);
  j["data_value"] = format_double(data_value);
  j["starved"] = estimate.starved;
  j["version"] = kVersion;
  return j;
}

std::string render_svg(const ChordConfiguration& config) {
  std::ostringstream os;
  svg_open(os);
  for (const Cell& cell : config.cells()) {
    if (cell.label == 1) os << "<path d=\"" << cell_path(cell) << "\" fill=\"#f4a582\" fill-opacity=\"0.6\"/>\n";
  }
  os << "<circle cx=\"500\" cy=\"500\" r=\"450\" fill=\"none\" stroke=\"#888888\" stroke-width=\"1\"/>\n";
  svg_chords(os, config, "black");
  svg_data_arcs(os, config.data());
  os << "</svg>\n";
  return os.str();
}

std::string render_stack_svg(const LevelSetStack& stack, const PiecewiseConstantBoundary& data) {
  std::ostringstream os;
  svg_open(os);
  double total = 0.0;
  for (std::size_t k = 0; k < stack.configs.size(); ++k) total += std::abs(stack.gap(k));
  for (std::size_t k = 0; k < stack.configs.size(); ++k) {
    const double opacity = total > 0.0 ? std::abs(stack.gap(k)) / total : 0.0;
    for (const Cell& cell : stack.configs[k].cells()) {
      if (cell.label != 1) continue;
      os << "<path d=\"" << cell_path(cell) << "\" fill=\"#b2182b\" fill-opacity=\"" << format_double(opacity)
         << "\"/>\n";
    }
  }
  os << "<circle cx=\"500\" cy=\"500\" r=\"450\" fill=\"none\" stroke=\"#888888\" stroke-width=\"1\"/>\n";
  for (const ChordConfiguration& c : stack.configs) svg_chords(os, c, "black");
  svg_data_arcs(os, data);
  os << "</svg>\n";
  return os.str();
}

}  // namespace lglab
