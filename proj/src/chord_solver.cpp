#include "lglab/chord_solver.hpp"

#include "lglab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>

namespace lglab {
namespace {

double cross(const Point& a, const Point& b) { return a.x() * b.y() - a.y() * b.x(); }

double wrap_angle(double theta) {
  theta -= kTwoPi * std::floor(theta / kTwoPi);
  return theta >= kTwoPi ? 0.0 : theta;
}

void require_binary(const PiecewiseConstantBoundary& data) {
  if (!data.is_binary()) throw DomainError("chord solver: boundary data must take values in {0, 1}");
}

std::size_t piece_index(const PiecewiseConstantBoundary& data, const BoundaryAngle& a) {
  const auto& bp = data.breakpoints();
  if (bp.empty()) return 0;
  const auto it = std::upper_bound(bp.begin(), bp.end(), a);
  if (it == bp.begin()) return bp.size() - 1;
  return static_cast<std::size_t>(it - bp.begin()) - 1;
}

/// Closed containment of arc x in arc y.
bool arc_within(const Arc& x, const Arc& y) {
  if (y.is_full()) return true;
  if (x.is_full()) return false;
  return (ccw_gap(y.start, x.start) + x.measure() <=> y.measure()) <= 0;
}

constexpr double kTieTolerance = 1e-12;

double pair_energy(const TransitionSequence& ts, std::size_t i, std::size_t k) {
  return chord_length(ccw_gap_double(ts[i].angle, ts[k].angle));
}

/// All non-crossing matchings of the points lo..hi (inclusive, even count).
std::vector<Matching> all_matchings(std::size_t lo, std::size_t hi) {
  if (lo > hi) return {Matching{}};
  std::vector<Matching> out;
  for (std::size_t k = lo + 1; k <= hi; k += 2) {
    const std::vector<Matching> inside = k > lo + 1 ? all_matchings(lo + 1, k - 1) : std::vector<Matching>{{}};
    const std::vector<Matching> outside = k < hi ? all_matchings(k + 1, hi) : std::vector<Matching>{{}};
    for (const Matching& a : inside) {
      for (const Matching& b : outside) {
        Matching m;
        m.reserve(1 + a.size() + b.size());
        m.emplace_back(lo, k);
        m.insert(m.end(), a.begin(), a.end());
        m.insert(m.end(), b.begin(), b.end());
        out.push_back(std::move(m));
      }
    }
  }
  return out;
}

/// Point location for configurations with many chords. A point is labelled
/// by the data value at its angle, flipped once for every chord separating it
/// from the boundary along its ray; only chords whose minor arc covers the
/// angle can do so.
class ChordIndex {
 public:
  explicit ChordIndex(const ChordConfiguration& config) : data_(config.data()) {
    const auto& ts = config.transitions();
    for (const auto& [i, j] : config.matching()) {
      const double gap = ccw_gap_double(ts[i].angle, ts[j].angle);
      Entry e;
      if (gap <= kPi) {
        e.start = ts[i].angle.radians();
        e.measure = gap;
      } else {
        e.start = ts[j].angle.radians();
        e.measure = kTwoPi - gap;
      }
      const double mid = e.start + e.measure / 2.0;
      e.normal = Point(std::cos(mid), std::sin(mid));
      e.height = std::cos(e.measure / 2.0);
      entries_.push_back(e);
    }
    bins_.resize(kBins);
    for (std::uint32_t c = 0; c < entries_.size(); ++c) {
      const auto first = static_cast<std::size_t>(entries_[c].start / kBinWidth);
      const auto last = static_cast<std::size_t>((entries_[c].start + entries_[c].measure) / kBinWidth);
      for (std::size_t b = first; b <= last; ++b) bins_[b % kBins].push_back(c);
    }
  }

  double operator()(const Point& p) const {
    const double phi = wrap_angle(std::atan2(p.y(), p.x()));
    bool label = data_(phi) != 0.0;
    const std::size_t bin = std::min(kBins - 1, static_cast<std::size_t>(phi / kBinWidth));
    for (std::uint32_t c : bins_[bin]) {
      const Entry& e = entries_[c];
      const double d = wrap_angle(phi - e.start);
      if (d < e.measure && p.dot(e.normal) <= e.height) label = !label;
    }
    return label ? 1.0 : 0.0;
  }

 private:
  struct Entry {
    double start = 0.0;
    double measure = 0.0;
    Point normal;
    double height = 0.0;
  };
  static constexpr std::size_t kBins = 1024;
  static constexpr double kBinWidth = kTwoPi / static_cast<double>(kBins);

  PiecewiseConstantBoundary data_;
  std::vector<Entry> entries_;
  std::vector<std::vector<std::uint32_t>> bins_;
};

/// Length of the part of segment [a, b] inside the open convex cell.
double clipped_length(const Point& a, const Point& b, const Cell& cell) {
  double lo = 0.0;
  double hi = 1.0;
  for (const Edge& e : cell.edges) {
    if (e.kind != EdgeKind::chord) continue;
    const Point u = e.from.point();
    const Point dir = e.to.point() - u;
    const double f0 = cross(dir, a - u);
    const double f1 = cross(dir, b - u);
    if (f0 <= 0.0 && f1 <= 0.0) return 0.0;
    if (f0 > 0.0 && f1 > 0.0) continue;
    const double t = f0 / (f0 - f1);
    if (f0 > f1) {
      hi = std::min(hi, t);
    } else {
      lo = std::max(lo, t);
    }
    if (hi <= lo) return 0.0;
  }
  return (hi - lo) * (b - a).norm();
}

enum class Shared { none, same_side, opposite_side };

Shared shared_status(const std::pair<BoundaryAngle, BoundaryAngle>& c, const ChordConfiguration& other) {
  for (std::size_t k = 0; k < other.matching().size(); ++k) {
    const auto d = other.chord(k);
    if (c.first == d.first && c.second == d.second) return Shared::same_side;
    if (c.first == d.second && c.second == d.first) return Shared::opposite_side;
  }
  return Shared::none;
}

/// For each chord of a not shared with b: its length inside the label-1 region of b.
/// Shared chords are reported separately.
struct ChordSplit {
  double inside = 0.0;
  double outside = 0.0;
  double shared_same = 0.0;
};

ChordSplit split_chords(const ChordConfiguration& a, const ChordConfiguration& b) {
  ChordSplit split;
  for (std::size_t k = 0; k < a.matching().size(); ++k) {
    const auto c = a.chord(k);
    const Point p = c.first.point();
    const Point q = c.second.point();
    const double length = (q - p).norm();
    switch (shared_status(c, b)) {
      case Shared::same_side:
        split.shared_same += length;
        continue;
      case Shared::opposite_side:
        continue;
      case Shared::none:
        break;
    }
    double inside = 0.0;
    for (const Cell& cell : b.cells()) {
      if (cell.label == 1) inside += clipped_length(p, q, cell);
    }
    inside = std::min(inside, length);
    split.inside += inside;
    split.outside += length - inside;
  }
  return split;
}

}  // namespace

// ---------------------------------------------------------------------------

TransitionSequence::TransitionSequence(const PiecewiseConstantBoundary& binary_data) {
  require_binary(binary_data);
  const auto& bp = binary_data.breakpoints();
  const auto& values = binary_data.values();
  points_.reserve(bp.size());
  for (std::size_t i = 0; i < bp.size(); ++i) {
    points_.push_back({bp[i], values[i] == 1.0 ? Orientation::rise : Orientation::fall});
  }
}

std::size_t TransitionSequence::index_of(const BoundaryAngle& a) const {
  const auto it = std::lower_bound(points_.begin(), points_.end(), a,
                                   [](const Transition& t, const BoundaryAngle& x) { return t.angle < x; });
  if (it == points_.end() || !(it->angle == a)) throw DomainError("TransitionSequence: no transition at " + a.to_string());
  return static_cast<std::size_t>(it - points_.begin());
}

std::pair<BoundaryAngle, BoundaryAngle> ChordConfiguration::chord(std::size_t k) const {
  const auto [i, j] = matching_[k];
  if (transitions_[i].orientation == Orientation::fall) return {transitions_[i].angle, transitions_[j].angle};
  return {transitions_[j].angle, transitions_[i].angle};
}

double ChordConfiguration::label_at(const Point& p) const {
  if (!(p.squaredNorm() < 1.0)) throw DomainError("label_at: point not inside the open unit disk");
  for (const Cell& cell : cells_) {
    if (point_in_cell(p, cell)) return cell.label;
  }
  // On a chord: take the cell it violates least.
  double best_margin = -std::numeric_limits<double>::infinity();
  int label = cells_.front().label;
  for (const Cell& cell : cells_) {
    double margin = std::numeric_limits<double>::infinity();
    for (const Edge& e : cell.edges) {
      if (e.kind != EdgeKind::chord) continue;
      const Point a = e.from.point();
      margin = std::min(margin, cross(e.to.point() - a, p - a));
    }
    if (margin > best_margin) {
      best_margin = margin;
      label = cell.label;
    }
  }
  return label;
}

PlanarFunction ChordConfiguration::to_function() const {
  auto index = std::make_shared<const ChordIndex>(*this);
  return [index](const Point& p) { return (*index)(p); };
}

ChordConfiguration configuration_from_matching(const PiecewiseConstantBoundary& binary_data, Matching matching) {
  require_binary(binary_data);
  ChordConfiguration config;
  config.data_ = binary_data;
  config.transitions_ = TransitionSequence(binary_data);
  const TransitionSequence& ts = config.transitions_;
  const std::size_t n = ts.size();

  if (n == 0) {
    if (!matching.empty()) throw InvalidCellError("constant data admits no chords");
    const int label = static_cast<int>(binary_data.values().front());
    config.cells_ = {disk_cell(label)};
    config.piece_cell_ = {0};
    config.label_area_ = label == 1 ? kPi : 0.0;
    return config;
  }

  for (auto& [i, j] : matching) {
    if (i > j) std::swap(i, j);
  }
  std::sort(matching.begin(), matching.end());
  if (2 * matching.size() != n) throw InvalidCellError("matching does not cover every transition");

  std::vector<std::size_t> mate(n, n);
  for (const auto& [i, j] : matching) {
    if (j >= n || i == j || mate[i] != n || mate[j] != n) {
      throw InvalidCellError("matching pairs are not disjoint transition indices");
    }
    if (ts[i].orientation == ts[j].orientation) throw InvalidCellError("chord joins transitions of equal orientation");
    mate[i] = j;
    mate[j] = i;
  }
  // Non-crossing iff the pairs nest like brackets.
  std::vector<std::size_t> open;
  for (std::size_t p = 0; p < n; ++p) {
    if (mate[p] > p) {
      open.push_back(p);
    } else {
      if (open.empty() || open.back() != mate[p]) throw InvalidCellError("chords cross");
      open.pop_back();
    }
  }
  config.matching_ = std::move(matching);

  // Trace faces: each data piece runs counterclockwise into a chord, which
  // leads to the piece starting at the chord's other end.
  const auto& values = binary_data.values();
  config.piece_cell_.assign(n, n);
  for (std::size_t s = 0; s < n; ++s) {
    if (config.piece_cell_[s] != n) continue;
    Cell cell;
    cell.label = static_cast<int>(values[s]);
    const std::size_t id = config.cells_.size();
    std::size_t cur = s;
    do {
      if (values[cur] != values[s]) throw InvalidCellError("inconsistent labels along a cell boundary");
      config.piece_cell_[cur] = id;
      const std::size_t next = (cur + 1) % n;
      cell.edges.push_back({EdgeKind::arc, ts[cur].angle, ts[next].angle});
      cell.edges.push_back({EdgeKind::chord, ts[next].angle, ts[mate[next]].angle});
      cur = mate[next];
    } while (cur != s);
    validate_cell(cell);
    config.cells_.push_back(std::move(cell));
  }

  config.energy_ = config_energy(config);
  double area = 0.0;
  for (const Cell& cell : config.cells_) {
    if (cell.label == 1) area += cell_area(cell);
  }
  config.label_area_ = area;
  return config;
}

ChordConfiguration solve_binary(const PiecewiseConstantBoundary& binary_data, SolveMode mode) {
  require_binary(binary_data);
  const TransitionSequence ts(binary_data);
  const std::size_t n = ts.size();
  if (n == 0) return configuration_from_matching(binary_data, {});
  if (n > kMaxTransitions) {
    throw SizeError("solve_binary: " + std::to_string(n) + " transitions exceed the limit of " +
                    std::to_string(kMaxTransitions));
  }
  const double area_sign = mode == SolveMode::minimal ? 1.0 : -1.0;

  // The optimum over an interval [i, j] (j - i odd) is stored twice, in row i
  // and in column j, both at offset (j - i + 1) / 2; offset 0 holds the empty
  // interval. Both inner-loop reads are then sequential and branch free.
  std::vector<std::vector<double>> row_energy(n), row_area(n), col_energy(n), col_area(n);
  std::vector<std::vector<std::uint16_t>> choice(n);
  for (std::size_t j = 0; j < n; ++j) {
    col_energy[j].assign((j + 1) / 2 + 1, 0.0);
    col_area[j].assign((j + 1) / 2 + 1, 0.0);
  }
  row_energy[n - 1].assign(1, 0.0);
  row_area[n - 1].assign(1, 0.0);

  std::vector<double> w_energy, w_area, energy;
  for (std::size_t i = n - 1; i-- > 0;) {
    const std::size_t count = (n - i) / 2;
    row_energy[i].assign(count + 1, 0.0);
    row_area[i].assign(count + 1, 0.0);
    choice[i].resize(count);
    w_energy.resize(count);
    w_area.resize(count);
    energy.resize(count);
    const double orient = ts[i].orientation == Orientation::fall ? 1.0 : -1.0;
    for (std::size_t t = 0; t < count; ++t) {
      const double gap = ccw_gap_double(ts[i].angle, ts[i + 1 + 2 * t].angle);
      w_energy[t] = chord_length(gap);
      w_area[t] = area_sign * orient * std::sin(gap) / 2.0;
    }
    const double* left_e = row_energy[i + 1].data();
    const double* left_a = row_area[i + 1].data();
    for (std::size_t s = 0; s < count; ++s) {
      const std::size_t j = i + 1 + 2 * s;
      const double* right_e = col_energy[j].data();
      const double* right_a = col_area[j].data();
      // Point i is matched to k = i + 1 + 2t, splitting off [i+1, k-1] and [k+1, j].
      double min_energy = std::numeric_limits<double>::infinity();
      for (std::size_t t = 0; t <= s; ++t) {
        energy[t] = w_energy[t] + left_e[t] + right_e[s - t];
        min_energy = std::min(min_energy, energy[t]);
      }
      const double cutoff = min_energy * (1.0 + kTieTolerance);
      std::size_t best_t = s + 1;
      double best_area = 0.0;
      for (std::size_t t = 0; t <= s; ++t) {
        if (energy[t] > cutoff) continue;
        const double area = w_area[t] + left_a[t] + right_a[s - t];
        const double tol = kTieTolerance * std::max(std::abs(area), std::abs(best_area)) + 1e-18;
        if (best_t > s || area < best_area - tol) {
          best_t = t;
          best_area = area;
        }
      }
      row_energy[i][s + 1] = col_energy[j][s + 1] = energy[best_t];
      row_area[i][s + 1] = col_area[j][s + 1] = best_area;
      choice[i][s] = static_cast<std::uint16_t>(best_t);
    }
  }

  Matching matching;
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, n - 1}};
  while (!stack.empty()) {
    const auto [i, j] = stack.back();
    stack.pop_back();
    const std::size_t s = (j - i - 1) / 2;
    const std::size_t k = i + 1 + 2 * static_cast<std::size_t>(choice[i][s]);
    matching.emplace_back(i, k);
    if (k > i + 1) stack.emplace_back(i + 1, k - 1);
    if (k < j) stack.emplace_back(k + 1, j);
  }
  return configuration_from_matching(binary_data, std::move(matching));
}

OracleResult enumerate_optimal(const PiecewiseConstantBoundary& binary_data, std::size_t cap) {
  require_binary(binary_data);
  const TransitionSequence ts(binary_data);
  if (cap > kMaxOracleTransitions) throw SizeError("enumerate_optimal: cap above 16");
  if (ts.size() > cap) {
    throw SizeError("enumerate_optimal: " + std::to_string(ts.size()) + " transitions exceed cap " +
                    std::to_string(cap));
  }
  OracleResult result;
  if (ts.empty()) {
    result.optimal.push_back(configuration_from_matching(binary_data, {}));
    result.total_matchings = 1;
    return result;
  }
  const std::vector<Matching> all = all_matchings(0, ts.size() - 1);
  std::vector<double> energies;
  energies.reserve(all.size());
  for (const Matching& m : all) {
    double e = 0.0;
    for (const auto& [i, j] : m) e += pair_energy(ts, i, j);
    energies.push_back(e);
  }
  const double best = *std::min_element(energies.begin(), energies.end());
  for (std::size_t k = 0; k < all.size(); ++k) {
    if (energies[k] <= best + kTieTolerance * std::abs(best)) {
      result.optimal.push_back(configuration_from_matching(binary_data, all[k]));
    }
  }
  result.total_matchings = all.size();
  result.min_energy = best;
  return result;
}

double config_energy(const ChordConfiguration& config) {
  double total = 0.0;
  for (const auto& [i, j] : config.matching()) total += pair_energy(config.transitions(), i, j);
  return total;
}

PlanarFunction config_to_function(const ChordConfiguration& config) { return config.to_function(); }

ChordConfiguration reference_un(int n) {
  const PiecewiseConstantBoundary data = build_fn(n);
  const TransitionSequence ts(data);
  Matching matching;
  for (const Arc& arc : cantor_stage(n).kept) matching.emplace_back(ts.index_of(arc.start), ts.index_of(arc.end));
  return configuration_from_matching(data, std::move(matching));
}

ChordConfiguration reference_vn(int n) {
  const PiecewiseConstantBoundary data = build_gn(n);
  const TransitionSequence ts(data);
  Matching matching;
  for (const RemovedArc& r : cantor_stage(n).removed) {
    matching.emplace_back(ts.index_of(r.arc.start), ts.index_of(r.arc.end));
  }
  return configuration_from_matching(data, std::move(matching));
}

bool region_contains(const ChordConfiguration& outer, const ChordConfiguration& inner) {
  for (const Cell& cell : inner.cells()) {
    if (cell.label != 1) continue;
    const Edge& first = cell.edges.front();
    const Cell& host = outer.cells()[outer.cell_of_piece(piece_index(outer.data(), first.from))];
    if (host.label != 1) return false;
    for (const Edge& e : cell.edges) {
      if (e.kind != EdgeKind::arc) continue;
      const Arc arc{e.from, e.to};
      const bool covered = std::any_of(host.edges.begin(), host.edges.end(), [&](const Edge& h) {
        return h.kind == EdgeKind::arc && arc_within(arc, Arc{h.from, h.to});
      });
      if (!covered) return false;
    }
  }
  return true;
}

double intersection_perimeter(const ChordConfiguration& a, const ChordConfiguration& b) {
  const ChordSplit ab = split_chords(a, b);
  const ChordSplit ba = split_chords(b, a);
  return ab.inside + ba.inside + ab.shared_same;
}

double union_perimeter(const ChordConfiguration& a, const ChordConfiguration& b) {
  const ChordSplit ab = split_chords(a, b);
  const ChordSplit ba = split_chords(b, a);
  return ab.outside + ba.outside + ab.shared_same;
}

}  // namespace lglab
