#pragma once

// Least-gradient solutions for binary boundary data on the unit disk. The
// superlevel set of a solution is bounded by straight chords joining the
// points where the data switches value, so solving amounts to choosing a
// non-crossing perfect matching of those points of least total chord length.

#include "lglab/boundary_data.hpp"
#include "lglab/sampling.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace lglab {

enum class Orientation { rise, fall };

struct Transition {
  BoundaryAngle angle;
  Orientation orientation;  ///< rise: the data is 1 just counterclockwise of the point
};

/// Points where binary data switches value, in counterclockwise order
/// starting at the smallest absolute angle. Orientations alternate.
class TransitionSequence {
 public:
  TransitionSequence() = default;
  explicit TransitionSequence(const PiecewiseConstantBoundary& binary_data);

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const Transition& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<Transition>& points() const { return points_; }
  /// Index of the transition at exactly this angle; throws DomainError if absent.
  std::size_t index_of(const BoundaryAngle& a) const;

 private:
  std::vector<Transition> points_;
};

/// Pairs (i, j) of transition indices with i < j, sorted by i.
using Matching = std::vector<std::pair<std::size_t, std::size_t>>;

inline constexpr std::size_t kMaxTransitions = 4096;
inline constexpr std::size_t kMaxOracleTransitions = 16;

class ChordConfiguration {
 public:
  const PiecewiseConstantBoundary& data() const { return data_; }
  const TransitionSequence& transitions() const { return transitions_; }
  const Matching& matching() const { return matching_; }
  const std::vector<Cell>& cells() const { return cells_; }
  /// Cell bordering the i-th piece of the data.
  std::size_t cell_of_piece(std::size_t i) const { return piece_cell_[i]; }
  /// Total chord length, i.e. the perimeter of the label-1 region inside the disk.
  double energy() const { return energy_; }
  /// Area of the union of label-1 cells.
  double label_area() const { return label_area_; }
  /// Endpoints of the k-th chord, oriented so the label-1 side is on the left.
  std::pair<BoundaryAngle, BoundaryAngle> chord(std::size_t k) const;

  /// Label of the cell containing p (|p| < 1); points on chords take an
  /// arbitrary adjacent label.
  double label_at(const Point& p) const;
  /// Fast pointwise evaluator of the characteristic function of the label-1 region.
  PlanarFunction to_function() const;

 private:
  friend ChordConfiguration configuration_from_matching(const PiecewiseConstantBoundary&, Matching);

  PiecewiseConstantBoundary data_;
  TransitionSequence transitions_;
  Matching matching_;
  std::vector<Cell> cells_;
  std::vector<std::size_t> piece_cell_;
  double energy_ = 0.0;
  double label_area_ = 0.0;
};

/// Builds and validates the configuration of a matching: pairs must cover
/// every transition once, join opposite orientations and not cross.
/// Throws InvalidCellError otherwise, DomainError for non-binary data.
ChordConfiguration configuration_from_matching(const PiecewiseConstantBoundary& binary_data, Matching matching);

enum class SolveMode { minimal, maximal };

/// Least-energy configuration by interval dynamic programming over the
/// cyclic transition sequence, O(m^3) time. Among energy minimizers (relative
/// tolerance 1e-12) the smallest (minimal) or largest (maximal) label area is
/// chosen, then the lexicographically smallest matching.
ChordConfiguration solve_binary(const PiecewiseConstantBoundary& binary_data, SolveMode mode = SolveMode::minimal);

struct OracleResult {
  std::vector<ChordConfiguration> optimal;
  std::size_t total_matchings = 0;
  double min_energy = 0.0;
};

/// Exhaustive enumeration of non-crossing matchings; returns every energy
/// minimizer. Requires transitions <= cap <= 16, else SizeError.
OracleResult enumerate_optimal(const PiecewiseConstantBoundary& binary_data,
                               std::size_t cap = kMaxOracleTransitions);

/// Sum of chord lengths recomputed from the matching.
double config_energy(const ChordConfiguration& config);
PlanarFunction config_to_function(const ChordConfiguration& config);

/// u_n: one chord across each kept arc of the stage-n Cantor construction.
ChordConfiguration reference_un(int n);
/// v_n: one chord across each removed arc up to stage n.
ChordConfiguration reference_vn(int n);

/// Exact test that the label-1 region of inner lies inside that of outer (up
/// to null sets).
bool region_contains(const ChordConfiguration& outer, const ChordConfiguration& inner);

/// Perimeters inside the disk of the intersection and the union of the two
/// label-1 regions, computed exactly from the chords by convex clipping.
double intersection_perimeter(const ChordConfiguration& a, const ChordConfiguration& b);
double union_perimeter(const ChordConfiguration& a, const ChordConfiguration& b);

}  // namespace lglab
