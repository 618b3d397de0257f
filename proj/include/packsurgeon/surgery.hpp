#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "packsurgeon/flow.hpp"
#include "packsurgeon/geometry.hpp"
#include "packsurgeon/grid.hpp"

namespace packsurgeon::surgery {

using geometry::Box;
using geometry::GoodnessConfig;
using geometry::Packing;
using geometry::PlanePath;
using geometry::Point;
using geometry::UnitSquare;

/// ceil(x) x ceil(x) grid laid over [0, x]^2. Row r spans
/// y in [(r-1) s, r s] and column c spans x in [(c-1) s, c s].
struct OverlayGrid {
  int cells_per_side = 1;
  double cell_side = 1.0;

  [[nodiscard]] static OverlayGrid for_container(double x);
  [[nodiscard]] grid::GridDims dims() const { return {cells_per_side, cells_per_side}; }
  [[nodiscard]] Box cell_box(grid::CellCoord c) const;
  [[nodiscard]] Point cell_center(grid::CellCoord c) const;
  [[nodiscard]] Box rect_box(const grid::GridRect& r) const;
};

struct Marking {
  OverlayGrid overlay;
  grid::GridInstance instance;
};

/// Marks every overlay cell meeting a bad square in more than
/// geometry::kOverlapTolerance area. For x <= 1 the marking is empty.
[[nodiscard]] Marking overlay_and_mark(const Packing& p, const GoodnessConfig& cfg = {});

/// One polyline per flow path: nearest point of the closest bad square
/// overlapping the first cell, the cell centers in path order, then the
/// nearest point of the container boundary.
[[nodiscard]] std::vector<PlanePath> build_gammas(const flow::PathCover& cover,
                                                  const OverlayGrid& overlay,
                                                  const Packing& p,
                                                  const GoodnessConfig& cfg = {});

struct SurgeryReport {
  int f = 0;
  std::size_t marked_cells = 0;
  std::vector<grid::GridRect> rectangles;
  std::vector<PlanePath> gammas;
  std::vector<std::size_t> deleted;  ///< 1-based square indices of the input
  std::vector<UnitSquare> inserted;  ///< axis-aligned, integral corners
  double waste_before = 0.0;
  double waste_after = 0.0;
  /// max(waste_after, eps) / max(waste_before, eps)
  double blow_up = 1.0;
  /// (waste_after - waste_before) / max(f, 1)
  double overhead_per_f = 0.0;
};

inline constexpr double kWasteEpsilon = 1e-9;

struct SurgeryResult {
  Packing packing;
  SurgeryReport report;
};

/// Thrown when the input packing fails validation.
class InvalidPacking : public std::invalid_argument {
 public:
  explicit InvalidPacking(geometry::PackingReport report);
  [[nodiscard]] const geometry::PackingReport& report() const { return report_; }

 private:
  geometry::PackingReport report_;
};

/// Deletes every square contained in the rectangle cover of the bad-square
/// marking, then fills the unit lattice cells meeting the cover (or a deleted
/// square) with axis-aligned squares in row-major order wherever they fit.
/// The result is validated and checked to be good; a failure of either is a
/// std::logic_error.
[[nodiscard]] SurgeryResult perform_surgery(const Packing& p,
                                            const GoodnessConfig& cfg = {});

struct BlowupModel {
  double x_min = 4.0;
  double x_max = 32.0;
  double q = 0.1;
  double delta = 0.05;
  double tau = 0.3;
  double c = 1e-10;
};

struct BlowupTrial {
  double x = 0.0;
  int f = 0;
  std::size_t bad_squares = 0;
  double waste_before = 0.0;
  double waste_after = 0.0;
  double blow_up = 1.0;
  double overhead_per_f = 0.0;
};

struct BlowupStats {
  std::vector<BlowupTrial> trials;  ///< by trial index
  double max_blow_up = 0.0;
  double mean_blow_up = 0.0;
  double median_blow_up = 0.0;
  double max_overhead_per_f = 0.0;  ///< the measured additive constant K
};

[[nodiscard]] BlowupStats blow_up_experiment(const BlowupModel& model, int trials,
                                             std::uint64_t seed);

}  // namespace packsurgeon::surgery
