#include "packsurgeon/surgery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "packsurgeon/generators.hpp"
#include "packsurgeon/parallel.hpp"
#include "packsurgeon/random.hpp"

namespace packsurgeon::surgery {
namespace {

using grid::CellCoord;
using grid::GridRect;

constexpr double kAreaTolerance = geometry::kOverlapTolerance;

bool boxes_overlap(const Box& a, const Box& b) {
  const Box i = geometry::intersect(a, b);
  return i.xhi - i.xlo > kAreaTolerance && i.yhi - i.ylo > kAreaTolerance;
}

// Overlay cells whose boxes may meet `box`, clamped to the grid.
GridRect cells_under(const OverlayGrid& g, const Box& box) {
  const auto to_index = [&](double v) {
    const int k = static_cast<int>(std::floor(v / g.cell_side)) + 1;
    return std::clamp(k, 1, g.cells_per_side);
  };
  return {to_index(box.ylo), to_index(box.yhi), to_index(box.xlo), to_index(box.xhi)};
}

}  // namespace

OverlayGrid OverlayGrid::for_container(double x) {
  OverlayGrid g;
  g.cells_per_side = std::max(1, static_cast<int>(std::ceil(x)));
  g.cell_side = x / g.cells_per_side;
  return g;
}

Box OverlayGrid::cell_box(CellCoord c) const {
  return {(c.col - 1) * cell_side, (c.row - 1) * cell_side, c.col * cell_side,
          c.row * cell_side};
}

Point OverlayGrid::cell_center(CellCoord c) const {
  return {(c.col - 0.5) * cell_side, (c.row - 0.5) * cell_side};
}

Box OverlayGrid::rect_box(const GridRect& r) const {
  return {(r.j - 1) * cell_side, (r.i - 1) * cell_side, r.j_hi * cell_side,
          r.i_hi * cell_side};
}

InvalidPacking::InvalidPacking(geometry::PackingReport report)
    : std::invalid_argument(report.violations.empty()
                                ? std::string("invalid packing")
                                : "invalid packing: " + report.violations.front().message),
      report_(std::move(report)) {}

Marking overlay_and_mark(const Packing& p, const GoodnessConfig& cfg) {
  geometry::require_valid(cfg);
  const OverlayGrid overlay = OverlayGrid::for_container(p.x);
  std::vector<CellCoord> marked;
  if (p.x > 1.0) {
    for (const auto& s : p.squares) {
      if (geometry::is_good(s, cfg)) continue;
      const GridRect span = cells_under(overlay, s.bounds());
      for (int r = span.i; r <= span.i_hi; ++r) {
        for (int c = span.j; c <= span.j_hi; ++c) {
          if (geometry::intersection_area(s, overlay.cell_box({r, c})) > kAreaTolerance) {
            marked.push_back({r, c});
          }
        }
      }
    }
  }
  return {overlay, grid::GridInstance(overlay.dims(), grid::MarkedSet(std::move(marked)))};
}

std::vector<PlanePath> build_gammas(const flow::PathCover& cover,
                                    const OverlayGrid& overlay, const Packing& p,
                                    const GoodnessConfig& cfg) {
  std::vector<PlanePath> gammas;
  gammas.reserve(cover.paths.size());
  for (const auto& path : cover.paths) {
    const CellCoord first = path.cells.front();
    const Box first_box = overlay.cell_box(first);
    const Point o1 = overlay.cell_center(first);

    // Closest bad square overlapping the first cell; ties to the lower index.
    const UnitSquare* nearest = nullptr;
    double nearest_d = std::numeric_limits<double>::infinity();
    for (const auto& s : p.squares) {
      if (geometry::is_good(s, cfg)) continue;
      if (geometry::intersection_area(s, first_box) <= kAreaTolerance) continue;
      const double d = s.distance_to(o1);
      if (d < nearest_d) {
        nearest_d = d;
        nearest = &s;
      }
    }
    if (nearest == nullptr) {
      throw std::logic_error("flow path starts in a cell without a bad square");
    }

    PlanePath gamma;
    gamma.points.push_back(nearest->closest_point(o1));
    for (const auto& c : path.cells) gamma.points.push_back(overlay.cell_center(c));
    const Point last = gamma.points.back();
    // Nearest boundary point: left, right, bottom, top in tie order.
    const double dists[4] = {last.x, p.x - last.x, last.y, p.x - last.y};
    const Point feet[4] = {{0.0, last.y}, {p.x, last.y}, {last.x, 0.0}, {last.x, p.x}};
    const auto side = std::min_element(std::begin(dists), std::end(dists)) - std::begin(dists);
    gamma.points.push_back(feet[side]);
    gammas.push_back(std::move(gamma));
  }
  return gammas;
}

SurgeryResult perform_surgery(const Packing& p, const GoodnessConfig& cfg) {
  geometry::require_valid(cfg);
  if (auto check = geometry::validate_packing(p); !check.ok()) {
    throw InvalidPacking(std::move(check));
  }
  SurgeryResult result;
  SurgeryReport& report = result.report;
  report.waste_before = geometry::waste_total(p);

  if (p.x <= 1.0) {
    const bool all_good = std::all_of(p.squares.begin(), p.squares.end(),
                                      [&](const UnitSquare& s) { return geometry::is_good(s, cfg); });
    result.packing = all_good ? p : Packing{p.x, {}};
    if (!all_good) {
      for (std::size_t i = 0; i < p.squares.size(); ++i) report.deleted.push_back(i + 1);
    }
  } else {
    const Marking marking = overlay_and_mark(p, cfg);
    const OverlayGrid& overlay = marking.overlay;
    report.marked_cells = marking.instance.marked().size();
    const flow::PathCover cover = flow::path_cover(marking.instance);
    report.f = cover.f;
    report.rectangles = cover.rectangles;
    report.gammas = build_gammas(cover, overlay, p, cfg);

    const int side = overlay.cells_per_side;
    std::vector<bool> in_cover(static_cast<std::size_t>(side) * side, false);
    for (const auto& r : cover.rectangles) {
      for (int row = r.i; row <= r.i_hi; ++row) {
        for (int col = r.j; col <= r.j_hi; ++col) {
          in_cover[static_cast<std::size_t>(row - 1) * side + (col - 1)] = true;
        }
      }
    }
    // Contained means no cell outside the cover meets the square.
    const auto contained = [&](const UnitSquare& s) {
      const GridRect span = cells_under(overlay, s.bounds());
      for (int row = span.i; row <= span.i_hi; ++row) {
        for (int col = span.j; col <= span.j_hi; ++col) {
          if (in_cover[static_cast<std::size_t>(row - 1) * side + (col - 1)]) continue;
          if (geometry::intersection_area(s, overlay.cell_box({row, col})) > kAreaTolerance) {
            return false;
          }
        }
      }
      return true;
    };

    Packing& out = result.packing;
    out.x = p.x;
    std::vector<Box> cleared;
    for (const auto& r : cover.rectangles) cleared.push_back(overlay.rect_box(r));
    for (std::size_t i = 0; i < p.squares.size(); ++i) {
      const auto& s = p.squares[i];
      if (!cover.rectangles.empty() && contained(s)) {
        report.deleted.push_back(i + 1);
        cleared.push_back(s.bounds());
      } else {
        if (!geometry::is_good(s, cfg)) {
          throw std::logic_error("bad square " + std::to_string(i + 1) +
                                 " survived deletion");
        }
        out.squares.push_back(s);
      }
    }

    geometry::SquareIndex index(p.x);
    for (std::size_t i = 0; i < out.squares.size(); ++i) {
      index.insert(static_cast<std::uint32_t>(i), out.squares[i]);
    }
    const int lattice = static_cast<int>(std::floor(p.x));
    if (!report.deleted.empty()) {
      for (int b = 0; b < lattice; ++b) {
        for (int a = 0; a < lattice; ++a) {
          const Box cell{static_cast<double>(a), static_cast<double>(b),
                         static_cast<double>(a + 1), static_cast<double>(b + 1)};
          const bool in_zone = std::any_of(cleared.begin(), cleared.end(),
                                           [&](const Box& z) { return boxes_overlap(cell, z); });
          if (!in_zone) continue;
          const UnitSquare candidate({a + 0.5, b + 0.5}, 0.0);
          bool blocked = false;
          for (auto id : index.candidates(candidate.bounds())) {
            if (geometry::squares_overlap(candidate, out.squares[id])) {
              blocked = true;
              break;
            }
          }
          if (blocked) continue;
          index.insert(static_cast<std::uint32_t>(out.squares.size()), candidate);
          out.squares.push_back(candidate);
          report.inserted.push_back(candidate);
        }
      }
    }
  }

  if (auto check = geometry::validate_packing(result.packing); !check.ok()) {
    throw std::logic_error("surgery produced an invalid packing: " +
                           check.violations.front().message);
  }
  for (const auto& s : result.packing.squares) {
    if (!geometry::is_good(s, cfg)) throw std::logic_error("surgery left a bad square");
  }
  report.waste_after = geometry::waste_total(result.packing);
  report.blow_up = std::max(report.waste_after, kWasteEpsilon) /
                   std::max(report.waste_before, kWasteEpsilon);
  report.overhead_per_f =
      (report.waste_after - report.waste_before) / std::max(report.f, 1);
  return result;
}

BlowupStats blow_up_experiment(const BlowupModel& model, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (!(model.x_min > 0.0 && model.x_min <= model.x_max)) {
    throw std::invalid_argument("need 0 < x_min <= x_max");
  }
  const GoodnessConfig cfg{model.c};
  geometry::require_valid(cfg);
  BlowupStats stats;
  stats.trials.resize(static_cast<std::size_t>(trials));
  parallel_for(stats.trials.size(), [&](std::size_t t) {
    CounterRng rng(seed, t);
    BlowupTrial trial;
    trial.x = rng.uniform(model.x_min, model.x_max);
    const gen::LatticeParams params{trial.x, model.q, model.delta, model.tau};
    const Packing packing = gen::jittered_lattice(params, rng());
    trial.bad_squares = static_cast<std::size_t>(
        std::count_if(packing.squares.begin(), packing.squares.end(),
                      [&](const UnitSquare& s) { return !geometry::is_good(s, cfg); }));
    const auto result = perform_surgery(packing, cfg);
    trial.f = result.report.f;
    trial.waste_before = result.report.waste_before;
    trial.waste_after = result.report.waste_after;
    trial.blow_up = result.report.blow_up;
    trial.overhead_per_f = result.report.overhead_per_f;
    stats.trials[t] = trial;
  });

  std::vector<double> blow_ups;
  double sum = 0.0;
  for (const auto& t : stats.trials) {
    blow_ups.push_back(t.blow_up);
    sum += t.blow_up;
    stats.max_blow_up = std::max(stats.max_blow_up, t.blow_up);
    stats.max_overhead_per_f = std::max(stats.max_overhead_per_f, t.overhead_per_f);
  }
  stats.mean_blow_up = sum / static_cast<double>(blow_ups.size());
  std::sort(blow_ups.begin(), blow_ups.end());
  const std::size_t mid = blow_ups.size() / 2;
  stats.median_blow_up = blow_ups.size() % 2 == 1
                             ? blow_ups[mid]
                             : 0.5 * (blow_ups[mid - 1] + blow_ups[mid]);
  return stats;
}

}  // namespace packsurgeon::surgery
