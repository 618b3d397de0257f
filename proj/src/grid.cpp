#include "packsurgeon/grid.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace packsurgeon::grid {

GridDims::GridDims(int n, int m) : n_(n), m_(m) {
  if (n < 1 || m < 1) {
    throw std::invalid_argument("grid dimensions must be positive, got " +
                                std::to_string(n) + "x" + std::to_string(m));
  }
  if (n > kMaxGridSide || m > kMaxGridSide) {
    throw std::invalid_argument("grid dimensions exceed " +
                                std::to_string(kMaxGridSide) + ", got " +
                                std::to_string(n) + "x" + std::to_string(m));
  }
}

bool in_bounds(const GridDims& dims, CellCoord c) {
  return c.row >= 1 && c.row <= dims.rows() && c.col >= 1 &&
         c.col <= dims.cols();
}

bool is_boundary(const GridDims& dims, CellCoord c) {
  return c.row == 1 || c.row == dims.rows() || c.col == 1 ||
         c.col == dims.cols();
}

bool are_adjacent(CellCoord a, CellCoord b) {
  return std::abs(a.row - b.row) + std::abs(a.col - b.col) == 1;
}

bool are_8_adjacent(CellCoord a, CellCoord b) {
  return a != b && std::abs(a.row - b.row) <= 1 && std::abs(a.col - b.col) <= 1;
}

bool is_valid_rect(const GridRect& r) {
  return r.i >= 1 && r.i <= r.i_hi && r.j >= 1 && r.j <= r.j_hi;
}

bool is_valid_rect(const GridDims& dims, const GridRect& r) {
  return is_valid_rect(r) && r.i_hi <= dims.rows() && r.j_hi <= dims.cols();
}

void require_valid_rect(const GridRect& r) {
  if (!is_valid_rect(r)) {
    throw std::invalid_argument(
        "invalid rectangle (" + std::to_string(r.i) + "," +
        std::to_string(r.i_hi) + "," + std::to_string(r.j) + "," +
        std::to_string(r.j_hi) + ")");
  }
}

int cellular_perimeter(const GridRect& rect) {
  return 2 * (rect.height() + rect.width());
}

std::int64_t total_perimeter(std::span<const GridRect> rects) {
  std::int64_t total = 0;
  for (const auto& r : rects) total += cellular_perimeter(r);
  return total;
}

std::int64_t boundary_cell_count(const GridDims& dims) {
  const std::int64_t inner_rows = std::max(0, dims.rows() - 2);
  const std::int64_t inner_cols = std::max(0, dims.cols() - 2);
  return dims.cell_count() - inner_rows * inner_cols;
}

MarkedSet::MarkedSet(std::initializer_list<CellCoord> cells)
    : MarkedSet(std::vector<CellCoord>(cells)) {}

MarkedSet::MarkedSet(std::vector<CellCoord> cells) : cells_(std::move(cells)) {
  std::sort(cells_.begin(), cells_.end());
  cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
}

bool MarkedSet::contains(CellCoord c) const {
  return std::binary_search(cells_.begin(), cells_.end(), c);
}

bool MarkedSet::insert(CellCoord c) {
  auto it = std::lower_bound(cells_.begin(), cells_.end(), c);
  if (it != cells_.end() && *it == c) return false;
  cells_.insert(it, c);
  return true;
}

GridInstance::GridInstance(GridDims dims, MarkedSet marked)
    : dims_(dims), marked_(std::move(marked)) {
  for (const auto& c : marked_) {
    if (!in_bounds(dims_, c)) {
      throw std::invalid_argument("marked cell (" + std::to_string(c.row) +
                                  "," + std::to_string(c.col) +
                                  ") outside the grid");
    }
  }
}

std::vector<MarkedSet> eight_connected_components(const MarkedSet& cells) {
  const auto& all = cells.cells();
  const auto index_of = [&](CellCoord c) -> std::ptrdiff_t {
    auto it = std::lower_bound(all.begin(), all.end(), c);
    if (it == all.end() || *it != c) return -1;
    return it - all.begin();
  };

  std::vector<bool> seen(all.size(), false);
  std::vector<MarkedSet> components;
  std::deque<std::size_t> queue;
  // Seeds are visited in sorted order, so components come out ordered by
  // their minimum cell.
  for (std::size_t seed = 0; seed < all.size(); ++seed) {
    if (seen[seed]) continue;
    seen[seed] = true;
    queue.push_back(seed);
    std::vector<CellCoord> members;
    while (!queue.empty()) {
      const CellCoord c = all[queue.front()];
      queue.pop_front();
      members.push_back(c);
      for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
          if (dr == 0 && dc == 0) continue;
          const auto k = index_of({c.row + dr, c.col + dc});
          if (k >= 0 && !seen[k]) {
            seen[k] = true;
            queue.push_back(static_cast<std::size_t>(k));
          }
        }
      }
    }
    components.emplace_back(std::move(members));
  }
  return components;
}

GridRect bounding_rectangle(const MarkedSet& cells) {
  if (cells.empty()) throw std::invalid_argument("empty cell set");
  GridRect r{cells.cells().front().row, cells.cells().front().row,
             cells.cells().front().col, cells.cells().front().col};
  for (const auto& c : cells) {
    r.i = std::min(r.i, c.row);
    r.i_hi = std::max(r.i_hi, c.row);
    r.j = std::min(r.j, c.col);
    r.j_hi = std::max(r.j_hi, c.col);
  }
  return r;
}

MarkedSet rect_cells(const GridRect& rect) {
  require_valid_rect(rect);
  std::vector<CellCoord> out;
  out.reserve(static_cast<std::size_t>(rect.height()) * rect.width());
  for (int r = rect.i; r <= rect.i_hi; ++r) {
    for (int c = rect.j; c <= rect.j_hi; ++c) out.push_back({r, c});
  }
  return MarkedSet(std::move(out));
}

namespace {

std::string cell_str(CellCoord c) {
  return "(" + std::to_string(c.row) + "," + std::to_string(c.col) + ")";
}

}  // namespace

std::string validate_cell_path(const GridInstance& instance,
                               const CellPath& path) {
  const auto& cells = path.cells;
  if (cells.empty()) return "empty path";
  for (const auto& c : cells) {
    if (!in_bounds(instance.dims(), c)) return "cell " + cell_str(c) + " out of bounds";
  }
  if (!instance.marked().contains(cells.front())) {
    return "path starts at unmarked cell " + cell_str(cells.front());
  }
  if (!is_boundary(instance.dims(), cells.back())) {
    return "path ends at interior cell " + cell_str(cells.back());
  }
  for (std::size_t k = 0; k + 1 < cells.size(); ++k) {
    if (!are_adjacent(cells[k], cells[k + 1])) {
      return "cells " + cell_str(cells[k]) + " and " + cell_str(cells[k + 1]) +
             " are not adjacent";
    }
  }
  std::vector<CellCoord> sorted = cells;
  std::sort(sorted.begin(), sorted.end());
  if (auto it = std::adjacent_find(sorted.begin(), sorted.end());
      it != sorted.end()) {
    return "cell " + cell_str(*it) + " repeated within a path";
  }
  return {};
}

std::string check_disjoint(const GridDims& dims,
                           std::span<const CellPath> paths) {
  std::unordered_set<std::int64_t> used;
  for (std::size_t p = 0; p < paths.size(); ++p) {
    for (const auto& c : paths[p].cells) {
      if (!used.insert(dense_index(dims, c)).second) {
        return "cell " + cell_str(c) + " used twice (path " +
               std::to_string(p) + ")";
      }
    }
  }
  return {};
}

}  // namespace packsurgeon::grid
