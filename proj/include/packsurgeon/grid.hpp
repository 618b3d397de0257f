#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace packsurgeon::grid {

/// Largest accepted side; keeps the vertex-split flow network in memory.
inline constexpr int kMaxGridSide = 10'000;

/// An n-row, m-column grid. Construction validates 1 <= n, m <= kMaxGridSide.
class GridDims {
 public:
  GridDims(int n, int m);

  [[nodiscard]] int rows() const { return n_; }
  [[nodiscard]] int cols() const { return m_; }
  [[nodiscard]] std::int64_t cell_count() const {
    return static_cast<std::int64_t>(n_) * m_;
  }

  friend bool operator==(const GridDims&, const GridDims&) = default;

 private:
  int n_;
  int m_;
};

/// 1-based cell coordinate; ordered lexicographically by (row, col).
struct CellCoord {
  int row = 1;
  int col = 1;

  friend auto operator<=>(const CellCoord&, const CellCoord&) = default;
};

[[nodiscard]] bool in_bounds(const GridDims& dims, CellCoord c);
/// A cell is on the boundary when it has fewer than four 4-neighbors.
[[nodiscard]] bool is_boundary(const GridDims& dims, CellCoord c);
[[nodiscard]] bool are_adjacent(CellCoord a, CellCoord b);
[[nodiscard]] bool are_8_adjacent(CellCoord a, CellCoord b);

/// Row-major 0-based index, private to algorithms that need dense arrays.
[[nodiscard]] inline std::int64_t dense_index(const GridDims& dims,
                                              CellCoord c) {
  return static_cast<std::int64_t>(c.row - 1) * dims.cols() + (c.col - 1);
}
[[nodiscard]] inline CellCoord from_dense(const GridDims& dims,
                                          std::int64_t idx) {
  return {static_cast<int>(idx / dims.cols()) + 1,
          static_cast<int>(idx % dims.cols()) + 1};
}

/// Inclusive 1-based bounds (i..i_hi rows, j..j_hi cols).
struct GridRect {
  int i = 1;
  int i_hi = 1;
  int j = 1;
  int j_hi = 1;

  [[nodiscard]] int height() const { return i_hi - i + 1; }
  [[nodiscard]] int width() const { return j_hi - j + 1; }
  [[nodiscard]] bool contains(CellCoord c) const {
    return c.row >= i && c.row <= i_hi && c.col >= j && c.col <= j_hi;
  }
  [[nodiscard]] bool contains(const GridRect& other) const {
    return other.i >= i && other.i_hi <= i_hi && other.j >= j &&
           other.j_hi <= j_hi;
  }

  friend auto operator<=>(const GridRect&, const GridRect&) = default;
};

[[nodiscard]] bool is_valid_rect(const GridRect& r);
[[nodiscard]] bool is_valid_rect(const GridDims& dims, const GridRect& r);
/// Throws std::invalid_argument if the rectangle is malformed.
void require_valid_rect(const GridRect& r);

/// Number of grid edges on the rectangle boundary, 2 * (height + width).
[[nodiscard]] int cellular_perimeter(const GridRect& rect);
[[nodiscard]] std::int64_t total_perimeter(std::span<const GridRect> rects);

/// Cells with fewer than four neighbors: n*m - max(0, n-2) * max(0, m-2).
[[nodiscard]] std::int64_t boundary_cell_count(const GridDims& dims);

/// Sorted, duplicate-free set of cells.
class MarkedSet {
 public:
  MarkedSet() = default;
  MarkedSet(std::initializer_list<CellCoord> cells);
  explicit MarkedSet(std::vector<CellCoord> cells);

  [[nodiscard]] bool contains(CellCoord c) const;
  [[nodiscard]] std::size_t size() const { return cells_.size(); }
  [[nodiscard]] bool empty() const { return cells_.empty(); }
  [[nodiscard]] const std::vector<CellCoord>& cells() const { return cells_; }
  [[nodiscard]] auto begin() const { return cells_.begin(); }
  [[nodiscard]] auto end() const { return cells_.end(); }

  /// Inserts keeping the order; returns false if already present.
  bool insert(CellCoord c);

  friend bool operator==(const MarkedSet&, const MarkedSet&) = default;

 private:
  std::vector<CellCoord> cells_;
};

/// Grid dimensions plus marked cells; construction checks bounds.
class GridInstance {
 public:
  GridInstance(GridDims dims, MarkedSet marked);

  [[nodiscard]] const GridDims& dims() const { return dims_; }
  [[nodiscard]] const MarkedSet& marked() const { return marked_; }

  friend bool operator==(const GridInstance&, const GridInstance&) = default;

 private:
  GridDims dims_;
  MarkedSet marked_;
};

/// Maximal 8-connected components, each sorted, ordered by their minimum cell.
[[nodiscard]] std::vector<MarkedSet> eight_connected_components(
    const MarkedSet& cells);

/// Smallest-perimeter rectangle containing all cells. Throws
/// std::invalid_argument("empty cell set") for empty input.
[[nodiscard]] GridRect bounding_rectangle(const MarkedSet& cells);

[[nodiscard]] MarkedSet rect_cells(const GridRect& rect);

/// Ordered cell sequence; see validate_cell_path for the invariants.
struct CellPath {
  std::vector<CellCoord> cells;

  friend bool operator==(const CellPath&, const CellPath&) = default;
};

/// Empty string when `path` starts at a marked cell, ends on the boundary,
/// steps between 4-adjacent cells and never repeats a cell; otherwise a
/// description of the first violation.
[[nodiscard]] std::string validate_cell_path(const GridInstance& instance,
                                             const CellPath& path);

/// First violation of pairwise cell-disjointness across paths, or empty.
[[nodiscard]] std::string check_disjoint(const GridDims& dims,
                                         std::span<const CellPath> paths);

}  // namespace packsurgeon::grid
