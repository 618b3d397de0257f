#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "packsurgeon/grid.hpp"

namespace packsurgeon::merge {

using grid::GridRect;

/// True iff the closed regions of `a` and `b` share at least one point,
/// including corner-only contact.
[[nodiscard]] bool rects_touch(const GridRect& a, const GridRect& b);

/// Smallest rectangle containing both.
[[nodiscard]] GridRect hull(const GridRect& a, const GridRect& b);

struct MergeTrace {
  std::vector<GridRect> rects;              ///< sorted, pairwise non-touching
  int passes = 0;                           ///< full scans that merged something
  int merges = 0;
  std::vector<std::int64_t> perimeter_after_step;  ///< index 0 is the input total
};

/// Merges touching rectangles into their hull until none touch.
///
/// Each pass scans the current rectangles in lexicographic order; the
/// rectangle at position i absorbs every later rectangle touching it (its
/// hull grows in place, so the scan of i is repeated until stable) before
/// moving on to i + 1. Passes repeat until one completes without a merge.
[[nodiscard]] MergeTrace merge_with_trace(std::span<const GridRect> rects);

[[nodiscard]] std::vector<GridRect> merge_rectangles(std::span<const GridRect> rects);

}  // namespace packsurgeon::merge
