#include "packsurgeon/merge.hpp"

#include <algorithm>
#include <stdexcept>

namespace packsurgeon::merge {

bool rects_touch(const GridRect& a, const GridRect& b) {
  // Cell rows i..i_hi occupy the closed interval [i, i_hi + 1]; likewise cols.
  return a.i <= b.i_hi + 1 && b.i <= a.i_hi + 1 && a.j <= b.j_hi + 1 &&
         b.j <= a.j_hi + 1;
}

GridRect hull(const GridRect& a, const GridRect& b) {
  return {std::min(a.i, b.i), std::max(a.i_hi, b.i_hi), std::min(a.j, b.j),
          std::max(a.j_hi, b.j_hi)};
}

MergeTrace merge_with_trace(std::span<const GridRect> input) {
  MergeTrace trace;
  trace.rects.assign(input.begin(), input.end());
  for (const auto& r : trace.rects) grid::require_valid_rect(r);
  std::sort(trace.rects.begin(), trace.rects.end());

  std::int64_t total = grid::total_perimeter(trace.rects);
  trace.perimeter_after_step.push_back(total);

  auto& rects = trace.rects;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < rects.size(); ++i) {
      for (bool grew = true; grew;) {
        grew = false;
        for (std::size_t k = 0; k < rects.size(); ++k) {
          if (k == i || !rects_touch(rects[i], rects[k])) continue;
          const GridRect merged = hull(rects[i], rects[k]);
          const std::int64_t next = total - grid::cellular_perimeter(rects[i]) -
                                    grid::cellular_perimeter(rects[k]) +
                                    grid::cellular_perimeter(merged);
          if (next > total) throw std::logic_error("merge increased total perimeter");
          total = next;
          trace.perimeter_after_step.push_back(total);
          ++trace.merges;
          rects[i] = merged;
          rects.erase(rects.begin() + static_cast<std::ptrdiff_t>(k));
          if (k < i) --i;
          grew = true;
          changed = true;
          break;
        }
      }
    }
    if (changed) ++trace.passes;
    std::sort(rects.begin(), rects.end());
  }
  return trace;
}

std::vector<GridRect> merge_rectangles(std::span<const GridRect> rects) {
  return merge_with_trace(rects).rects;
}

}  // namespace packsurgeon::merge
