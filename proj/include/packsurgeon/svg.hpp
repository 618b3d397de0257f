#pragma once

#include <string>
#include <vector>

#include "packsurgeon/flow.hpp"
#include "packsurgeon/geometry.hpp"
#include "packsurgeon/grid.hpp"

namespace packsurgeon::svg {

/// Unit cells at integer positions (row 1 at the top); marked cells filled.
/// With a cover, paths are drawn as polylines through cell centers, cut
/// cells outlined, and rectangles stroked.
[[nodiscard]] std::string render_grid(const grid::GridInstance& instance,
                                      const flow::PathCover* cover = nullptr);

/// Container outline plus squares, good ones green and bad ones red, with
/// y pointing up. Optional rectangles are drawn in container coordinates.
[[nodiscard]] std::string render_packing(const geometry::Packing& packing,
                                         const geometry::GoodnessConfig& cfg = {},
                                         const std::vector<geometry::Box>& overlays = {});

}  // namespace packsurgeon::svg
