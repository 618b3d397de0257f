#pragma once

#include <string>
#include <utility>
#include <vector>

#include "packsurgeon/grid.hpp"

namespace packsurgeon::flow {

using grid::CellPath;
using grid::GridInstance;
using grid::GridRect;
using grid::MarkedSet;

enum class Algorithm {
  kDinic,        ///< BFS-layered blocking flows, O((nm)^{3/2}) on this network.
  kEdmondsKarp,  ///< One shortest augmenting path per BFS.
};

/// Result of one maximum-flow solve on the vertex-split grid network.
struct MaxFlowResult {
  int f = 0;
  std::vector<CellPath> paths;  ///< sorted by first cell
  MarkedSet cut;                ///< source-side minimum cut, |cut| == f
};

/// Solves the vertex-split network: source -> A(marked), A(c) -> B(c) with
/// capacity 1, B(c) -> A(neighbor), B(boundary) -> sink. The unbounded edges
/// are stored with capacity 1; a unit of flow never needs more.
[[nodiscard]] MaxFlowResult solve_max_flow(const GridInstance& instance,
                                           Algorithm algorithm = Algorithm::kDinic);

[[nodiscard]] std::pair<int, std::vector<CellPath>> max_disjoint_paths(
    const GridInstance& instance, Algorithm algorithm = Algorithm::kDinic);

[[nodiscard]] MarkedSet min_cut_cells(const GridInstance& instance,
                                      Algorithm algorithm = Algorithm::kDinic);

/// f disjoint marked-to-boundary paths together with rectangles covering
/// every marked cell whose total cellular perimeter is at most 4f.
struct PathCover {
  int f = 0;
  std::vector<CellPath> paths;
  MarkedSet cut_cells;
  std::vector<GridRect> rectangles;

  friend bool operator==(const PathCover&, const PathCover&) = default;
};

[[nodiscard]] PathCover path_cover(const GridInstance& instance,
                                   Algorithm algorithm = Algorithm::kDinic);

/// True if some marked cell outside `blocked` reaches a boundary cell through
/// cells outside `blocked` (4-adjacency).
[[nodiscard]] bool marked_reach_boundary(const GridInstance& instance,
                                         const MarkedSet& blocked);

/// Every violated PathCover invariant, one message each; empty when valid.
[[nodiscard]] std::vector<std::string> validate_path_cover(
    const GridInstance& instance, const PathCover& cover);

}  // namespace packsurgeon::flow
