#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "packsurgeon/grid.hpp"

namespace packsurgeon::greedy {

using grid::CellPath;
using grid::GridDims;
using grid::GridInstance;

struct GreedyResult {
  int f_prime = 0;
  std::vector<CellPath> paths;  ///< in acceptance order
};

/// Repeated multi-source BFS from the unrouted marked cells over unused cells;
/// the shortest marked-to-boundary path found is accepted each round.
///
/// Neighbors are explored up, left, right, down. Among boundary cells at the
/// minimum distance the lexicographically smallest is the endpoint, and the
/// path is the BFS predecessor chain back to its source.
[[nodiscard]] GreedyResult greedy_bfs_paths(const GridInstance& instance);

struct Comparison {
  int f_prime = 0;
  int f = 0;
};

/// Greedy count and maximum-flow count on the same instance. Throws
/// std::logic_error if f' > f.
[[nodiscard]] Comparison compare_f_prime_f(const GridInstance& instance);

/// Structured instance families used by the counterexample search.
enum class Family {
  kUniform,        ///< independent marking with a random density
  kRings,          ///< concentric rings of marked cells
  kComb,           ///< marked teeth with blocked corridors between them
  kBlockedCorridor,///< a marked block behind a thin marked wall
  kClusters,       ///< dense marked blobs near the boundary
};

[[nodiscard]] GridInstance make_family_instance(Family family, const GridDims& dims,
                                                std::uint64_t seed);

/// Uniform independent marking with probability p.
[[nodiscard]] GridInstance uniform_instance(const GridDims& dims, double p,
                                            std::uint64_t seed);

/// Searches `budget` trials, cycling through the structured families; trial t
/// is derived from (seed, t). Returns the lowest-index instance with f' < f.
[[nodiscard]] std::optional<GridInstance> counterexample_search(
    int budget, const GridDims& dims, std::uint64_t seed);

struct Ratio {
  int num = 0;
  int den = 1;

  [[nodiscard]] double value() const { return static_cast<double>(num) / den; }
};

struct RatioModel {
  int n = 16;
  int m = 16;
  double p = 0.2;
};

struct RatioStats {
  int trials = 0;
  std::vector<Ratio> ratios;  ///< f' / f for the trials with f > 0, by index
  std::optional<Ratio> min_ratio;
  double mean_ratio = 0.0;
};

[[nodiscard]] RatioStats ratio_experiment(const RatioModel& model, int trials,
                                          std::uint64_t seed);

}  // namespace packsurgeon::greedy
