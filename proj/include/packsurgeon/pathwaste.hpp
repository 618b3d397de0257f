#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "packsurgeon/geometry.hpp"

namespace packsurgeon::pathwaste {

using geometry::Packing;
using geometry::PlanePath;
using geometry::Point;

inline constexpr double kSampleSpacing = 0.5;
inline constexpr double kChainRadius = 0.25;
inline constexpr double kDiskRadius = 5.0;
inline constexpr int kMultiplicityBound = 1600;

/// Greedy farthest-feasible stepping: each sample is the point with the
/// largest path parameter within distance 1/2 of the previous sample. The
/// first sample is the path start and the last is the path end.
[[nodiscard]] std::vector<Point> sample_along_path(const PlanePath& path);

/// ceil(4R)^2 + 1 where R is the side of the path's bounding square.
[[nodiscard]] std::int64_t sample_count_bound(const PlanePath& path);

// Members are addressed as in S_i: 0 is the container (its closed exterior),
// k >= 1 is packing.squares[k - 1].
[[nodiscard]] double distance_to_member(const Packing& p, std::size_t member, Point q);
[[nodiscard]] double member_distance(const Packing& p, std::size_t a, std::size_t b);
[[nodiscard]] double member_theta(const Packing& p, std::size_t a, std::size_t b);

/// A sample with no member within 1/4: the open quarter-disk around it lies
/// inside the container and is entirely uncovered.
struct UncoveredSample {
  std::size_t sample = 0;
  Point center;
  double radius = kChainRadius;
  double certified_waste = 0.0;  ///< pi / 16
};

struct PathWitness {
  std::size_t a = 0;
  std::size_t b = 0;
  double c = 1e-10;
  std::vector<Point> sample_points;
  std::vector<std::size_t> chain;       ///< one member per sample
  std::vector<geometry::Disk> disks;    ///< radius 5 at samples 1..n-1
  double theta_ab = 0.0;
  double theta_chain_sum = 0.0;         ///< sum of theta over chain links
  double lower_bound = 0.0;             ///< (c / 1600) * theta_ab
  std::optional<UncoveredSample> uncovered;
};

/// Builds the sample chain and witness disks for a path starting within 1/4
/// of member `a` and ending within 1/4 of member `b`. Throws
/// std::invalid_argument when an endpoint is too far or an index is out of
/// range. A single-point path is sampled twice so the chain can hold both
/// a and b.
[[nodiscard]] PathWitness build_witness(const Packing& p, const PlanePath& path,
                                        std::size_t a, std::size_t b,
                                        const geometry::GoodnessConfig& cfg = {});

/// Violated witness invariants (spacing, chain radius, link distance, sample
/// count bound, telescoping), one message each.
[[nodiscard]] std::vector<std::string> check_witness(const Packing& p,
                                                     const PlanePath& path,
                                                     const PathWitness& w);

struct VerifyReport {
  geometry::WasteEstimate waste;
  double bound = 0.0;
  bool bound_ok = false;
  int max_multiplicity = 0;
  bool multiplicity_ok = false;

  [[nodiscard]] bool passed() const { return bound_ok && multiplicity_ok; }
};

/// Estimates the waste in the union of the witness disks (or in the quarter
/// disk of an uncovered sample) and checks it against the lower bound; also
/// probes the disk centers plus random points for the largest number of
/// disks covering one point.
[[nodiscard]] VerifyReport verify_waste_bound(const Packing& p, const PathWitness& w,
                                              std::int64_t samples, std::uint64_t seed);

}  // namespace packsurgeon::pathwaste
