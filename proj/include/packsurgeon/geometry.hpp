#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace packsurgeon::geometry {

inline constexpr double kHalfPi = std::numbers::pi / 2.0;
/// Intersections thinner (SAT penetration) or smaller (area) than this are
/// treated as contact, not overlap.
inline constexpr double kOverlapTolerance = 1e-9;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend bool operator==(const Point&, const Point&) = default;
};

[[nodiscard]] inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
[[nodiscard]] inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
[[nodiscard]] inline double norm(Point a) { return std::hypot(a.x, a.y); }
[[nodiscard]] inline double distance(Point a, Point b) { return norm(a - b); }

/// Distance from p to the closed segment [a, b].
[[nodiscard]] double point_segment_distance(Point p, Point a, Point b);

/// Axis-aligned closed box.
struct Box {
  double xlo = 0.0;
  double ylo = 0.0;
  double xhi = 0.0;
  double yhi = 0.0;

  [[nodiscard]] double area() const {
    return std::max(0.0, xhi - xlo) * std::max(0.0, yhi - ylo);
  }
  [[nodiscard]] bool contains(Point p) const {
    return p.x >= xlo && p.x <= xhi && p.y >= ylo && p.y <= yhi;
  }
  friend bool operator==(const Box&, const Box&) = default;
};

[[nodiscard]] Box intersect(const Box& a, const Box& b);

/// Reduces a tilt to [0, pi/2); a square is invariant under quarter turns.
[[nodiscard]] double normalize_tilt(double tilt);

/// Unit square with a tilt relative to the container's axes.
class UnitSquare {
 public:
  UnitSquare() = default;
  UnitSquare(Point center, double tilt);

  [[nodiscard]] Point center() const { return center_; }
  [[nodiscard]] double tilt() const { return tilt_; }
  /// Counter-clockwise corners.
  [[nodiscard]] std::array<Point, 4> corners() const;
  [[nodiscard]] Box bounds() const;
  /// Closed square; the boundary counts as covered.
  [[nodiscard]] bool contains(Point p) const;
  /// Distance from p to the closed square (0 inside).
  [[nodiscard]] double distance_to(Point p) const;
  [[nodiscard]] Point closest_point(Point p) const;

  friend bool operator==(const UnitSquare&, const UnitSquare&) = default;

 private:
  Point center_{};
  double tilt_ = 0.0;
};

/// Minimum rotation aligning two orientations, in [0, pi/4].
[[nodiscard]] double theta(double tilt_a, double tilt_b);
[[nodiscard]] double theta(const UnitSquare& a, const UnitSquare& b);
/// Rotation between a square and the axis-aligned container.
[[nodiscard]] double theta_to_container(const UnitSquare& s);

struct GoodnessConfig {
  double c = 1e-10;
};
/// Throws std::invalid_argument unless 0 < c <= pi/4.
void require_valid(const GoodnessConfig& cfg);

[[nodiscard]] bool is_good(const UnitSquare& s, const GoodnessConfig& cfg = {});

struct Packing {
  double x = 1.0;
  std::vector<UnitSquare> squares;

  friend bool operator==(const Packing&, const Packing&) = default;
};

struct Violation {
  enum class Kind { kContainer, kContainment, kOverlap };
  Kind kind;
  std::size_t first = 0;   ///< 0-based index into Packing::squares
  std::size_t second = 0;  ///< second square for overlaps
  std::string message;
};

struct PackingReport {
  std::vector<Violation> violations;  ///< ordered by (first, second)

  [[nodiscard]] bool ok() const { return violations.empty(); }
};

[[nodiscard]] PackingReport validate_packing(const Packing& p);

/// x^2 minus the number of squares.
[[nodiscard]] double waste_total(const Packing& p);

// Convex polygon helpers.
using Polygon = std::vector<Point>;

/// Smallest overlap of the projections over all edge normals of both convex
/// polygons; <= 0 means a separating axis exists.
[[nodiscard]] double penetration_depth(std::span<const Point> a,
                                       std::span<const Point> b);
[[nodiscard]] bool squares_overlap(const UnitSquare& a, const UnitSquare& b);
[[nodiscard]] double polygon_area(std::span<const Point> poly);
[[nodiscard]] Polygon clip_to_box(std::span<const Point> poly, const Box& box);
[[nodiscard]] double intersection_area(const UnitSquare& s, const Box& box);
/// Minimum distance between two closed squares.
[[nodiscard]] double square_distance(const UnitSquare& a, const UnitSquare& b);
/// Distance from p to the closed exterior of [0, x]^2 (0 outside).
[[nodiscard]] double distance_to_container_exterior(Point p, double x);
/// Distance from a square to the closed exterior of [0, x]^2.
[[nodiscard]] double square_to_container_exterior(const UnitSquare& s, double x);

/// Bucketed lookup of squares over [0, x]^2 with unit buckets.
class SquareIndex {
 public:
  explicit SquareIndex(double x);

  void insert(std::uint32_t id, const UnitSquare& s);
  /// Ids whose bounds may meet `box`, deduplicated and sorted.
  [[nodiscard]] std::vector<std::uint32_t> candidates(const Box& box) const;
  /// Ids whose bounds may contain p (may contain duplicates across calls only).
  [[nodiscard]] std::span<const std::uint32_t> near_point(Point p) const;

 private:
  [[nodiscard]] int bucket_of(double v) const;

  int side_;
  std::vector<std::vector<std::uint32_t>> buckets_;
};

/// Polyline in the plane; a single point is a degenerate path.
struct PlanePath {
  std::vector<Point> points;

  friend bool operator==(const PlanePath&, const PlanePath&) = default;
};

struct Disk {
  Point center;
  double radius = 1.0;
};

struct Tube {
  std::vector<Point> polyline;
  double radius = 1.0;
};

/// Disk, axis-aligned box, tube around a polyline, or a union of regions.
struct Region {
  std::variant<Disk, Box, Tube, std::vector<Region>> shape;
};

[[nodiscard]] bool region_contains(const Region& region, Point p);
/// Bounding box; nullopt for a region with no area (e.g. an empty union).
[[nodiscard]] std::optional<Box> region_bounds(const Region& region);

/// Points within distance < r of the polyline image.
[[nodiscard]] Region tube_region(const PlanePath& path, double r);

struct WasteEstimate {
  double value = 0.0;
  double half_width = 0.0;  ///< 99% normal-approximation half interval
  std::int64_t samples = 0;
};

/// Uncovered area of region ∩ [0, x]^2 by uniform sampling of the region's
/// bounding box clipped to the container. Samples are drawn in fixed-size
/// chunks, chunk k from stream (seed, k), so the estimate does not depend on
/// the number of worker threads.
[[nodiscard]] WasteEstimate waste_in_region(const Packing& p, const Region& region,
                                            std::int64_t samples, std::uint64_t seed);

/// Whether any square of the packing covers p; `index` must hold all squares.
[[nodiscard]] bool covered(const Packing& p, const SquareIndex& index, Point p0);

}  // namespace packsurgeon::geometry
