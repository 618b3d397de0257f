#include "packsurgeon/geometry.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "packsurgeon/parallel.hpp"
#include "packsurgeon/random.hpp"

namespace packsurgeon::geometry {

double point_segment_distance(Point p, Point a, Point b) {
  const Point ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return distance(p, a);
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return distance(p, a + t * ab);
}

Box intersect(const Box& a, const Box& b) {
  return {std::max(a.xlo, b.xlo), std::max(a.ylo, b.ylo), std::min(a.xhi, b.xhi),
          std::min(a.yhi, b.yhi)};
}

double normalize_tilt(double tilt) {
  if (!std::isfinite(tilt)) throw std::invalid_argument("tilt must be finite");
  double t = std::fmod(tilt, kHalfPi);
  if (t < 0.0) t += kHalfPi;
  if (t >= kHalfPi) t = 0.0;
  return t;
}

UnitSquare::UnitSquare(Point center, double tilt)
    : center_(center), tilt_(normalize_tilt(tilt)) {
  if (!std::isfinite(center.x) || !std::isfinite(center.y)) {
    throw std::invalid_argument("square center must be finite");
  }
}

std::array<Point, 4> UnitSquare::corners() const {
  const double c = std::cos(tilt_) * 0.5;
  const double s = std::sin(tilt_) * 0.5;
  // Half-axes u = (c, s), v = (-s, c).
  return {Point{center_.x - c + s, center_.y - s - c},
          Point{center_.x + c + s, center_.y + s - c},
          Point{center_.x + c - s, center_.y + s + c},
          Point{center_.x - c - s, center_.y - s + c}};
}

Box UnitSquare::bounds() const {
  const double half = 0.5 * (std::cos(tilt_) + std::sin(tilt_));
  return {center_.x - half, center_.y - half, center_.x + half, center_.y + half};
}

namespace {

// Coordinates of p in the square's frame.
Point to_frame(Point p, Point center, double tilt) {
  const Point d = p - center;
  const double c = std::cos(tilt);
  const double s = std::sin(tilt);
  return {c * d.x + s * d.y, -s * d.x + c * d.y};
}

Point from_frame(Point q, Point center, double tilt) {
  const double c = std::cos(tilt);
  const double s = std::sin(tilt);
  return {center.x + c * q.x - s * q.y, center.y + s * q.x + c * q.y};
}

}  // namespace

bool UnitSquare::contains(Point p) const {
  const Point q = to_frame(p, center_, tilt_);
  return std::abs(q.x) <= 0.5 && std::abs(q.y) <= 0.5;
}

double UnitSquare::distance_to(Point p) const {
  const Point q = to_frame(p, center_, tilt_);
  const double dx = std::max(std::abs(q.x) - 0.5, 0.0);
  const double dy = std::max(std::abs(q.y) - 0.5, 0.0);
  return std::hypot(dx, dy);
}

Point UnitSquare::closest_point(Point p) const {
  const Point q = to_frame(p, center_, tilt_);
  return from_frame({std::clamp(q.x, -0.5, 0.5), std::clamp(q.y, -0.5, 0.5)},
                    center_, tilt_);
}

double theta(double tilt_a, double tilt_b) {
  const double d = std::fmod(std::abs(tilt_a - tilt_b), kHalfPi);
  return std::min(d, kHalfPi - d);
}

double theta(const UnitSquare& a, const UnitSquare& b) {
  return theta(a.tilt(), b.tilt());
}

double theta_to_container(const UnitSquare& s) { return theta(0.0, s.tilt()); }

void require_valid(const GoodnessConfig& cfg) {
  if (!(cfg.c > 0.0 && cfg.c <= std::numbers::pi / 4.0)) {
    throw std::invalid_argument("tilt threshold c must lie in (0, pi/4]");
  }
}

bool is_good(const UnitSquare& s, const GoodnessConfig& cfg) {
  return theta_to_container(s) <= cfg.c;
}

double penetration_depth(std::span<const Point> a, std::span<const Point> b) {
  double depth = std::numeric_limits<double>::infinity();
  const auto project = [](std::span<const Point> poly, Point axis) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& p : poly) {
      const double v = dot(p, axis);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    return std::pair{lo, hi};
  };
  for (auto poly : {a, b}) {
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const Point e = poly[(i + 1) % poly.size()] - poly[i];
      const double len = norm(e);
      if (len == 0.0) continue;
      const Point axis{-e.y / len, e.x / len};
      const auto [alo, ahi] = project(a, axis);
      const auto [blo, bhi] = project(b, axis);
      depth = std::min(depth, std::min(ahi, bhi) - std::max(alo, blo));
    }
  }
  return depth;
}

bool squares_overlap(const UnitSquare& a, const UnitSquare& b) {
  if (distance(a.center(), b.center()) >= std::numbers::sqrt2) return false;
  const auto ca = a.corners();
  const auto cb = b.corners();
  return penetration_depth(ca, cb) >= kOverlapTolerance;
}

double polygon_area(std::span<const Point> poly) {
  double twice = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    twice += cross(poly[i], poly[(i + 1) % poly.size()]);
  }
  return std::abs(twice) * 0.5;
}

Polygon clip_to_box(std::span<const Point> poly, const Box& box) {
  Polygon current(poly.begin(), poly.end());
  // Each half-plane is {p : sign * (p[axis] - bound) <= 0}.
  const auto clip = [&](auto inside, auto cross_at) {
    Polygon out;
    for (std::size_t i = 0; i < current.size(); ++i) {
      const Point p = current[i];
      const Point q = current[(i + 1) % current.size()];
      const bool pin = inside(p);
      const bool qin = inside(q);
      if (pin) out.push_back(p);
      if (pin != qin) out.push_back(cross_at(p, q));
    }
    current = std::move(out);
  };
  const auto lerp_x = [](Point p, Point q, double x) {
    const double t = (x - p.x) / (q.x - p.x);
    return Point{x, p.y + t * (q.y - p.y)};
  };
  const auto lerp_y = [](Point p, Point q, double y) {
    const double t = (y - p.y) / (q.y - p.y);
    return Point{p.x + t * (q.x - p.x), y};
  };
  clip([&](Point p) { return p.x >= box.xlo; },
       [&](Point p, Point q) { return lerp_x(p, q, box.xlo); });
  clip([&](Point p) { return p.x <= box.xhi; },
       [&](Point p, Point q) { return lerp_x(p, q, box.xhi); });
  clip([&](Point p) { return p.y >= box.ylo; },
       [&](Point p, Point q) { return lerp_y(p, q, box.ylo); });
  clip([&](Point p) { return p.y <= box.yhi; },
       [&](Point p, Point q) { return lerp_y(p, q, box.yhi); });
  return current;
}

double intersection_area(const UnitSquare& s, const Box& box) {
  const Box overlap = intersect(s.bounds(), box);
  if (overlap.xhi <= overlap.xlo || overlap.yhi <= overlap.ylo) return 0.0;
  const auto corners = s.corners();
  return polygon_area(clip_to_box(corners, box));
}

double square_distance(const UnitSquare& a, const UnitSquare& b) {
  const auto ca = a.corners();
  const auto cb = b.corners();
  if (penetration_depth(ca, cb) >= 0.0) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : ca) best = std::min(best, b.distance_to(p));
  for (const auto& p : cb) best = std::min(best, a.distance_to(p));
  return best;
}

double distance_to_container_exterior(Point p, double x) {
  const double d = std::min({p.x, x - p.x, p.y, x - p.y});
  return std::max(d, 0.0);
}

double square_to_container_exterior(const UnitSquare& s, double x) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : s.corners()) {
    best = std::min(best, distance_to_container_exterior(c, x));
  }
  return best;
}

PackingReport validate_packing(const Packing& p) {
  PackingReport report;
  if (!(p.x > 0.0) || !std::isfinite(p.x)) {
    report.violations.push_back({Violation::Kind::kContainer, 0, 0,
                                 "container side must be positive and finite"});
    return report;
  }
  constexpr double tol = kOverlapTolerance;
  for (std::size_t i = 0; i < p.squares.size(); ++i) {
    for (const auto& c : p.squares[i].corners()) {
      if (c.x < -tol || c.y < -tol || c.x > p.x + tol || c.y > p.x + tol) {
        report.violations.push_back({Violation::Kind::kContainment, i, i,
                                     "square " + std::to_string(i) +
                                         " leaves the container"});
        break;
      }
    }
  }
  SquareIndex index(p.x);
  for (std::size_t i = 0; i < p.squares.size(); ++i) {
    index.insert(static_cast<std::uint32_t>(i), p.squares[i]);
  }
  for (std::size_t i = 0; i < p.squares.size(); ++i) {
    for (auto j : index.candidates(p.squares[i].bounds())) {
      if (j <= i) continue;
      if (squares_overlap(p.squares[i], p.squares[j])) {
        report.violations.push_back({Violation::Kind::kOverlap, i, j,
                                     "squares " + std::to_string(i) + " and " +
                                         std::to_string(j) + " overlap"});
      }
    }
  }
  std::stable_sort(report.violations.begin(), report.violations.end(),
                   [](const Violation& a, const Violation& b) {
                     return std::pair{a.first, a.second} < std::pair{b.first, b.second};
                   });
  return report;
}

double waste_total(const Packing& p) {
  return p.x * p.x - static_cast<double>(p.squares.size());
}

SquareIndex::SquareIndex(double x)
    : side_(std::max(1, static_cast<int>(std::ceil(std::max(x, 0.0))) + 2)),
      buckets_(static_cast<std::size_t>(side_) * side_) {}

int SquareIndex::bucket_of(double v) const {
  // Bucket 0 collects everything left of 0; the last one everything beyond x.
  const double shifted = std::floor(v) + 1.0;
  return static_cast<int>(std::clamp(shifted, 0.0, static_cast<double>(side_ - 1)));
}

void SquareIndex::insert(std::uint32_t id, const UnitSquare& s) {
  const Box b = s.bounds();
  for (int bx = bucket_of(b.xlo); bx <= bucket_of(b.xhi); ++bx) {
    for (int by = bucket_of(b.ylo); by <= bucket_of(b.yhi); ++by) {
      buckets_[static_cast<std::size_t>(by) * side_ + bx].push_back(id);
    }
  }
}

std::vector<std::uint32_t> SquareIndex::candidates(const Box& box) const {
  std::vector<std::uint32_t> out;
  for (int bx = bucket_of(box.xlo); bx <= bucket_of(box.xhi); ++bx) {
    for (int by = bucket_of(box.ylo); by <= bucket_of(box.yhi); ++by) {
      const auto& b = buckets_[static_cast<std::size_t>(by) * side_ + bx];
      out.insert(out.end(), b.begin(), b.end());
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::span<const std::uint32_t> SquareIndex::near_point(Point p) const {
  return buckets_[static_cast<std::size_t>(bucket_of(p.y)) * side_ + bucket_of(p.x)];
}

bool covered(const Packing& p, const SquareIndex& index, Point p0) {
  for (auto id : index.near_point(p0)) {
    if (p.squares[id].contains(p0)) return true;
  }
  return false;
}

bool region_contains(const Region& region, Point p) {
  return std::visit(
      [&](const auto& shape) -> bool {
        using T = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<T, Disk>) {
          return distance(p, shape.center) < shape.radius;
        } else if constexpr (std::is_same_v<T, Box>) {
          return shape.contains(p);
        } else if constexpr (std::is_same_v<T, Tube>) {
          const auto& pts = shape.polyline;
          if (pts.size() == 1) return distance(p, pts.front()) < shape.radius;
          for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            if (point_segment_distance(p, pts[i], pts[i + 1]) < shape.radius) return true;
          }
          return false;
        } else {
          return std::any_of(shape.begin(), shape.end(),
                             [&](const Region& r) { return region_contains(r, p); });
        }
      },
      region.shape);
}

std::optional<Box> region_bounds(const Region& region) {
  return std::visit(
      [&](const auto& shape) -> std::optional<Box> {
        using T = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<T, Disk>) {
          if (!(shape.radius > 0.0)) return std::nullopt;
          return Box{shape.center.x - shape.radius, shape.center.y - shape.radius,
                     shape.center.x + shape.radius, shape.center.y + shape.radius};
        } else if constexpr (std::is_same_v<T, Box>) {
          if (shape.area() <= 0.0) return std::nullopt;
          return shape;
        } else if constexpr (std::is_same_v<T, Tube>) {
          if (shape.polyline.empty() || !(shape.radius > 0.0)) return std::nullopt;
          Box b{shape.polyline[0].x, shape.polyline[0].y, shape.polyline[0].x,
                shape.polyline[0].y};
          for (const auto& q : shape.polyline) {
            b.xlo = std::min(b.xlo, q.x);
            b.ylo = std::min(b.ylo, q.y);
            b.xhi = std::max(b.xhi, q.x);
            b.yhi = std::max(b.yhi, q.y);
          }
          return Box{b.xlo - shape.radius, b.ylo - shape.radius, b.xhi + shape.radius,
                     b.yhi + shape.radius};
        } else {
          std::optional<Box> acc;
          for (const auto& r : shape) {
            const auto b = region_bounds(r);
            if (!b) continue;
            if (!acc) {
              acc = b;
            } else {
              acc = Box{std::min(acc->xlo, b->xlo), std::min(acc->ylo, b->ylo),
                        std::max(acc->xhi, b->xhi), std::max(acc->yhi, b->yhi)};
            }
          }
          return acc;
        }
      },
      region.shape);
}

Region tube_region(const PlanePath& path, double r) {
  if (path.points.empty()) throw std::invalid_argument("path has no points");
  if (!(r > 0.0)) throw std::invalid_argument("tube radius must be positive");
  if (path.points.size() == 1) return Region{Disk{path.points.front(), r}};
  return Region{Tube{path.points, r}};
}

WasteEstimate waste_in_region(const Packing& p, const Region& region,
                              std::int64_t samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  WasteEstimate est;
  est.samples = samples;
  const auto bounds = region_bounds(region);
  if (!bounds) return est;
  const Box box = intersect(*bounds, Box{0.0, 0.0, p.x, p.x});
  const double area = box.area();
  if (area <= 0.0) return est;

  SquareIndex index(p.x);
  for (std::size_t i = 0; i < p.squares.size(); ++i) {
    index.insert(static_cast<std::uint32_t>(i), p.squares[i]);
  }
  constexpr std::int64_t kChunk = 1 << 15;
  const auto chunks = static_cast<std::size_t>((samples + kChunk - 1) / kChunk);
  std::vector<std::int64_t> hits(chunks, 0);
  parallel_for(chunks, [&](std::size_t k) {
    CounterRng rng(seed, k);
    const std::int64_t begin = static_cast<std::int64_t>(k) * kChunk;
    const std::int64_t end = std::min(samples, begin + kChunk);
    std::int64_t count = 0;
    for (std::int64_t s = begin; s < end; ++s) {
      const Point q{rng.uniform(box.xlo, box.xhi), rng.uniform(box.ylo, box.yhi)};
      if (region_contains(region, q) && !covered(p, index, q)) ++count;
    }
    hits[k] = count;
  });
  std::int64_t total = 0;
  for (auto h : hits) total += h;
  const double frac = static_cast<double>(total) / static_cast<double>(samples);
  constexpr double kZ99 = 2.5758293035489004;
  est.value = frac * area;
  est.half_width = kZ99 * area * std::sqrt(frac * (1.0 - frac) / static_cast<double>(samples));
  return est;
}

}  // namespace packsurgeon::geometry
