#include "packsurgeon/pathwaste.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "packsurgeon/random.hpp"

namespace packsurgeon::pathwaste {
namespace {

using geometry::Box;
using geometry::Disk;

constexpr double kRootTolerance = 1e-12;
constexpr double kInvariantSlack = 1e-9;

struct Param {
  std::size_t segment = 0;
  double t = 0.0;
};

Point at(const PlanePath& path, Param p) {
  const Point a = path.points[p.segment];
  const Point b = path.points[p.segment + 1];
  return a + p.t * (b - a);
}

// Largest t in [lo, 1] with |a + t (b - a) - s| <= r, if any.
std::optional<double> last_within(Point a, Point b, Point s, double r, double lo) {
  const Point d = b - a;
  const Point w = a - s;
  const double qa = geometry::dot(d, d);
  const double qc = geometry::dot(w, w) - r * r;
  if (qa == 0.0) {
    if (qc <= kRootTolerance) return 1.0;
    return std::nullopt;
  }
  const double qb = geometry::dot(w, d);
  const double disc = qb * qb - qa * qc;
  if (disc < 0.0) return std::nullopt;
  const double root = std::sqrt(disc);
  const double t1 = (-qb - root) / qa;
  const double t2 = (-qb + root) / qa;
  const double hi = std::min(t2, 1.0);
  if (hi < std::max(t1, lo) - kRootTolerance) return std::nullopt;
  return std::max(hi, lo);
}

void check_member(const Packing& p, std::size_t member) {
  if (member > p.squares.size()) {
    throw std::invalid_argument("square index " + std::to_string(member) +
                                " out of range");
  }
}

}  // namespace

std::vector<Point> sample_along_path(const PlanePath& path) {
  if (path.points.empty()) throw std::invalid_argument("path has no points");
  std::vector<Point> samples{path.points.front()};
  if (path.points.size() == 1) return samples;

  const std::size_t segments = path.points.size() - 1;
  const Point end = path.points.back();
  Param cur{0, 0.0};
  Point cur_pt = samples.back();
  for (;;) {
    if (geometry::distance(cur_pt, end) <= kSampleSpacing) {
      samples.push_back(end);
      return samples;
    }
    std::optional<Param> next;
    for (std::size_t k = segments; k-- > cur.segment;) {
      const double lo = k == cur.segment ? cur.t : 0.0;
      if (auto t = last_within(path.points[k], path.points[k + 1], cur_pt,
                               kSampleSpacing, lo)) {
        next = Param{k, *t};
        break;
      }
    }
    if (!next || (next->segment == cur.segment && next->t <= cur.t)) {
      throw std::logic_error("path sampling made no progress");
    }
    cur = *next;
    cur_pt = at(path, cur);
    samples.push_back(cur_pt);
  }
}

std::int64_t sample_count_bound(const PlanePath& path) {
  if (path.points.empty()) throw std::invalid_argument("path has no points");
  double xlo = path.points[0].x, xhi = xlo, ylo = path.points[0].y, yhi = ylo;
  for (const auto& q : path.points) {
    xlo = std::min(xlo, q.x);
    xhi = std::max(xhi, q.x);
    ylo = std::min(ylo, q.y);
    yhi = std::max(yhi, q.y);
  }
  const double side = std::max(xhi - xlo, yhi - ylo);
  const auto cells = static_cast<std::int64_t>(std::ceil(4.0 * side));
  return cells * cells + 1;
}

double distance_to_member(const Packing& p, std::size_t member, Point q) {
  check_member(p, member);
  if (member == 0) return geometry::distance_to_container_exterior(q, p.x);
  return p.squares[member - 1].distance_to(q);
}

double member_distance(const Packing& p, std::size_t a, std::size_t b) {
  check_member(p, a);
  check_member(p, b);
  if (a == 0 && b == 0) return 0.0;
  if (a == 0) return geometry::square_to_container_exterior(p.squares[b - 1], p.x);
  if (b == 0) return geometry::square_to_container_exterior(p.squares[a - 1], p.x);
  return geometry::square_distance(p.squares[a - 1], p.squares[b - 1]);
}

double member_theta(const Packing& p, std::size_t a, std::size_t b) {
  check_member(p, a);
  check_member(p, b);
  const double ta = a == 0 ? 0.0 : p.squares[a - 1].tilt();
  const double tb = b == 0 ? 0.0 : p.squares[b - 1].tilt();
  return geometry::theta(ta, tb);
}

PathWitness build_witness(const Packing& p, const PlanePath& path, std::size_t a,
                          std::size_t b, const geometry::GoodnessConfig& cfg) {
  geometry::require_valid(cfg);
  check_member(p, a);
  check_member(p, b);
  PathWitness w;
  w.a = a;
  w.b = b;
  w.c = cfg.c;
  w.sample_points = sample_along_path(path);
  if (w.sample_points.size() == 1) w.sample_points.push_back(w.sample_points[0]);
  const std::size_t n = w.sample_points.size();

  if (distance_to_member(p, a, w.sample_points.front()) >= kChainRadius) {
    throw std::invalid_argument("path start is not within 1/4 of square " +
                                std::to_string(a));
  }
  if (distance_to_member(p, b, w.sample_points.back()) >= kChainRadius) {
    throw std::invalid_argument("path end is not within 1/4 of square " +
                                std::to_string(b));
  }
  w.theta_ab = member_theta(p, a, b);
  w.lower_bound = cfg.c / kMultiplicityBound * w.theta_ab;

  geometry::SquareIndex index(p.x);
  for (std::size_t i = 0; i < p.squares.size(); ++i) {
    index.insert(static_cast<std::uint32_t>(i), p.squares[i]);
  }

  w.chain.push_back(a);
  for (std::size_t j = 1; j + 1 < n; ++j) {
    const Point q = w.sample_points[j];
    // Nearest member within 1/4; ties go to the lowest index.
    std::size_t best = 0;
    double best_d = distance_to_member(p, 0, q);
    const Box probe{q.x - kChainRadius, q.y - kChainRadius, q.x + kChainRadius,
                    q.y + kChainRadius};
    for (auto id : index.candidates(probe)) {
      const double d = p.squares[id].distance_to(q);
      if (d < best_d) {
        best_d = d;
        best = id + 1;
      }
    }
    if (best_d >= kChainRadius) {
      w.uncovered = UncoveredSample{j, q, kChainRadius, std::numbers::pi / 16.0};
      return w;
    }
    w.chain.push_back(best);
  }
  w.chain.push_back(b);

  for (std::size_t j = 0; j + 1 < n; ++j) {
    w.disks.push_back(Disk{w.sample_points[j], kDiskRadius});
    w.theta_chain_sum += member_theta(p, w.chain[j], w.chain[j + 1]);
  }
  return w;
}

std::vector<std::string> check_witness(const Packing& p, const PlanePath& path,
                                       const PathWitness& w) {
  std::vector<std::string> errors;
  const auto raw = sample_along_path(path);
  if (static_cast<std::int64_t>(raw.size()) > sample_count_bound(path)) {
    errors.push_back("sample count " + std::to_string(raw.size()) +
                     " exceeds ceil(4R)^2 + 1");
  }
  const auto& s = w.sample_points;
  const std::size_t n = s.size();
  for (std::size_t j = 0; j + 1 < n; ++j) {
    if (geometry::distance(s[j], s[j + 1]) > kSampleSpacing + kInvariantSlack) {
      errors.push_back("consecutive samples " + std::to_string(j) + " farther than 1/2");
    }
  }
  // Samples before the final one are pairwise at least 1/2 apart.
  for (std::size_t j = 0; j + 1 < n; ++j) {
    for (std::size_t k = j + 1; k + 1 < n; ++k) {
      if (geometry::distance(s[j], s[k]) < kSampleSpacing - kInvariantSlack) {
        errors.push_back("samples " + std::to_string(j) + " and " + std::to_string(k) +
                         " closer than 1/2");
      }
    }
  }
  if (w.chain.empty() || w.chain.front() != w.a) errors.push_back("chain does not start at a");
  if (w.uncovered) {
    const double d_min = [&] {
      double best = distance_to_member(p, 0, w.uncovered->center);
      for (const auto& sq : p.squares) best = std::min(best, sq.distance_to(w.uncovered->center));
      return best;
    }();
    if (d_min < kChainRadius) errors.push_back("uncovered sample has a member within 1/4");
    return errors;
  }
  if (w.chain.size() != n) {
    errors.push_back("chain length " + std::to_string(w.chain.size()) +
                     " != sample count " + std::to_string(n));
    return errors;
  }
  if (w.chain.back() != w.b) errors.push_back("chain does not end at b");
  for (std::size_t j = 0; j < n; ++j) {
    if (distance_to_member(p, w.chain[j], s[j]) >= kChainRadius) {
      errors.push_back("chain entry " + std::to_string(j) + " not within 1/4 of its sample");
    }
  }
  double sum = 0.0;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    if (member_distance(p, w.chain[j], w.chain[j + 1]) >= 1.0) {
      errors.push_back("chain link " + std::to_string(j) + " is at least 1 apart");
    }
    sum += member_theta(p, w.chain[j], w.chain[j + 1]);
  }
  if (sum < w.theta_ab - 1e-12) errors.push_back("telescoped theta sum below theta(a, b)");
  if (w.disks.size() + 1 != n) errors.push_back("disk count != sample count - 1");
  for (const auto& d : w.disks) {
    if (d.radius != kDiskRadius) errors.push_back("disk radius is not 5");
  }
  return errors;
}

VerifyReport verify_waste_bound(const Packing& p, const PathWitness& w,
                                std::int64_t samples, std::uint64_t seed) {
  VerifyReport report;
  if (w.uncovered) {
    // First branch: the quarter disk alone carries c * theta.
    report.bound = w.c * w.theta_ab;
    report.waste = geometry::waste_in_region(
        p, geometry::Region{Disk{w.uncovered->center, w.uncovered->radius}}, samples,
        seed);
    report.bound_ok = report.waste.value + report.waste.half_width >= report.bound;
    report.max_multiplicity = 1;
    report.multiplicity_ok = true;
    return report;
  }

  std::vector<geometry::Region> parts;
  parts.reserve(w.disks.size());
  for (const auto& d : w.disks) parts.push_back(geometry::Region{d});
  const geometry::Region region{std::move(parts)};
  report.bound = w.lower_bound;
  report.waste = geometry::waste_in_region(p, region, samples, seed);
  report.bound_ok = report.waste.value + report.waste.half_width >= report.bound;

  std::vector<Point> probes;
  for (const auto& d : w.disks) probes.push_back(d.center);
  if (const auto box = geometry::region_bounds(region)) {
    CounterRng rng(seed, 0xD15CULL);
    for (int k = 0; k < 4096; ++k) {
      probes.push_back({rng.uniform(box->xlo, box->xhi), rng.uniform(box->ylo, box->yhi)});
    }
  }
  for (const auto& q : probes) {
    int count = 0;
    for (const auto& d : w.disks) {
      if (geometry::distance(q, d.center) < d.radius) ++count;
    }
    report.max_multiplicity = std::max(report.max_multiplicity, count);
  }
  report.multiplicity_ok = report.max_multiplicity <= kMultiplicityBound;
  return report;
}

}  // namespace packsurgeon::pathwaste
