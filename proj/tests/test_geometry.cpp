#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "packsurgeon/generators.hpp"
#include "packsurgeon/geometry.hpp"

using namespace packsurgeon::geometry;
using std::numbers::pi;

namespace {

Packing lattice(int side) {
  Packing p{static_cast<double>(side), {}};
  for (int r = 0; r < side; ++r) {
    for (int c = 0; c < side; ++c) p.squares.emplace_back(Point{c + 0.5, r + 0.5}, 0.0);
  }
  return p;
}

// Point-in-square from the rotated frame, independent of the corner code.
bool in_square_oracle(const UnitSquare& s, Point q) {
  const double dx = q.x - s.center().x;
  const double dy = q.y - s.center().y;
  const double u = std::cos(s.tilt()) * dx + std::sin(s.tilt()) * dy;
  const double v = -std::sin(s.tilt()) * dx + std::cos(s.tilt()) * dy;
  return std::abs(u) <= 0.5 && std::abs(v) <= 0.5;
}

double grid_area_oracle(const UnitSquare& s, const Box& b, int steps) {
  const double hx = (b.xhi - b.xlo) / steps;
  const double hy = (b.yhi - b.ylo) / steps;
  int hits = 0;
  for (int i = 0; i < steps; ++i) {
    for (int j = 0; j < steps; ++j) {
      if (in_square_oracle(s, {b.xlo + (i + 0.5) * hx, b.ylo + (j + 0.5) * hy})) ++hits;
    }
  }
  return hits * hx * hy;
}

}  // namespace

TEST_CASE("theta examples") {
  CHECK(theta(0.3, 0.3) == doctest::Approx(0.0));
  CHECK(theta(0.0, normalize_tilt(pi / 3)) == doctest::Approx(pi / 6));
  CHECK(theta(0.0, pi / 4) == doctest::Approx(pi / 4));
}

TEST_CASE("theta is a bounded symmetric pseudometric") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> tilt(-10.0, 10.0);
  for (int k = 0; k < 20000; ++k) {
    const double a = tilt(rng), b = tilt(rng), c = tilt(rng);
    CHECK(std::abs(theta(a, b) - theta(b, a)) <= 1e-12);
    CHECK(theta(a, c) <= theta(a, b) + theta(b, c) + 1e-12);
    CHECK(theta(a, b) <= pi / 4 + 1e-12);
    CHECK(theta(a, b) >= 0.0);
  }
}

TEST_CASE("theta is invariant under quarter turns of both squares") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> tilt(-3.0, 3.0);
  for (int k = 0; k < 5000; ++k) {
    const double a = tilt(rng), b = tilt(rng);
    const int turns = static_cast<int>(rng() % 7) - 3;
    const double shift = turns * pi / 2;
    CHECK(std::abs(theta(a + shift, b + shift) - theta(a, b)) <= 1e-12);
    CHECK(std::abs(theta(a + shift, b) - theta(a, b)) <= 1e-12);
  }
}

TEST_CASE("goodness examples") {
  const GoodnessConfig cfg{1e-10};
  CHECK(is_good(UnitSquare({1, 1}, 0.0), cfg));
  CHECK_FALSE(is_good(UnitSquare({1, 1}, 1e-5), cfg));
  CHECK(is_good(UnitSquare({1, 1}, pi / 2 - 1e-12), cfg));
  CHECK_THROWS_AS(require_valid(GoodnessConfig{0.0}), std::invalid_argument);
  CHECK_THROWS_AS(require_valid(GoodnessConfig{1.0}), std::invalid_argument);
}

TEST_CASE("validate_packing examples") {
  CHECK(validate_packing(Packing{3.0, {UnitSquare({0.5, 0.5}, 0), UnitSquare({1.5, 0.5}, 0)}}).ok());

  const auto tilted = validate_packing(Packing{1.0, {UnitSquare({0.5, 0.5}, pi / 8)}});
  REQUIRE_FALSE(tilted.ok());
  CHECK(tilted.violations[0].kind == Violation::Kind::kContainment);
  CHECK(tilted.violations[0].first == 0);

  const auto clash = validate_packing(Packing{3.0, {UnitSquare({1, 1}, 0), UnitSquare({1.1, 1.05}, 0.2)}});
  REQUIRE_FALSE(clash.ok());
  CHECK(clash.violations[0].kind == Violation::Kind::kOverlap);
  CHECK(clash.violations[0].first == 0);
  CHECK(clash.violations[0].second == 1);

  CHECK_FALSE(validate_packing(Packing{0.0, {}}).ok());
}

TEST_CASE("touching squares do not overlap") {
  CHECK_FALSE(squares_overlap(UnitSquare({0.5, 0.5}, 0), UnitSquare({1.5, 0.5}, 0)));
  CHECK_FALSE(squares_overlap(UnitSquare({0.5, 0.5}, 0), UnitSquare({1.5, 1.5}, 0)));
  CHECK(squares_overlap(UnitSquare({0.5, 0.5}, 0), UnitSquare({1.49, 0.5}, 0)));
}

TEST_CASE("square overlap agrees with point sampling") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> pos(0.0, 2.0), tilt(0.0, pi / 2);
  int checked = 0;
  for (int k = 0; k < 400; ++k) {
    const UnitSquare a({pos(rng), pos(rng)}, tilt(rng));
    const UnitSquare b({pos(rng), pos(rng)}, tilt(rng));
    const double depth = penetration_depth(a.corners(), b.corners());
    if (std::abs(depth) < 0.05) continue;  // too close to call by sampling
    // Probe only where both bounding boxes meet.
    const Box both = intersect(a.bounds(), b.bounds());
    bool shared = false;
    if (both.area() > 0.0) {
      std::uniform_real_distribution<double> px(both.xlo, both.xhi), py(both.ylo, both.yhi);
      for (int s = 0; s < 40000 && !shared; ++s) {
        const Point q{px(rng), py(rng)};
        shared = in_square_oracle(a, q) && in_square_oracle(b, q);
      }
    }
    CHECK(squares_overlap(a, b) == shared);
    ++checked;
  }
  CHECK(checked > 200);
}

TEST_CASE("intersection area agrees with grid integration") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> pos(0.0, 3.0), tilt(0.0, pi / 2);
  for (int k = 0; k < 60; ++k) {
    const UnitSquare s({pos(rng), pos(rng)}, tilt(rng));
    const Box b{1.0, 1.0, 2.2, 1.9};
    CHECK(intersection_area(s, b) == doctest::Approx(grid_area_oracle(s, b, 400)).epsilon(0.01).scale(1.0));
  }
  CHECK(intersection_area(UnitSquare({0.5, 0.5}, 0.7), Box{-5, -5, 5, 5}) == doctest::Approx(1.0));
}

TEST_CASE("closest point and distance") {
  const UnitSquare s({0, 0}, pi / 4);
  CHECK(s.distance_to({0, 0}) == 0.0);
  CHECK(s.distance_to({2, 0}) == doctest::Approx(2 - std::sqrt(0.5)));
  const Point c = s.closest_point({2, 0});
  CHECK(distance(c, {2, 0}) == doctest::Approx(s.distance_to({2, 0})));
  CHECK(square_distance(UnitSquare({0.5, 0.5}, 0), UnitSquare({2.5, 0.5}, 0)) == doctest::Approx(1.0));
  CHECK(distance_to_container_exterior({1, 1.5}, 4) == doctest::Approx(1.0));
  CHECK(distance_to_container_exterior({-1, 1}, 4) == 0.0);
}

TEST_CASE("waste_total examples") {
  CHECK(waste_total(lattice(3)) == 0.0);
  Packing p{2.5, {}};
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) p.squares.emplace_back(Point{c + 0.5, r + 0.5}, 0.0);
  }
  CHECK(waste_total(p) == doctest::Approx(2.25));
  CHECK(waste_total(Packing{1.0, {}}) == 1.0);
}

TEST_CASE("waste_in_region examples") {
  const auto disk = waste_in_region(Packing{10.0, {}}, Region{Disk{{5, 5}, 1.0}}, 200000, 1);
  CHECK(std::abs(disk.value - pi) <= 4 * disk.half_width);

  const auto full = waste_in_region(lattice(3), Region{Box{0, 0, 3, 3}}, 100000, 2);
  CHECK(full.value == 0.0);

  const Packing one{2.0, {UnitSquare({1, 1}, 0)}};
  const auto three = waste_in_region(one, Region{Box{0, 0, 2, 2}}, 200000, 3);
  CHECK(std::abs(three.value - 3.0) <= 4 * three.half_width);

  CHECK(waste_in_region(one, Region{Box{1, 1, 1, 2}}, 1000, 4).value == 0.0);
  CHECK(waste_in_region(one, Region{std::vector<Region>{}}, 1000, 4).value == 0.0);

  const auto a = waste_in_region(one, Region{Disk{{0.3, 0.3}, 0.8}}, 50000, 9);
  const auto b = waste_in_region(one, Region{Disk{{0.3, 0.3}, 0.8}}, 50000, 9);
  CHECK(a.value == b.value);
}

TEST_CASE("waste is monotone on nested disks") {
  const auto p = packsurgeon::gen::jittered_lattice({8.0, 0.3, 0.05, 0.3}, 17);
  for (double r = 0.5; r < 4.0; r += 0.5) {
    const auto inner = waste_in_region(p, Region{Disk{{4, 4}, r}}, 200000, 1);
    const auto outer = waste_in_region(p, Region{Disk{{4, 4}, r + 0.5}}, 200000, 2);
    CHECK(inner.value <= outer.value + 4 * (inner.half_width + outer.half_width));
  }
}

TEST_CASE("tube region examples") {
  const auto dot = tube_region(PlanePath{{{1, 1}}}, 1.0);
  CHECK(std::holds_alternative<Disk>(dot.shape));

  // Stadium: membership matches the analytic distance-to-segment rule.
  const Point a{1, 1}, b{4, 2};
  const auto stadium = tube_region(PlanePath{{a, b}}, 0.7);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1.0, 6.0);
  for (int k = 0; k < 5000; ++k) {
    const Point q{u(rng), u(rng)};
    const double len2 = (b.x - a.x) * (b.x - a.x) + (b.y - a.y) * (b.y - a.y);
    const double t = std::clamp(((q.x - a.x) * (b.x - a.x) + (q.y - a.y) * (b.y - a.y)) / len2, 0.0, 1.0);
    const double dist = std::hypot(q.x - (a.x + t * (b.x - a.x)), q.y - (a.y + t * (b.y - a.y)));
    CHECK(region_contains(stadium, q) == (dist < 0.7));
  }
  const auto area = waste_in_region(Packing{10.0, {}}, stadium, 400000, 6);
  const double exact = 2 * 0.7 * distance(a, b) + pi * 0.49;
  CHECK(std::abs(area.value - exact) <= 4 * area.half_width);

  const auto dup = tube_region(PlanePath{{a, a, b}}, 0.7);
  for (int k = 0; k < 2000; ++k) {
    const Point q{u(rng), u(rng)};
    CHECK(region_contains(dup, q) == region_contains(stadium, q));
  }
}

TEST_CASE("jittered lattice generator") {
  using packsurgeon::gen::jittered_lattice;
  const auto plain = jittered_lattice({4.0, 0.0, 0.0, 0.0}, 1);
  CHECK(plain.squares.size() == 16);
  CHECK(waste_total(plain) == 0.0);
  for (const auto& s : plain.squares) CHECK(is_good(s));

  const auto j1 = jittered_lattice({9.5, 0.1, 0.05, 0.3}, 77);
  const auto j2 = jittered_lattice({9.5, 0.1, 0.05, 0.3}, 77);
  CHECK(j1 == j2);
  CHECK(validate_packing(j1).ok());
  CHECK_THROWS_AS((void)jittered_lattice({0.0, 0, 0, 0}, 1), std::invalid_argument);
  CHECK_THROWS_AS((void)jittered_lattice({4.0, 1.5, 0, 0}, 1), std::invalid_argument);
}
