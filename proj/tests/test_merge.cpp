#include <doctest.h>

#include <algorithm>
#include <random>

#include "packsurgeon/merge.hpp"

using namespace packsurgeon::grid;
using namespace packsurgeon::merge;

namespace {

// Touching by brute force: some lattice point lies on both closed regions.
bool touch_oracle(const GridRect& a, const GridRect& b) {
  for (int y = a.i - 1; y <= a.i_hi; ++y) {
    for (int x = a.j - 1; x <= a.j_hi; ++x) {
      if (y >= b.i - 1 && y <= b.i_hi && x >= b.j - 1 && x <= b.j_hi) return true;
    }
  }
  return false;
}

std::vector<GridRect> random_family(std::mt19937_64& rng, int side) {
  std::vector<GridRect> out;
  const int count = 1 + static_cast<int>(rng() % 12);
  for (int k = 0; k < count; ++k) {
    const int i = 1 + static_cast<int>(rng() % side);
    const int j = 1 + static_cast<int>(rng() % side);
    const int h = static_cast<int>(rng() % 3);
    const int w = static_cast<int>(rng() % 3);
    out.push_back({i, std::min(side, i + h), j, std::min(side, j + w)});
  }
  return out;
}

// Reference procedure: merge the first touching pair in lexicographic order,
// then restart the scan.
std::vector<GridRect> restart_scan_merge(std::vector<GridRect> rects) {
  for (;;) {
    std::sort(rects.begin(), rects.end());
    bool merged = false;
    for (std::size_t a = 0; a < rects.size() && !merged; ++a) {
      for (std::size_t b = a + 1; b < rects.size() && !merged; ++b) {
        if (touch_oracle(rects[a], rects[b])) {
          const GridRect& x = rects[a];
          const GridRect& y = rects[b];
          rects[a] = {std::min(x.i, y.i), std::max(x.i_hi, y.i_hi), std::min(x.j, y.j), std::max(x.j_hi, y.j_hi)};
          rects.erase(rects.begin() + static_cast<std::ptrdiff_t>(b));
          merged = true;
        }
      }
    }
    if (!merged) return rects;
  }
}

}  // namespace

TEST_CASE("rects_touch examples") {
  CHECK(rects_touch({1, 1, 1, 1}, {1, 1, 2, 2}));
  CHECK(rects_touch({1, 1, 1, 1}, {2, 2, 2, 2}));
  CHECK_FALSE(rects_touch({1, 1, 1, 1}, {1, 1, 3, 3}));
}

TEST_CASE("rects_touch agrees with lattice-point enumeration") {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 2000; ++k) {
    const auto fam = random_family(rng, 8);
    const auto other = random_family(rng, 8);
    CHECK(rects_touch(fam[0], other[0]) == touch_oracle(fam[0], other[0]));
    CHECK(rects_touch(fam[0], other[0]) == rects_touch(other[0], fam[0]));
  }
}

TEST_CASE("merge examples") {
  CHECK(merge_rectangles(std::vector<GridRect>{}).empty());
  CHECK(merge_rectangles(std::vector<GridRect>{{1, 1, 1, 1}}) == std::vector<GridRect>{{1, 1, 1, 1}});

  const std::vector<GridRect> pair{{1, 1, 1, 1}, {1, 1, 2, 2}};
  const auto trace = merge_with_trace(pair);
  CHECK(trace.rects == std::vector<GridRect>{{1, 1, 1, 2}});
  CHECK(trace.perimeter_after_step.front() == 8);
  CHECK(trace.perimeter_after_step.back() == 6);

  const std::vector<GridRect> chain{{1, 1, 1, 1}, {2, 2, 2, 2}, {3, 3, 3, 3}};
  const auto merged = merge_rectangles(chain);
  CHECK(merged == std::vector<GridRect>{{1, 3, 1, 3}});
  CHECK(total_perimeter(merged) == 12);
}

TEST_CASE("merge output is a non-touching fixed point covering the input") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 500; ++trial) {
    const int side = 6 + static_cast<int>(rng() % 20);
    const auto input = random_family(rng, side);
    const auto trace = merge_with_trace(input);
    for (std::size_t a = 0; a < trace.rects.size(); ++a) {
      for (std::size_t b = a + 1; b < trace.rects.size(); ++b) {
        CHECK_FALSE(touch_oracle(trace.rects[a], trace.rects[b]));
      }
    }
    for (const auto& r : input) {
      bool inside = false;
      for (const auto& o : trace.rects) inside = inside || o.contains(r);
      CHECK(inside);
    }
    for (std::size_t s = 1; s < trace.perimeter_after_step.size(); ++s) {
      CHECK(trace.perimeter_after_step[s] <= trace.perimeter_after_step[s - 1]);
    }
    CHECK(trace.passes <= 2 * side);
    CHECK(merge_rectangles(trace.rects) == trace.rects);
  }
}

TEST_CASE("merge is order-independent and matches the restart-scan reference") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 500; ++trial) {
    auto input = random_family(rng, 10 + static_cast<int>(rng() % 15));
    const auto merged = merge_rectangles(input);
    CHECK(merged == restart_scan_merge(input));
    std::shuffle(input.begin(), input.end(), rng);
    CHECK(merge_rectangles(input) == merged);
  }
}
