#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "packsurgeon/grid.hpp"

using namespace packsurgeon::grid;

TEST_CASE("grid dims reject out-of-range sides") {
  CHECK_THROWS_AS(GridDims(0, 3), std::invalid_argument);
  CHECK_THROWS_AS(GridDims(3, -1), std::invalid_argument);
  CHECK_THROWS_AS(GridDims(kMaxGridSide + 1, 1), std::invalid_argument);
  CHECK_NOTHROW(GridDims(kMaxGridSide, 1));
}

TEST_CASE("instance rejects marked cells outside the grid") {
  CHECK_THROWS_AS(GridInstance(GridDims(2, 2), MarkedSet{{3, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(GridInstance(GridDims(2, 2), MarkedSet{{1, 0}}), std::invalid_argument);
}

TEST_CASE("marked set is sorted and duplicate-free") {
  MarkedSet s{{2, 1}, {1, 3}, {2, 1}, {1, 1}};
  REQUIRE(s.size() == 3);
  CHECK(s.cells()[0] == CellCoord{1, 1});
  CHECK(s.cells()[1] == CellCoord{1, 3});
  CHECK(s.cells()[2] == CellCoord{2, 1});
  CHECK_FALSE(s.insert({1, 3}));
  CHECK(s.insert({1, 2}));
  CHECK(s.cells()[1] == CellCoord{1, 2});
}

TEST_CASE("cellular perimeter examples") {
  CHECK(cellular_perimeter({1, 1, 1, 1}) == 4);
  CHECK(cellular_perimeter({1, 3, 1, 4}) == 14);
  CHECK(cellular_perimeter({2, 2, 1, 5}) == 12);
  CHECK(oracle::boundary_edges(2, 2, 1, 5) == 12);
  CHECK_THROWS_AS(require_valid_rect({2, 1, 1, 1}), std::invalid_argument);
}

TEST_CASE("cellular perimeter matches edge enumeration") {
  for (int h = 1; h <= 7; ++h) {
    for (int w = 1; w <= 7; ++w) {
      const GridRect r{3, 3 + h - 1, 2, 2 + w - 1};
      CHECK(cellular_perimeter(r) == oracle::boundary_edges(r.i, r.i_hi, r.j, r.j_hi));
    }
  }
}

TEST_CASE("boundary cell count examples and enumeration") {
  CHECK(boundary_cell_count(GridDims(3, 4)) == 10);
  CHECK(boundary_cell_count(GridDims(1, 1)) == 1);
  CHECK(boundary_cell_count(GridDims(5, 5)) == 16);
  for (int n = 1; n <= 12; ++n) {
    for (int m = 1; m <= 12; ++m) {
      CHECK(boundary_cell_count(GridDims(n, m)) == oracle::boundary_cells(n, m));
    }
  }
}

TEST_CASE("is_boundary agrees with neighbor count") {
  for (int n = 1; n <= 5; ++n) {
    for (int m = 1; m <= 5; ++m) {
      for (int r = 1; r <= n; ++r) {
        for (int c = 1; c <= m; ++c) {
          CHECK(is_boundary(GridDims(n, m), {r, c}) == (oracle::count_neighbors(n, m, r, c) < 4));
        }
      }
    }
  }
}

TEST_CASE("eight-connected component examples") {
  CHECK(eight_connected_components(MarkedSet{}).empty());
  auto diag = eight_connected_components(MarkedSet{{1, 1}, {2, 2}});
  REQUIRE(diag.size() == 1);
  CHECK(diag[0] == MarkedSet{{1, 1}, {2, 2}});
  auto gap = eight_connected_components(MarkedSet{{1, 1}, {1, 3}});
  REQUIRE(gap.size() == 2);
  CHECK(gap[0] == MarkedSet{{1, 1}});
  CHECK(gap[1] == MarkedSet{{1, 3}});
}

TEST_CASE("eight-connected components match union-find") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<CellCoord> cells;
    std::bernoulli_distribution pick(0.1 + 0.05 * (trial % 10));
    for (int r = 1; r <= 12; ++r) {
      for (int c = 1; c <= 12; ++c) {
        if (pick(rng)) cells.push_back({r, c});
      }
    }
    const auto expected = oracle::components_union_find(cells);
    const auto got = eight_connected_components(MarkedSet(cells));
    REQUIRE(got.size() == expected.size());
    for (std::size_t k = 0; k < got.size(); ++k) {
      CHECK(got[k].cells() == expected[k]);
    }
  }
}

TEST_CASE("bounding rectangle examples") {
  CHECK(bounding_rectangle(MarkedSet{{2, 3}}) == GridRect{2, 2, 3, 3});
  CHECK(bounding_rectangle(MarkedSet{{1, 1}, {3, 4}}) == GridRect{1, 3, 1, 4});
  const GridRect chain = bounding_rectangle(MarkedSet{{1, 1}, {2, 2}, {3, 3}});
  CHECK(chain == GridRect{1, 3, 1, 3});
  CHECK(cellular_perimeter(chain) == 12);
  CHECK_THROWS_WITH_AS((void)bounding_rectangle(MarkedSet{}), "empty cell set", std::invalid_argument);
}

TEST_CASE("bounding rectangle of an 8-connected set has perimeter at most 4k") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    // Random walk with 8-neighbor steps gives an 8-connected set.
    std::vector<CellCoord> cells{{50, 50}};
    const int k = 1 + static_cast<int>(rng() % 40);
    CellCoord at{50, 50};
    while (static_cast<int>(MarkedSet(cells).size()) < k) {
      at.row += static_cast<int>(rng() % 3) - 1;
      at.col += static_cast<int>(rng() % 3) - 1;
      cells.push_back(at);
    }
    const MarkedSet set(cells);
    REQUIRE(eight_connected_components(set).size() == 1);
    CHECK(cellular_perimeter(bounding_rectangle(set)) <= 4 * static_cast<int>(set.size()));
  }
}

TEST_CASE("validate_cell_path catches each violation") {
  const GridInstance inst(GridDims(3, 3), MarkedSet{{2, 2}});
  CHECK(validate_cell_path(inst, CellPath{{{2, 2}, {1, 2}}}).empty());
  CHECK_FALSE(validate_cell_path(inst, CellPath{}).empty());
  CHECK_FALSE(validate_cell_path(inst, CellPath{{{1, 2}}}).empty());          // unmarked start
  CHECK_FALSE(validate_cell_path(inst, CellPath{{{2, 2}}}).empty());          // interior end
  CHECK_FALSE(validate_cell_path(inst, CellPath{{{2, 2}, {1, 1}}}).empty());  // diagonal step
  CHECK_FALSE(validate_cell_path(inst, CellPath{{{2, 2}, {1, 2}, {2, 2}, {3, 2}}}).empty());
}

TEST_CASE("check_disjoint detects shared cells") {
  const GridDims dims(3, 3);
  std::vector<CellPath> ok{{{{1, 1}}}, {{{1, 2}}}};
  std::vector<CellPath> bad{{{{2, 2}, {1, 2}}}, {{{1, 2}}}};
  CHECK(check_disjoint(dims, ok).empty());
  CHECK_FALSE(check_disjoint(dims, bad).empty());
}
