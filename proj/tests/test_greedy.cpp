#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "packsurgeon/flow.hpp"
#include "packsurgeon/greedy.hpp"

using namespace packsurgeon::grid;
using namespace packsurgeon::greedy;

namespace {

GridInstance all_marked(int n, int m) {
  MarkedSet s;
  for (int r = 1; r <= n; ++r) {
    for (int c = 1; c <= m; ++c) s.insert({r, c});
  }
  return GridInstance(GridDims(n, m), s);
}

// Replays the greedy rounds: each accepted path must be as short as the best
// escape any still-unrouted marked cell has over the cells left unused.
void check_shortest_first(const GridInstance& inst, const GreedyResult& res) {
  const int m = inst.dims().cols();
  std::vector<bool> used(static_cast<std::size_t>(inst.dims().cell_count()), false);
  auto id = [&](CellCoord c) { return static_cast<std::size_t>((c.row - 1) * m + c.col - 1); };
  auto sources = [&] {
    std::vector<CellCoord> out;
    for (const auto& c : inst.marked()) {
      if (!used[id(c)]) out.push_back(c);
    }
    return out;
  };
  for (const auto& path : res.paths) {
    REQUIRE(validate_cell_path(inst, path).empty());
    const int best = oracle::shortest_escape(inst, sources(), used);
    CHECK(static_cast<int>(path.cells.size()) == best);
    for (const auto& c : path.cells) {
      REQUIRE_FALSE(used[id(c)]);
      used[id(c)] = true;
    }
  }
  CHECK(oracle::shortest_escape(inst, sources(), used) == -1);
}

}  // namespace

TEST_CASE("greedy examples") {
  CHECK(greedy_bfs_paths(GridInstance(GridDims(4, 4), MarkedSet{})).f_prime == 0);

  const auto line = greedy_bfs_paths(GridInstance(GridDims(1, 3), MarkedSet{{1, 2}}));
  CHECK(line.f_prime == 1);

  const auto full = greedy_bfs_paths(all_marked(3, 4));
  CHECK(full.f_prime == 10);
  for (const auto& p : full.paths) CHECK(p.cells.size() == 1);
}

TEST_CASE("comparison examples") {
  const auto none = compare_f_prime_f(GridInstance(GridDims(5, 5), MarkedSet{}));
  CHECK(none.f_prime == 0);
  CHECK(none.f == 0);

  const GridInstance rim(GridDims(5, 6), MarkedSet{{1, 1}, {1, 4}, {3, 6}, {5, 2}, {4, 1}});
  const auto c = compare_f_prime_f(rim);
  CHECK(c.f_prime == 5);
  CHECK(c.f == 5);
}

TEST_CASE("greedy is shortest-first and never beats the flow") {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 14);
    const int m = 1 + static_cast<int>(rng() % 14);
    const auto inst = uniform_instance(GridDims(n, m), 0.05 + 0.05 * (trial % 12), rng());
    const auto res = greedy_bfs_paths(inst);
    CHECK(res.f_prime == static_cast<int>(res.paths.size()));
    check_shortest_first(inst, res);
    CHECK(res.f_prime <= packsurgeon::flow::path_cover(inst).f);
  }
}

TEST_CASE("structured families stay valid and respect the bound") {
  const Family families[] = {Family::kUniform, Family::kRings, Family::kComb,
                             Family::kBlockedCorridor, Family::kClusters};
  for (const auto fam : families) {
    for (std::uint64_t s = 0; s < 20; ++s) {
      const auto inst = make_family_instance(fam, GridDims(10, 12), s);
      CHECK(inst == make_family_instance(fam, GridDims(10, 12), s));
      const auto cmp = compare_f_prime_f(inst);
      CHECK(cmp.f_prime <= cmp.f);
    }
  }
}

TEST_CASE("counterexample search") {
  CHECK_FALSE(counterexample_search(0, GridDims(8, 8), 1).has_value());
  CHECK_FALSE(counterexample_search(500, GridDims(1, 9), 1).has_value());

  const auto found = counterexample_search(100000, GridDims(8, 8), 1);
  REQUIRE(found.has_value());
  const auto cmp = compare_f_prime_f(*found);
  CHECK(cmp.f_prime < cmp.f);
  CHECK(cmp.f == packsurgeon::flow::path_cover(*found, packsurgeon::flow::Algorithm::kEdmondsKarp).f);

  const auto again = counterexample_search(100000, GridDims(8, 8), 1);
  REQUIRE(again.has_value());
  CHECK(*again == *found);

  // Small enough for the exhaustive oracle to confirm f.
  const auto small = counterexample_search(100000, GridDims(5, 5), 2);
  REQUIRE(small.has_value());
  const auto small_cmp = compare_f_prime_f(*small);
  CHECK(small_cmp.f_prime < small_cmp.f);
  CHECK(small_cmp.f == oracle::max_disjoint_paths(*small));
}

TEST_CASE("ratio experiment") {
  const auto full = ratio_experiment({6, 7, 1.0}, 20, 3);
  CHECK(full.trials == 20);
  REQUIRE(full.ratios.size() == 20);
  for (const auto& r : full.ratios) CHECK(r.num == r.den);
  REQUIRE(full.min_ratio.has_value());
  CHECK(full.mean_ratio == doctest::Approx(1.0));

  const auto empty = ratio_experiment({6, 7, 0.0}, 20, 3);
  CHECK(empty.ratios.empty());
  CHECK_FALSE(empty.min_ratio.has_value());

  const auto mixed = ratio_experiment({16, 16, 0.2}, 200, 42);
  REQUIRE(mixed.min_ratio.has_value());
  CHECK(mixed.min_ratio->value() <= 1.0);
  CHECK(mixed.min_ratio->value() > 0.0);
  const auto twin = ratio_experiment({16, 16, 0.2}, 200, 42);
  CHECK(twin.mean_ratio == mixed.mean_ratio);
}
